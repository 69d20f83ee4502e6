#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fcwf/io.hpp"
#include "fcwf/net.hpp"

namespace fcwf::test {

NetDocument fixture(const std::string &name);
Net fixture_net(const std::string &name);

// All shipped fixtures, by file stem.
std::vector<std::string> fixture_names();

using NameSet = std::set<std::string>;
NameSet names_of(const Net &net, const NodeSet &nodes);
NameSet place_names_of(const Net &net, const std::vector<char> &places);

// Reference implementations written straight from the definitions, sharing no
// code with the library beyond the Net accessors.
namespace ref {

// Reachability by repeated relaxation over an explicit arc list.
std::vector<std::vector<char>> reachability(const Net &net, const NodeSet &within);
bool strongly_connected(const Net &net, const NodeSet &nodes);

// Semi-T test per definition: T_Y nonempty, induced subnet strongly connected,
// |post(s) ∩ T_Y| = 1 for s in S_Y, post(T_Y) ⊆ S_Y.
bool semi_t(const Net &net, const NodeSet &nodes);
bool full_t(const Net &net, const NodeSet &nodes);
// Semi-S test per definition on the net itself (no reverse-dual).
bool semi_s(const Net &net, const NodeSet &nodes);
bool full_s(const Net &net, const NodeSet &nodes);

bool trap(const Net &net, const std::vector<char> &places);
bool siphon(const Net &net, const std::vector<char> &places);

bool free_choice_pairwise(const Net &net);

} // namespace ref

// Random bipartite net, not necessarily free-choice or connected.
Net random_net(std::mt19937_64 &rng, std::size_t places, std::size_t transitions, double density);
Marking random_marking(std::mt19937_64 &rng, std::size_t places, Tokens max_tokens);
// Random maximal-or-truncated execution: at each step a uniformly chosen
// enabled transition fires, stopping early at a dead marking.
FiringSequence random_execution(std::mt19937_64 &rng, const Net &net, const Marking &m0, std::size_t steps);

// Every node subset of a small net (caller keeps node_count small).
std::vector<NodeSet> all_node_subsets(const Net &net);

// Corpus shared by property and acceptance checks: fixtures that are
// free-choice and strongly connected plus seeded random nets.
struct CorpusEntry {
    std::string label;
    Net net;
};
std::vector<CorpusEntry> random_corpus(std::size_t count, std::uint64_t first_seed, std::size_t max_clusters,
                                       std::size_t max_cluster_size);

} // namespace fcwf::test
