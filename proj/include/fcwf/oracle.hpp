#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "fcwf/components.hpp"
#include "fcwf/net.hpp"

namespace fcwf {

inline constexpr std::size_t default_state_cap = 1000000;

struct ReachabilityGraph {
    struct Edge {
        std::size_t from;
        Index transition;
        std::size_t to;
    };
    std::vector<Marking> states; // breadth-first discovery order
    std::vector<Edge> edges;
    std::size_t root = 0;
    bool complete = false;

    std::optional<std::size_t> find(const Marking &m) const;
};

enum class Boundedness { bounded, unbounded, cap_exceeded };
const char *to_string(Boundedness b);

struct BoundednessVerdict {
    Boundedness outcome = Boundedness::cap_exceeded;
    ReachabilityGraph graph; // complete only when bounded
    // Unbounded: firing path from the root whose final marking strictly
    // dominates the marking reached after its first dominated_index steps.
    FiringSequence path;
    std::size_t dominated_index = 0;

    FiringSequence pumping() const {
        return FiringSequence(path.begin() + static_cast<std::ptrdiff_t>(dominated_index), path.end());
    }
};

BoundednessVerdict explore(const Net &net, const Marking &m0, std::size_t max_states = default_state_cap);

enum class TransitionLiveness { live, dead, neither };
const char *to_string(TransitionLiveness l);

// Per-transition verdict at the root. Throws IncompleteGraph.
std::vector<TransitionLiveness> liveness(const Net &net, const ReachabilityGraph &graph);
bool all_live(const std::vector<TransitionLiveness> &verdicts);

// Reachable marking where every transition is dead or live and one is dead.
std::optional<Marking> find_dl_marking(const Net &net, const ReachabilityGraph &graph);

enum class OracleAnswer { yes, no, inconclusive };
const char *to_string(OracleAnswer a);

// Live and bounded test of the all-ones marking on a strongly connected
// free-choice net.
OracleAnswer oracle_well_formed(const Net &net, std::size_t state_cap = default_state_cap);

// Slower check without the single-marking shortcut: tries every marking with at
// most 2 tokens per place and at most |S|+2 tokens overall. A no answer only
// speaks for that budget.
OracleAnswer oracle_well_formed_exhaustive(const Net &net, std::size_t state_cap = 20000);

inline constexpr std::size_t default_allocation_cap = 1000000;

// Every bottom SCC of every N_alpha / top SCC of every N_beta, deduplicated and
// ordered by their sorted member names.
std::vector<Component> enumerate_semi_t_brute(const Net &net, std::size_t cap = default_allocation_cap);
std::vector<Component> enumerate_semi_s_brute(const Net &net, std::size_t cap = default_allocation_cap);

// Strongly connected free-choice net, deterministic per seed.
Net random_fc_net(std::uint64_t seed, std::size_t clusters, std::size_t max_cluster_size);

} // namespace fcwf
