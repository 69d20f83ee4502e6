#pragma once

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "fcwf/net.hpp"

namespace fcwf {

inline constexpr std::size_t no_component = std::numeric_limits<std::size_t>::max();

// Raw SCC labelling of a directed graph given as adjacency lists. Components
// are numbered in the order Tarjan's algorithm closes them, which is a reverse
// topological order of the condensation. Vertices with active[v] == false are
// skipped and labelled no_component.
struct GraphScc {
    std::vector<std::size_t> component_of;
    std::size_t count = 0;
};

GraphScc tarjan_scc(const std::vector<std::vector<Index>> &adjacency,
                    const std::vector<char> *active = nullptr);

struct SccDecomposition {
    // Ordered by smallest member identifier.
    std::vector<NodeSet> components;
    std::vector<bool> is_top;
    std::vector<bool> is_bottom;
    // Sorted, duplicate-free arcs between component indices.
    std::vector<std::pair<std::size_t, std::size_t>> condensation;
    // Component index per node, no_component for nodes outside the analysed set.
    std::vector<std::size_t> place_component;
    std::vector<std::size_t> transition_component;

    std::size_t component_of(NodeRef node) const {
        return node.kind == NodeKind::place ? place_component[node.index]
                                            : transition_component[node.index];
    }
    std::size_t size() const { return components.size(); }
};

SccDecomposition scc(const Net &net);
// SCCs of the induced subnet net[within], expressed in the indices of net.
SccDecomposition scc(const Net &net, const NodeSet &within);

bool is_strongly_connected(const Net &net);

// Adjacency lists over Net::graph_index, optionally restricted to a node set.
std::vector<std::vector<Index>> net_adjacency(const Net &net, const NodeSet *within = nullptr);

// Smallest identifier among the members, used for deterministic ordering.
const std::string &smallest_name(const Net &net, const NodeSet &nodes);

} // namespace fcwf
