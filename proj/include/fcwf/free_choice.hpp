#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fcwf/net.hpp"

namespace fcwf {

// Partition of the nodes of a free-choice net into clusters. All places with an
// empty postset share one cluster, as do all transitions with an empty preset.
struct ClusterPartition {
    // Members per cluster, each list sorted by identifier. Clusters are ordered
    // by their smallest member identifier, so a net and its reverse-dual list
    // the same clusters in the same order.
    std::vector<std::vector<Index>> places;
    std::vector<std::vector<Index>> transitions;
    std::vector<std::size_t> place_cluster;
    std::vector<std::size_t> transition_cluster;

    std::size_t size() const { return places.size(); }
    std::size_t cluster_of(NodeRef node) const {
        return node.kind == NodeKind::place ? place_cluster[node.index]
                                            : transition_cluster[node.index];
    }
    NodeSet nodes(const Net &net, std::size_t cluster) const;
};

bool is_free_choice(const Net &net);
// Free-choice test for the induced subnet net[within].
bool is_free_choice(const Net &net, const NodeSet &within);

// Throws Error(not_free_choice).
ClusterPartition clusters(const Net &net);
// Clusters of the induced subnet net[within]; nodes outside get no_component.
// The subnet must be free-choice (not re-checked).
ClusterPartition clusters_within(const Net &net, const NodeSet &within);

// One chosen transition per cluster (cluster index -> transition index).
struct Allocation {
    std::vector<Index> choice;
    bool operator==(const Allocation &) const = default;
};

// One chosen place per cluster (cluster index -> place index).
struct PlaceAllocation {
    std::vector<Index> choice;
    bool operator==(const PlaceAllocation &) const = default;
};

// Node set of N_alpha: every place plus the chosen transitions.
NodeSet allocation_nodes(const Net &net, const ClusterPartition &partition, const Allocation &alpha);
// Node set of N_beta: every transition plus the chosen places.
NodeSet place_allocation_nodes(const Net &net, const ClusterPartition &partition,
                               const PlaceAllocation &beta);

// Throw InvalidAllocation / ClusterWithoutTransition / ClusterWithoutPlace.
void validate(const ClusterPartition &partition, const Allocation &alpha);
void validate(const ClusterPartition &partition, const PlaceAllocation &beta);

Net allocation_subnet(const Net &net, const Allocation &alpha);
Net place_allocation_subnet(const Net &net, const PlaceAllocation &beta);

// Allocation from transition names (one per cluster, any order).
Allocation make_allocation(const Net &net, const std::vector<std::string> &transitions);
PlaceAllocation make_place_allocation(const Net &net, const std::vector<std::string> &places);

// Per cluster, the transition closest to the target set in the graph of the
// net; ties go to the smaller identifier. Requires a strongly connected
// free-choice net whose clusters all contain a transition.
Allocation directed_allocation(const Net &net, std::span<const Index> targets);

// Same construction on the induced subnet net[within] with a precomputed
// partition and no connectivity precondition. Clusters whose transitions cannot
// reach the targets fall back to their smallest identifier.
Allocation directed_allocation_within(const Net &net, const NodeSet &within,
                                      const ClusterPartition &partition,
                                      std::span<const Index> targets);

// Dual construction: directed_allocation on rd(N) with the source places as
// targets, read back as a place-allocation of N.
PlaceAllocation co_directed_place_allocation(const Net &net, std::span<const Index> sources);

} // namespace fcwf
