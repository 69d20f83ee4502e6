#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fcwf/free_choice.hpp"
#include "fcwf/net.hpp"

namespace fcwf {

enum class Side { t_side, s_side };
enum class ComponentStatus { not_component, full, proper };

const char *to_string(Side side);
const char *to_string(ComponentStatus status);

struct ComponentKind {
    Side side = Side::t_side;
    ComponentStatus status = ComponentStatus::not_component;
    bool type1 = false;
    bool type2 = false;

    bool is_component() const { return status != ComponentStatus::not_component; }
    bool is_full() const { return status == ComponentStatus::full; }
    bool is_proper() const { return status == ComponentStatus::proper; }
    bool operator==(const ComponentKind &) const = default;
};

// Witnessing structure, always expressed in the analysed net.
// T side: excessive = places with two or more predecessors inside, boundary =
// inbound arcs (s, t) with t inside and s outside post(T_Y).
// S side: excessive = transitions with two or more successors inside,
// boundary = outbound arcs (t, s) with t inside and t outside pre(S_X).
struct Evidence {
    std::vector<NodeRef> excessive;
    std::vector<Arc> boundary;
    // Place whose removal exposed the component (well-formedness phase 2).
    std::optional<NodeRef> trigger;
    bool operator==(const Evidence &) const = default;
};

struct Component {
    NodeSet nodes;
    ComponentKind kind;
    Evidence evidence;
};

Component classify_t_side(const Net &net, const NodeSet &nodes);
Component classify_t_side(const Net &net, const std::vector<std::string> &names);
Component classify_s_side(const Net &net, const NodeSet &nodes);
Component classify_s_side(const Net &net, const std::vector<std::string> &names);

// Maps a component of rd(net) to the corresponding component of net, flipping
// the side.
Component from_reverse_dual(const Component &component);

// Bottom SCCs of N_alpha, classified on the T side, ordered by smallest member.
std::vector<Component> bottom_components_of_allocation(const Net &net, const Allocation &alpha);
// Top SCCs of N_beta, classified on the S side.
std::vector<Component> top_components_of_place_allocation(const Net &net, const PlaceAllocation &beta);

Component semi_t_through(const Net &net, Index t0);
Component semi_s_through(const Net &net, Index s0);

// Covers grown by allocations directed at the whole uncovered set; every bottom
// SCC of each allocation is kept.
std::vector<Component> semi_t_cover(const Net &net);
std::vector<Component> semi_s_cover(const Net &net);

// Internal building blocks shared with the decision procedure.
namespace detail {
// Bottom SCCs of net[within] restricted to the chosen transitions.
std::vector<NodeSet> allocation_bottom_sccs(const Net &net, const NodeSet &within,
                                            const ClusterPartition &partition, const Allocation &alpha);
void require_strongly_connected_free_choice(const Net &net);
} // namespace detail

} // namespace fcwf
