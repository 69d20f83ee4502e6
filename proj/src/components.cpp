#include "fcwf/components.hpp"

#include <algorithm>

#include "fcwf/error.hpp"
#include "fcwf/scc.hpp"

namespace fcwf {

const char *to_string(Side side) { return side == Side::t_side ? "T" : "S"; }

const char *to_string(ComponentStatus status) {
    switch (status) {
    case ComponentStatus::not_component:
        return "not-component";
    case ComponentStatus::full:
        return "full";
    case ComponentStatus::proper:
        return "proper";
    }
    return "?";
}

namespace detail {

void require_strongly_connected_free_choice(const Net &net) {
    if (!is_free_choice(net))
        throw Error(ErrorCode::not_free_choice, "net is not free-choice");
    if (net.place_count() == 0 || net.transition_count() == 0)
        throw Error(ErrorCode::degenerate_net, "net needs at least one place and one transition");
    if (!is_strongly_connected(net))
        throw Error(ErrorCode::not_strongly_connected, "net is not strongly connected");
}

std::vector<NodeSet> allocation_bottom_sccs(const Net &net, const NodeSet &within,
                                            const ClusterPartition &partition, const Allocation &alpha) {
    NodeSet mask = NodeSet::none_of(net);
    for (Index s = 0; s < net.place_count(); ++s)
        if (within.has_place(s))
            mask.insert_place(s);
    for (std::size_t c = 0; c < partition.size(); ++c)
        mask.insert_transition(alpha.choice[c]);
    SccDecomposition d = scc(net, mask);
    std::vector<NodeSet> out;
    for (std::size_t c = 0; c < d.size(); ++c)
        if (d.is_bottom[c])
            out.push_back(std::move(d.components[c]));
    return out;
}

} // namespace detail

namespace {

bool induced_strongly_connected(const Net &net, const NodeSet &nodes) {
    if (nodes.empty())
        return false;
    return scc(net, nodes).size() == 1;
}

bool arc_less(const Net &net, const Arc &a, const Arc &b) {
    const auto &as = net.name(a.source), &bs = net.name(b.source);
    if (as != bs)
        return as < bs;
    return net.name(a.target) < net.name(b.target);
}

void check_domain(const Net &net, const NodeSet &nodes) {
    if (nodes.place_capacity() != net.place_count() || nodes.transition_capacity() != net.transition_count())
        throw Error(ErrorCode::unknown_node, "node set does not belong to this net");
}

} // namespace

Component classify_t_side(const Net &net, const NodeSet &nodes) {
    check_domain(net, nodes);
    Component out{nodes, {}, {}};
    out.kind.side = Side::t_side;
    if (nodes.transition_count() == 0)
        return out;

    const auto places = nodes.places();
    const auto transitions = nodes.transitions();
    for (Index s : places) {
        std::size_t successors = 0;
        for (Index t : net.place_post(s))
            successors += nodes.has_transition(t);
        if (successors != 1)
            return out;
    }
    NodeSet post_t = NodeSet::none_of(net);
    for (Index t : transitions)
        for (Index s : net.transition_post(t)) {
            if (!nodes.has_place(s))
                return out;
            post_t.insert_place(s);
        }
    if (!induced_strongly_connected(net, nodes))
        return out;

    for (Index s : places) {
        std::size_t predecessors = 0;
        for (Index t : net.place_pre(s))
            predecessors += nodes.has_transition(t);
        if (predecessors >= 2)
            out.evidence.excessive.push_back(NodeRef::place(s));
    }
    for (Index t : transitions)
        for (Index s : net.transition_pre(t))
            if (!post_t.has_place(s))
                out.evidence.boundary.push_back({NodeRef::place(s), NodeRef::transition(t)});

    auto by_name = [&](NodeRef a, NodeRef b) { return net.name(a) < net.name(b); };
    std::sort(out.evidence.excessive.begin(), out.evidence.excessive.end(), by_name);
    std::sort(out.evidence.boundary.begin(), out.evidence.boundary.end(),
              [&](const Arc &a, const Arc &b) { return arc_less(net, a, b); });

    out.kind.type1 = !out.evidence.excessive.empty();
    out.kind.type2 = !out.evidence.boundary.empty();
    out.kind.status = (out.kind.type1 || out.kind.type2) ? ComponentStatus::proper : ComponentStatus::full;
    return out;
}

Component classify_t_side(const Net &net, const std::vector<std::string> &names) {
    return classify_t_side(net, node_set(net, names));
}

Component from_reverse_dual(const Component &component) {
    Component out;
    out.nodes = component.nodes.swapped();
    out.kind = component.kind;
    out.kind.side = component.kind.side == Side::t_side ? Side::s_side : Side::t_side;
    for (NodeRef node : component.evidence.excessive)
        out.evidence.excessive.push_back(dual_ref(node));
    // An arc x -> y of rd(N) is the arc y -> x of N.
    for (const Arc &arc : component.evidence.boundary)
        out.evidence.boundary.push_back({dual_ref(arc.target), dual_ref(arc.source)});
    if (component.evidence.trigger)
        out.evidence.trigger = dual_ref(*component.evidence.trigger);
    return out;
}

Component classify_s_side(const Net &net, const NodeSet &nodes) {
    check_domain(net, nodes);
    Net dual = reverse_dual(net);
    return from_reverse_dual(classify_t_side(dual, nodes.swapped()));
}

Component classify_s_side(const Net &net, const std::vector<std::string> &names) {
    return classify_s_side(net, node_set(net, names));
}

std::vector<Component> bottom_components_of_allocation(const Net &net, const Allocation &alpha) {
    ClusterPartition partition = clusters(net);
    validate(partition, alpha);
    std::vector<Component> out;
    for (NodeSet &nodes : detail::allocation_bottom_sccs(net, NodeSet::all_of(net), partition, alpha))
        out.push_back(classify_t_side(net, nodes));
    return out;
}

std::vector<Component> top_components_of_place_allocation(const Net &net, const PlaceAllocation &beta) {
    Net dual = reverse_dual(net);
    std::vector<Component> out;
    for (const Component &c : bottom_components_of_allocation(dual, Allocation{beta.choice}))
        out.push_back(from_reverse_dual(c));
    return out;
}

Component semi_t_through(const Net &net, Index t0) {
    const Index targets[] = {t0};
    Allocation alpha = directed_allocation(net, targets);
    ClusterPartition partition = clusters(net);
    for (NodeSet &nodes : detail::allocation_bottom_sccs(net, NodeSet::all_of(net), partition, alpha))
        if (nodes.has_transition(t0))
            return classify_t_side(net, nodes);
    throw Error(ErrorCode::invalid_net, "directed allocation did not reach its target");
}

Component semi_s_through(const Net &net, Index s0) {
    return from_reverse_dual(semi_t_through(reverse_dual(net), s0));
}

std::vector<Component> semi_t_cover(const Net &net) {
    detail::require_strongly_connected_free_choice(net);
    const NodeSet all = NodeSet::all_of(net);
    ClusterPartition partition = clusters_within(net, all);
    for (std::size_t c = 0; c < partition.size(); ++c)
        if (partition.transitions[c].empty())
            throw Error(ErrorCode::cluster_without_transition, "cluster " + std::to_string(c) + " has no transition");

    std::vector<char> covered(net.transition_count(), 0);
    std::vector<Component> cover;
    for (;;) {
        std::vector<Index> uncovered;
        for (Index t : net.transitions_by_name())
            if (!covered[t])
                uncovered.push_back(t);
        if (uncovered.empty())
            break;
        Allocation alpha = directed_allocation_within(net, all, partition, uncovered);
        bool progress = false;
        for (NodeSet &nodes : detail::allocation_bottom_sccs(net, all, partition, alpha)) {
            for (Index t : nodes.transitions()) {
                progress |= !covered[t];
                covered[t] = 1;
            }
            cover.push_back(classify_t_side(net, nodes));
        }
        if (!progress)
            throw Error(ErrorCode::invalid_net, "cover construction stalled");
    }
    return cover;
}

std::vector<Component> semi_s_cover(const Net &net) {
    detail::require_strongly_connected_free_choice(net);
    std::vector<Component> out;
    for (const Component &c : semi_t_cover(reverse_dual(net)))
        out.push_back(from_reverse_dual(c));
    return out;
}

} // namespace fcwf
