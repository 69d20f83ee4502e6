#include "fcwf/wellformed.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "fcwf/error.hpp"
#include "fcwf/free_choice.hpp"
#include "fcwf/scc.hpp"

namespace fcwf {

const char *to_string(Answer answer) { return answer == Answer::yes ? "yes" : "no"; }

namespace {

// Nodes of net[within] from which some transition of targets is reachable.
std::vector<char> reaches(const Net &net, const NodeSet &within, const std::vector<char> &targets) {
    const std::size_t places = net.place_count();
    std::vector<char> seen(net.node_count(), 0);
    std::deque<std::size_t> queue;
    for (Index t = 0; t < net.transition_count(); ++t)
        if (targets[t] && within.has_transition(t)) {
            seen[places + t] = 1;
            queue.push_back(places + t);
        }
    while (!queue.empty()) {
        NodeRef node = net.from_graph_index(queue.front());
        queue.pop_front();
        for (Index p : net.pre(node)) {
            NodeRef pred{opposite(node.kind), p};
            std::size_t g = net.graph_index(pred);
            if (!seen[g] && within.contains(pred)) {
                seen[g] = 1;
                queue.push_back(g);
            }
        }
    }
    return seen;
}

void check_verdict(const Net &net, const WellFormednessVerdict &v) {
    if (v.answer == Answer::yes) {
        std::vector<char> covered(net.transition_count(), 0);
        for (const Component &c : v.t_cover) {
            if (!classify_t_side(net, c.nodes).kind.is_full())
                throw Error(ErrorCode::invalid_net, "cover member is not a T-component");
            for (Index t : c.nodes.transitions())
                covered[t] = 1;
        }
        if (std::find(covered.begin(), covered.end(), 0) != covered.end())
            throw Error(ErrorCode::invalid_net, "cover misses a transition");
    } else if (v.witness) {
        if (!classify_t_side(net, v.witness->nodes).kind.is_proper())
            throw Error(ErrorCode::invalid_net, "witness is not a proper semi-T-component");
    }
}

} // namespace

namespace detail {

std::optional<NodeSet> semi_t_intersecting_within(const Net &net, const NodeSet &within,
                                                  std::span<const Index> t0) {
    NodeSet current = within;
    std::vector<char> targets(net.transition_count(), 0);
    for (Index t : t0)
        if (within.has_transition(t))
            targets[t] = 1;

    for (;;) {
        std::vector<char> reach = reaches(net, current, targets);
        const std::size_t places = net.place_count();
        std::vector<char> good(net.transition_count(), 0);
        bool all_good = true, target_good = false;
        for (Index t = 0; t < net.transition_count(); ++t) {
            if (!current.has_transition(t))
                continue;
            bool ok = reach[places + t] != 0;
            for (Index s : net.transition_post(t))
                if (current.has_place(s) && !reach[s])
                    ok = false;
            good[t] = ok;
            all_good &= ok;
            target_good |= ok && targets[t];
        }
        if (!target_good)
            return std::nullopt;
        if (all_good)
            break;
        for (Index t = 0; t < net.transition_count(); ++t)
            if (current.has_transition(t) && !good[t]) {
                current.erase_transition(t);
                targets[t] = 0;
            }
    }

    for (Index s = 0; s < net.place_count(); ++s) {
        if (!current.has_place(s))
            continue;
        bool linked = false;
        for (Index t : net.place_pre(s))
            linked |= current.has_transition(t) != 0;
        for (Index t : net.place_post(s))
            linked |= current.has_transition(t) != 0;
        if (!linked)
            current.erase_place(s);
    }

    ClusterPartition partition = clusters_within(net, current);
    std::vector<Index> target_list;
    for (Index t = 0; t < net.transition_count(); ++t)
        if (targets[t])
            target_list.push_back(t);
    Allocation alpha = directed_allocation_within(net, current, partition, target_list);
    // Bottom SCCs come ordered by smallest member identifier.
    for (NodeSet &nodes : allocation_bottom_sccs(net, current, partition, alpha))
        for (Index t : target_list)
            if (nodes.has_transition(t))
                return std::move(nodes);
    throw Error(ErrorCode::invalid_net, "no bottom SCC meets the target set");
}

std::optional<Component> phase_two(const Net &net, bool skip_single_place_clusters) {
    ClusterPartition partition = clusters(net);
    const NodeSet all = NodeSet::all_of(net);
    for (Index s : net.places_by_name()) {
        std::size_t c = partition.place_cluster[s];
        if (skip_single_place_clusters && partition.places[c].size() <= 1)
            continue;
        std::vector<Index> rest;
        for (Index t : partition.transitions[c]) {
            const auto pre = net.place_pre(s);
            if (!std::binary_search(pre.begin(), pre.end(), t))
                rest.push_back(t);
        }
        if (rest.empty())
            continue;
        NodeSet within = all;
        within.erase_place(s);
        for (Index t : net.place_pre(s))
            within.erase_transition(t);
        if (auto found = semi_t_intersecting_within(net, within, rest)) {
            Component witness = classify_t_side(net, *found);
            if (!witness.kind.is_proper() || !witness.kind.type2)
                throw Error(ErrorCode::invalid_net, "phase-two witness failed re-classification");
            witness.evidence.trigger = NodeRef::place(s);
            return witness;
        }
    }
    return std::nullopt;
}

} // namespace detail

std::optional<Component> find_semi_t_intersecting(const Net &net, std::span<const Index> t0) {
    if (!is_free_choice(net))
        throw Error(ErrorCode::not_free_choice, "net is not free-choice");
    for (Index t : t0)
        if (t >= net.transition_count())
            throw Error(ErrorCode::unknown_node, "transition index out of range");
    auto found = detail::semi_t_intersecting_within(net, NodeSet::all_of(net), t0);
    if (!found)
        return std::nullopt;
    return classify_t_side(net, *found);
}

WellFormednessVerdict decide_well_formed_scc(const Net &net) {
    detail::require_strongly_connected_free_choice(net);
    const NodeSet all = NodeSet::all_of(net);
    ClusterPartition partition = clusters_within(net, all);

    WellFormednessVerdict verdict;
    // Phase 1: cover by allocations directed at the uncovered transitions.
    std::vector<char> covered(net.transition_count(), 0);
    for (;;) {
        std::vector<Index> uncovered;
        for (Index t : net.transitions_by_name())
            if (!covered[t])
                uncovered.push_back(t);
        if (uncovered.empty())
            break;
        Allocation alpha = directed_allocation_within(net, all, partition, uncovered);
        for (NodeSet &nodes : detail::allocation_bottom_sccs(net, all, partition, alpha)) {
            Component y = classify_t_side(net, nodes);
            if (!y.kind.is_full()) {
                verdict.answer = Answer::no;
                verdict.witness = std::move(y);
                check_verdict(net, verdict);
                return verdict;
            }
            for (Index t : nodes.transitions())
                covered[t] = 1;
            verdict.t_cover.push_back(std::move(y));
        }
    }

    // Phase 2: a semi-T-component avoiding {s} and pre(s) but meeting
    // T_C(s) \ pre(s) has an inbound arc at s.
    if (auto witness = detail::phase_two(net, true)) {
        verdict.answer = Answer::no;
        verdict.t_cover.clear();
        verdict.witness = std::move(witness);
    } else {
        verdict.answer = Answer::yes;
    }
    check_verdict(net, verdict);
    return verdict;
}

WellFormednessVerdict decide_well_formed(const Net &net) {
    if (!is_free_choice(net))
        throw Error(ErrorCode::not_free_choice, "net is not free-choice");
    SccDecomposition d = scc(net);
    WellFormednessVerdict verdict;
    for (std::size_t c = 0; c < d.size(); ++c) {
        if (d.is_bottom[c] && !d.is_top[c]) {
            std::size_t source = d.size();
            for (const auto &[a, b] : d.condensation)
                if (b == c && (source == d.size() || a < source))
                    source = a;
            verdict.answer = Answer::no;
            verdict.refusal = StructuralRefusal{d.components[source], d.components[c]};
            return verdict;
        }
    }

    // Every SCC is isolated from the others: decide each one on its own.
    verdict.answer = Answer::yes;
    for (std::size_t c = 0; c < d.size(); ++c) {
        const NodeSet &nodes = d.components[c];
        if (nodes.size() == 1) {
            if (nodes.transition_count() == 1)
                verdict.t_cover.push_back(classify_t_side(net, nodes));
            continue;
        }
        Net part = induced_subnet(net, nodes);
        WellFormednessVerdict sub = decide_well_formed_scc(part);
        auto lift = [&](const Component &inner) {
            Component outer = classify_t_side(net, node_set(net, node_names(part, inner.nodes)));
            if (inner.evidence.trigger)
                outer.evidence.trigger = net.resolve(part.id(*inner.evidence.trigger));
            return outer;
        };
        if (sub.answer == Answer::no) {
            verdict.answer = Answer::no;
            verdict.t_cover.clear();
            verdict.witness = lift(*sub.witness);
            check_verdict(net, verdict);
            return verdict;
        }
        for (const Component &member : sub.t_cover)
            verdict.t_cover.push_back(lift(member));
    }
    check_verdict(net, verdict);
    return verdict;
}

std::optional<Component> find_proper_semi_s_type2(const Net &net) {
    if (!is_free_choice(net))
        throw Error(ErrorCode::not_free_choice, "net is not free-choice");
    Net dual = reverse_dual(net);
    // A single-place cluster can only expose a lone transition with an empty
    // postset, which cannot occur in a strongly connected net.
    auto found = detail::phase_two(dual, is_strongly_connected(dual) && dual.node_count() > 1);
    if (!found)
        return std::nullopt;
    Component out = from_reverse_dual(*found);
    Component check = classify_s_side(net, out.nodes);
    if (!check.kind.is_proper() || !check.kind.type2)
        throw Error(ErrorCode::invalid_net, "semi-S witness failed re-classification");
    return out;
}

} // namespace fcwf
