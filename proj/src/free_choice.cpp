#include "fcwf/free_choice.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <string>

#include "fcwf/error.hpp"
#include "fcwf/scc.hpp"

namespace fcwf {

namespace {

struct DisjointSets {
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }

    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }

    std::vector<std::size_t> parent;
};

void require_free_choice(const Net &net) {
    if (!is_free_choice(net))
        throw Error(ErrorCode::not_free_choice, "net is not free-choice");
}

} // namespace

NodeSet ClusterPartition::nodes(const Net &net, std::size_t cluster) const {
    NodeSet set = NodeSet::none_of(net);
    for (Index s : places[cluster])
        set.insert_place(s);
    for (Index t : transitions[cluster])
        set.insert_transition(t);
    return set;
}

bool is_free_choice(const Net &net, const NodeSet &within) {
    auto active_pre = [&](Index t) {
        std::vector<Index> pre;
        for (Index s : net.transition_pre(t))
            if (within.has_place(s))
                pre.push_back(s);
        return pre;
    };
    for (Index s = 0; s < net.place_count(); ++s) {
        if (!within.has_place(s))
            continue;
        std::vector<Index> reference;
        bool first = true;
        for (Index t : net.place_post(s)) {
            if (!within.has_transition(t))
                continue;
            if (first) {
                reference = active_pre(t);
                first = false;
            } else if (active_pre(t) != reference) {
                return false;
            }
        }
    }
    return true;
}

bool is_free_choice(const Net &net) { return is_free_choice(net, NodeSet::all_of(net)); }

ClusterPartition clusters_within(const Net &net, const NodeSet &within) {
    const std::size_t places = net.place_count();
    DisjointSets sets(net.node_count());
    std::size_t sink_places = no_component, source_transitions = no_component;

    for (Index s = 0; s < places; ++s) {
        if (!within.has_place(s))
            continue;
        bool has_post = false;
        for (Index t : net.place_post(s)) {
            if (within.has_transition(t)) {
                sets.unite(s, places + t);
                has_post = true;
            }
        }
        if (!has_post) {
            if (sink_places == no_component)
                sink_places = s;
            else
                sets.unite(s, sink_places);
        }
    }
    for (Index t = 0; t < net.transition_count(); ++t) {
        if (!within.has_transition(t))
            continue;
        bool has_pre = std::any_of(net.transition_pre(t).begin(), net.transition_pre(t).end(),
                                   [&](Index s) { return within.has_place(s); });
        if (!has_pre) {
            if (source_transitions == no_component)
                source_transitions = places + t;
            else
                sets.unite(places + t, source_transitions);
        }
    }

    // Group members by representative, then order clusters by smallest name.
    std::vector<std::size_t> slot(net.node_count(), no_component);
    std::vector<std::vector<Index>> group_places, group_transitions;
    for (std::size_t g = 0; g < net.node_count(); ++g) {
        NodeRef node = net.from_graph_index(g);
        if (!within.contains(node))
            continue;
        std::size_t root = sets.find(g);
        if (slot[root] == no_component) {
            slot[root] = group_places.size();
            group_places.emplace_back();
            group_transitions.emplace_back();
        }
        (node.kind == NodeKind::place ? group_places : group_transitions)[slot[root]].push_back(node.index);
    }
    auto by_name = [&](NodeKind kind) {
        return [&net, kind](Index a, Index b) { return net.name({kind, a}) < net.name({kind, b}); };
    };
    std::vector<std::string> keys(group_places.size());
    for (std::size_t c = 0; c < group_places.size(); ++c) {
        std::sort(group_places[c].begin(), group_places[c].end(), by_name(NodeKind::place));
        std::sort(group_transitions[c].begin(), group_transitions[c].end(), by_name(NodeKind::transition));
        const std::string *best = nullptr;
        if (!group_places[c].empty())
            best = &net.place_name(group_places[c].front());
        if (!group_transitions[c].empty() &&
            (!best || net.transition_name(group_transitions[c].front()) < *best))
            best = &net.transition_name(group_transitions[c].front());
        keys[c] = *best;
    }
    std::vector<std::size_t> order(group_places.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });

    ClusterPartition out;
    out.place_cluster.assign(net.place_count(), no_component);
    out.transition_cluster.assign(net.transition_count(), no_component);
    for (std::size_t c : order) {
        std::size_t id = out.places.size();
        for (Index s : group_places[c])
            out.place_cluster[s] = id;
        for (Index t : group_transitions[c])
            out.transition_cluster[t] = id;
        out.places.push_back(std::move(group_places[c]));
        out.transitions.push_back(std::move(group_transitions[c]));
    }
    return out;
}

ClusterPartition clusters(const Net &net) {
    require_free_choice(net);
    return clusters_within(net, NodeSet::all_of(net));
}

NodeSet allocation_nodes(const Net &net, const ClusterPartition &partition, const Allocation &alpha) {
    NodeSet set = NodeSet::none_of(net);
    for (std::size_t c = 0; c < partition.size(); ++c) {
        for (Index s : partition.places[c])
            set.insert_place(s);
        set.insert_transition(alpha.choice[c]);
    }
    return set;
}

NodeSet place_allocation_nodes(const Net &net, const ClusterPartition &partition,
                               const PlaceAllocation &beta) {
    NodeSet set = NodeSet::none_of(net);
    for (std::size_t c = 0; c < partition.size(); ++c) {
        for (Index t : partition.transitions[c])
            set.insert_transition(t);
        set.insert_place(beta.choice[c]);
    }
    return set;
}

void validate(const ClusterPartition &partition, const Allocation &alpha) {
    for (std::size_t c = 0; c < partition.size(); ++c)
        if (partition.transitions[c].empty())
            throw Error(ErrorCode::cluster_without_transition,
                        "cluster " + std::to_string(c) + " has no transition");
    if (alpha.choice.size() != partition.size())
        throw Error(ErrorCode::invalid_allocation, "allocation covers " + std::to_string(alpha.choice.size()) +
                                                       " of " + std::to_string(partition.size()) + " clusters");
    for (std::size_t c = 0; c < partition.size(); ++c) {
        Index t = alpha.choice[c];
        if (t >= partition.transition_cluster.size() || partition.transition_cluster[t] != c)
            throw Error(ErrorCode::invalid_allocation,
                        "allocated transition is not in cluster " + std::to_string(c));
    }
}

void validate(const ClusterPartition &partition, const PlaceAllocation &beta) {
    for (std::size_t c = 0; c < partition.size(); ++c)
        if (partition.places[c].empty())
            throw Error(ErrorCode::cluster_without_place, "cluster " + std::to_string(c) + " has no place");
    if (beta.choice.size() != partition.size())
        throw Error(ErrorCode::invalid_allocation, "place-allocation covers " +
                                                       std::to_string(beta.choice.size()) + " of " +
                                                       std::to_string(partition.size()) + " clusters");
    for (std::size_t c = 0; c < partition.size(); ++c) {
        Index s = beta.choice[c];
        if (s >= partition.place_cluster.size() || partition.place_cluster[s] != c)
            throw Error(ErrorCode::invalid_allocation, "allocated place is not in cluster " + std::to_string(c));
    }
}

Net allocation_subnet(const Net &net, const Allocation &alpha) {
    ClusterPartition partition = clusters(net);
    validate(partition, alpha);
    return induced_subnet(net, allocation_nodes(net, partition, alpha));
}

Net place_allocation_subnet(const Net &net, const PlaceAllocation &beta) {
    ClusterPartition partition = clusters(net);
    validate(partition, beta);
    return induced_subnet(net, place_allocation_nodes(net, partition, beta));
}

Allocation make_allocation(const Net &net, const std::vector<std::string> &transitions) {
    ClusterPartition partition = clusters(net);
    Allocation alpha{std::vector<Index>(partition.size(), std::numeric_limits<Index>::max())};
    for (const auto &name : transitions) {
        Index t = net.transition(name);
        std::size_t c = partition.transition_cluster[t];
        if (alpha.choice[c] != std::numeric_limits<Index>::max())
            throw Error(ErrorCode::invalid_allocation, "two transitions chosen for the cluster of '" + name + "'");
        alpha.choice[c] = t;
    }
    validate(partition, alpha);
    return alpha;
}

PlaceAllocation make_place_allocation(const Net &net, const std::vector<std::string> &places) {
    ClusterPartition partition = clusters(net);
    PlaceAllocation beta{std::vector<Index>(partition.size(), std::numeric_limits<Index>::max())};
    for (const auto &name : places) {
        Index s = net.place(name);
        std::size_t c = partition.place_cluster[s];
        if (beta.choice[c] != std::numeric_limits<Index>::max())
            throw Error(ErrorCode::invalid_allocation, "two places chosen for the cluster of '" + name + "'");
        beta.choice[c] = s;
    }
    validate(partition, beta);
    return beta;
}

Allocation directed_allocation_within(const Net &net, const NodeSet &within,
                                      const ClusterPartition &partition, std::span<const Index> targets) {
    constexpr std::size_t infinite = std::numeric_limits<std::size_t>::max();
    const std::size_t places = net.place_count();
    std::vector<std::size_t> distance(net.node_count(), infinite);
    std::deque<std::size_t> queue;
    for (Index t : targets) {
        if (!within.has_transition(t))
            continue;
        distance[places + t] = 0;
        queue.push_back(places + t);
    }
    // Backward breadth-first search: distance from every node to the targets.
    while (!queue.empty()) {
        std::size_t g = queue.front();
        queue.pop_front();
        NodeRef node = net.from_graph_index(g);
        for (Index p : net.pre(node)) {
            NodeRef pred{opposite(node.kind), p};
            if (!within.contains(pred))
                continue;
            std::size_t h = net.graph_index(pred);
            if (distance[h] == infinite) {
                distance[h] = distance[g] + 1;
                queue.push_back(h);
            }
        }
    }

    Allocation alpha;
    alpha.choice.reserve(partition.size());
    for (std::size_t c = 0; c < partition.size(); ++c) {
        const auto &candidates = partition.transitions[c];
        if (candidates.empty())
            throw Error(ErrorCode::cluster_without_transition, "cluster " + std::to_string(c) + " has no transition");
        // Candidates are sorted by name, so the first minimum wins ties.
        Index best = candidates.front();
        for (Index t : candidates)
            if (distance[places + t] < distance[places + best])
                best = t;
        alpha.choice.push_back(best);
    }
    return alpha;
}

Allocation directed_allocation(const Net &net, std::span<const Index> targets) {
    require_free_choice(net);
    if (targets.empty())
        throw Error(ErrorCode::invalid_argument, "directed allocation needs at least one target");
    for (Index t : targets)
        if (t >= net.transition_count())
            throw Error(ErrorCode::unknown_node, "target transition index out of range");
    if (!is_strongly_connected(net))
        throw Error(ErrorCode::not_strongly_connected, "directed allocation requires a strongly connected net");
    ClusterPartition partition = clusters_within(net, NodeSet::all_of(net));
    return directed_allocation_within(net, NodeSet::all_of(net), partition, targets);
}

PlaceAllocation co_directed_place_allocation(const Net &net, std::span<const Index> sources) {
    require_free_choice(net);
    for (Index s : sources)
        if (s >= net.place_count())
            throw Error(ErrorCode::unknown_node, "source place index out of range");
    ClusterPartition partition = clusters(net);
    for (std::size_t c = 0; c < partition.size(); ++c)
        if (partition.places[c].empty())
            throw Error(ErrorCode::cluster_without_place, "cluster " + std::to_string(c) + " has no place");
    // Places of N are the transitions of rd(N) with the same indices, and the
    // cluster order is name based, so cluster ids coincide.
    Allocation dual = directed_allocation(reverse_dual(net), sources);
    return PlaceAllocation{std::move(dual.choice)};
}

} // namespace fcwf
