#include "fcwf/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <unordered_map>

#include <boost/dynamic_bitset.hpp>

#include "fcwf/error.hpp"
#include "fcwf/free_choice.hpp"
#include "fcwf/scc.hpp"

namespace fcwf {

const char *to_string(Boundedness b) {
    switch (b) {
    case Boundedness::bounded:
        return "bounded";
    case Boundedness::unbounded:
        return "unbounded";
    case Boundedness::cap_exceeded:
        return "cap-exceeded";
    }
    return "?";
}

const char *to_string(TransitionLiveness l) {
    switch (l) {
    case TransitionLiveness::live:
        return "live";
    case TransitionLiveness::dead:
        return "dead";
    case TransitionLiveness::neither:
        return "neither";
    }
    return "?";
}

const char *to_string(OracleAnswer a) {
    switch (a) {
    case OracleAnswer::yes:
        return "yes";
    case OracleAnswer::no:
        return "no";
    case OracleAnswer::inconclusive:
        return "inconclusive";
    }
    return "?";
}

std::optional<std::size_t> ReachabilityGraph::find(const Marking &m) const {
    auto it = std::find(states.begin(), states.end(), m);
    if (it == states.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - states.begin());
}

BoundednessVerdict explore(const Net &net, const Marking &m0, std::size_t max_states) {
    if (m0.size() != net.place_count())
        throw Error(ErrorCode::invalid_argument, "marking size does not match the net");
    BoundednessVerdict out;
    ReachabilityGraph &g = out.graph;
    std::unordered_map<Marking, std::size_t, MarkingHash> index;
    std::vector<std::size_t> parent{0};
    std::vector<Index> via{0};
    std::vector<std::size_t> depth{0};
    g.states.push_back(m0);
    index.emplace(m0, 0);

    auto path_to = [&](std::size_t state) {
        FiringSequence path(depth[state]);
        for (std::size_t v = state; v != 0; v = parent[v])
            path[depth[v] - 1] = via[v];
        return path;
    };

    if (max_states == 0)
        return out;
    for (std::size_t i = 0; i < g.states.size(); ++i) {
        for (Index t = 0; t < net.transition_count(); ++t) {
            if (!enabled(net, g.states[i], t))
                continue;
            Marking next = fire(net, g.states[i], t);
            if (auto it = index.find(next); it != index.end()) {
                g.edges.push_back({i, t, it->second});
                continue;
            }
            // Ancestor domination: next is new, so covering means strictly larger.
            for (std::size_t v = i;; v = parent[v]) {
                if (next.covers(g.states[v])) {
                    out.outcome = Boundedness::unbounded;
                    out.path = path_to(i);
                    out.path.push_back(t);
                    out.dominated_index = depth[v];
                    return out;
                }
                if (v == 0)
                    break;
            }
            if (g.states.size() >= max_states) {
                out.outcome = Boundedness::cap_exceeded;
                return out;
            }
            std::size_t id = g.states.size();
            index.emplace(next, id);
            g.states.push_back(std::move(next));
            parent.push_back(i);
            via.push_back(t);
            depth.push_back(depth[i] + 1);
            g.edges.push_back({i, t, id});
        }
    }
    g.complete = true;
    out.outcome = Boundedness::bounded;
    return out;
}

namespace {

// Per state: transitions enabled somewhere reachable, and transitions live there.
struct StateFacts {
    std::vector<std::size_t> component_of;
    std::vector<boost::dynamic_bitset<>> reachable_enabled;
    std::vector<boost::dynamic_bitset<>> live;
};

StateFacts analyse(const Net &net, const ReachabilityGraph &graph) {
    if (!graph.complete)
        throw Error(ErrorCode::incomplete_graph, "reachability graph is incomplete");
    const std::size_t n = graph.states.size();
    const std::size_t tc = net.transition_count();
    std::vector<std::vector<Index>> adjacency(n);
    for (const auto &e : graph.edges)
        adjacency[e.from].push_back(static_cast<Index>(e.to));
    GraphScc raw = tarjan_scc(adjacency);

    StateFacts facts;
    facts.component_of = raw.component_of;
    std::vector<boost::dynamic_bitset<>> enabled_in(raw.count, boost::dynamic_bitset<>(tc));
    std::vector<std::vector<std::size_t>> successors(raw.count);
    for (const auto &e : graph.edges) {
        std::size_t a = raw.component_of[e.from], b = raw.component_of[e.to];
        enabled_in[a].set(e.transition);
        if (a != b)
            successors[a].push_back(b);
    }
    facts.reachable_enabled.assign(raw.count, boost::dynamic_bitset<>(tc));
    facts.live.assign(raw.count, boost::dynamic_bitset<>(tc));
    // Tarjan closes components in reverse topological order.
    for (std::size_t c = 0; c < raw.count; ++c) {
        facts.reachable_enabled[c] = enabled_in[c];
        if (successors[c].empty()) {
            facts.live[c] = enabled_in[c];
            continue;
        }
        facts.live[c].set();
        for (std::size_t d : successors[c]) {
            facts.reachable_enabled[c] |= facts.reachable_enabled[d];
            facts.live[c] &= facts.live[d];
        }
    }
    return facts;
}

} // namespace

std::vector<TransitionLiveness> liveness(const Net &net, const ReachabilityGraph &graph) {
    StateFacts facts = analyse(net, graph);
    std::size_t c = facts.component_of[graph.root];
    std::vector<TransitionLiveness> out(net.transition_count(), TransitionLiveness::neither);
    for (Index t = 0; t < net.transition_count(); ++t) {
        if (facts.live[c].test(t))
            out[t] = TransitionLiveness::live;
        else if (!facts.reachable_enabled[c].test(t))
            out[t] = TransitionLiveness::dead;
    }
    return out;
}

bool all_live(const std::vector<TransitionLiveness> &verdicts) {
    return std::all_of(verdicts.begin(), verdicts.end(),
                       [](TransitionLiveness l) { return l == TransitionLiveness::live; });
}

std::optional<Marking> find_dl_marking(const Net &net, const ReachabilityGraph &graph) {
    StateFacts facts = analyse(net, graph);
    for (std::size_t i = 0; i < graph.states.size(); ++i) {
        std::size_t c = facts.component_of[i];
        const auto &reach = facts.reachable_enabled[c];
        const auto &live = facts.live[c];
        // Every transition is live or dead, and at least one is dead.
        if (((reach & ~live).none()) && !reach.all())
            return graph.states[i];
    }
    return std::nullopt;
}

namespace {

OracleAnswer live_and_bounded(const Net &net, const Marking &m, std::size_t cap) {
    BoundednessVerdict v = explore(net, m, cap);
    if (v.outcome == Boundedness::cap_exceeded)
        return OracleAnswer::inconclusive;
    if (v.outcome == Boundedness::unbounded)
        return OracleAnswer::no;
    return all_live(liveness(net, v.graph)) ? OracleAnswer::yes : OracleAnswer::no;
}

} // namespace

OracleAnswer oracle_well_formed(const Net &net, std::size_t state_cap) {
    detail::require_strongly_connected_free_choice(net);
    return live_and_bounded(net, Marking(net.place_count(), 1), state_cap);
}

OracleAnswer oracle_well_formed_exhaustive(const Net &net, std::size_t state_cap) {
    detail::require_strongly_connected_free_choice(net);
    const std::size_t places = net.place_count();
    const Tokens budget = places + 2;
    Marking m(places, 0);
    bool inconclusive = false;
    for (;;) {
        if (m.total() <= budget) {
            OracleAnswer a = live_and_bounded(net, m, state_cap);
            if (a == OracleAnswer::yes)
                return a;
            inconclusive |= a == OracleAnswer::inconclusive;
        }
        std::size_t i = 0;
        while (i < places && m[i] == 2)
            m[i++] = 0;
        if (i == places)
            break;
        ++m[i];
    }
    return inconclusive ? OracleAnswer::inconclusive : OracleAnswer::no;
}

namespace {

std::vector<Component> sorted_unique(const Net &net, std::vector<Component> found) {
    std::vector<std::pair<std::vector<std::string>, std::size_t>> keys;
    for (std::size_t i = 0; i < found.size(); ++i)
        keys.emplace_back(node_names(net, found[i].nodes), i);
    std::sort(keys.begin(), keys.end());
    std::vector<Component> out;
    for (std::size_t k = 0; k < keys.size(); ++k) {
        if (k > 0 && keys[k].first == keys[k - 1].first)
            continue;
        out.push_back(std::move(found[keys[k].second]));
    }
    return out;
}

// Mixed-radix iteration over one choice per cluster.
template <typename Visit>
void for_each_choice(const std::vector<std::vector<Index>> &options, std::size_t cap, Visit visit) {
    double product = 1;
    for (const auto &o : options)
        product *= static_cast<double>(o.size());
    if (product > static_cast<double>(cap))
        throw Error(ErrorCode::enumeration_overflow, "more than " + std::to_string(cap) + " allocations");
    std::vector<std::size_t> digit(options.size(), 0);
    std::vector<Index> choice(options.size());
    for (;;) {
        for (std::size_t c = 0; c < options.size(); ++c)
            choice[c] = options[c][digit[c]];
        visit(choice);
        std::size_t c = 0;
        while (c < options.size() && ++digit[c] == options[c].size())
            digit[c++] = 0;
        if (c == options.size())
            break;
    }
}

} // namespace

std::vector<Component> enumerate_semi_t_brute(const Net &net, std::size_t cap) {
    ClusterPartition partition = clusters(net);
    for (std::size_t c = 0; c < partition.size(); ++c)
        if (partition.transitions[c].empty())
            throw Error(ErrorCode::cluster_without_transition, "cluster " + std::to_string(c) + " has no transition");
    std::vector<Component> found;
    for_each_choice(partition.transitions, cap, [&](const std::vector<Index> &choice) {
        NodeSet mask = NodeSet::none_of(net);
        for (Index s = 0; s < net.place_count(); ++s)
            mask.insert_place(s);
        for (Index t : choice)
            mask.insert_transition(t);
        SccDecomposition d = scc(net, mask);
        for (std::size_t c = 0; c < d.size(); ++c)
            if (d.is_bottom[c])
                found.push_back(classify_t_side(net, d.components[c]));
    });
    return sorted_unique(net, std::move(found));
}

std::vector<Component> enumerate_semi_s_brute(const Net &net, std::size_t cap) {
    ClusterPartition partition = clusters(net);
    for (std::size_t c = 0; c < partition.size(); ++c)
        if (partition.places[c].empty())
            throw Error(ErrorCode::cluster_without_place, "cluster " + std::to_string(c) + " has no place");
    std::vector<Component> found;
    for_each_choice(partition.places, cap, [&](const std::vector<Index> &choice) {
        NodeSet mask = NodeSet::none_of(net);
        for (Index t = 0; t < net.transition_count(); ++t)
            mask.insert_transition(t);
        for (Index s : choice)
            mask.insert_place(s);
        SccDecomposition d = scc(net, mask);
        for (std::size_t c = 0; c < d.size(); ++c)
            if (d.is_top[c])
                found.push_back(classify_s_side(net, d.components[c]));
    });
    return sorted_unique(net, std::move(found));
}

Net random_fc_net(std::uint64_t seed, std::size_t cluster_count, std::size_t max_cluster_size) {
    if (cluster_count == 0 || max_cluster_size == 0)
        throw Error(ErrorCode::invalid_argument, "cluster count and size must be positive");
    std::mt19937_64 rng(seed);
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };

    NetBuilder builder;
    std::vector<std::vector<NodeRef>> places(cluster_count), transitions(cluster_count);
    std::vector<NodeRef> all_places, all_transitions;
    std::vector<std::size_t> cluster_of_place;
    for (std::size_t c = 0; c < cluster_count; ++c) {
        std::size_t np = 1 + pick(max_cluster_size), nt = 1 + pick(max_cluster_size);
        for (std::size_t i = 0; i < np; ++i) {
            places[c].push_back(builder.add_place("s" + std::to_string(all_places.size())));
            all_places.push_back(places[c].back());
            cluster_of_place.push_back(c);
        }
        for (std::size_t i = 0; i < nt; ++i) {
            transitions[c].push_back(builder.add_transition("t" + std::to_string(all_transitions.size())));
            all_transitions.push_back(transitions[c].back());
        }
        for (NodeRef s : places[c])
            for (NodeRef t : transitions[c])
                builder.add_arc(s, t);
    }
    std::vector<std::size_t> cluster_of_transition;
    for (std::size_t c = 0; c < cluster_count; ++c)
        for (std::size_t i = 0; i < transitions[c].size(); ++i)
            cluster_of_transition.push_back(c);

    std::vector<char> has_input(all_places.size(), 0);
    std::vector<std::vector<Index>> cluster_graph(cluster_count);
    auto link = [&](NodeRef t, NodeRef s) {
        if (builder.has_arc(t, s))
            return;
        builder.add_arc(t, s);
        has_input[s.index] = 1;
        cluster_graph[cluster_of_transition[t.index]].push_back(
            static_cast<Index>(cluster_of_place[s.index]));
    };
    for (NodeRef t : all_transitions)
        link(t, all_places[pick(all_places.size())]);
    for (NodeRef s : all_places)
        if (!has_input[s.index])
            link(all_transitions[pick(all_transitions.size())], s);

    // Clusters are internally connected from places to transitions and every
    // place has an input, so a strongly connected cluster graph suffices.
    GraphScc groups = tarjan_scc(cluster_graph);
    if (groups.count > 1) {
        std::vector<std::vector<std::size_t>> members(groups.count);
        for (std::size_t c = 0; c < cluster_count; ++c)
            members[groups.component_of[c]].push_back(c);
        std::vector<std::size_t> order(groups.count);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t k = 0; k < order.size(); ++k) {
            const auto &from = members[order[k]];
            const auto &to = members[order[(k + 1) % order.size()]];
            std::size_t cf = from[pick(from.size())], ct = to[pick(to.size())];
            link(transitions[cf][pick(transitions[cf].size())], places[ct][pick(places[ct].size())]);
        }
    }
    return std::move(builder).build();
}

} // namespace fcwf
