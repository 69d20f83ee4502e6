#include "fcwf/scc.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "fcwf/error.hpp"

namespace fcwf {

GraphScc tarjan_scc(const std::vector<std::vector<Index>> &adjacency, const std::vector<char> *active) {
    const std::size_t n = adjacency.size();
    constexpr std::size_t unvisited = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> number(n, unvisited), lowlink(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<Index> stack;
    // Explicit DFS frames: (vertex, next successor position).
    std::vector<std::pair<Index, std::size_t>> frames;

    GraphScc result;
    result.component_of.assign(n, no_component);
    std::size_t counter = 0;

    auto is_active = [&](std::size_t v) { return active == nullptr || (*active)[v] != 0; };

    for (std::size_t root = 0; root < n; ++root) {
        if (!is_active(root) || number[root] != unvisited)
            continue;
        frames.emplace_back(static_cast<Index>(root), 0);
        number[root] = lowlink[root] = counter++;
        stack.push_back(static_cast<Index>(root));
        on_stack[root] = 1;

        while (!frames.empty()) {
            auto &[v, pos] = frames.back();
            const auto &succ = adjacency[v];
            if (pos < succ.size()) {
                Index w = succ[pos++];
                if (!is_active(w))
                    continue;
                if (number[w] == unvisited) {
                    number[w] = lowlink[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    lowlink[v] = std::min(lowlink[v], number[w]);
                }
                continue;
            }
            Index done = v;
            frames.pop_back();
            if (!frames.empty()) {
                Index parent = frames.back().first;
                lowlink[parent] = std::min(lowlink[parent], lowlink[done]);
            }
            if (lowlink[done] == number[done]) {
                Index w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    result.component_of[w] = result.count;
                } while (w != done);
                ++result.count;
            }
        }
    }
    return result;
}

std::vector<std::vector<Index>> net_adjacency(const Net &net, const NodeSet *within) {
    std::vector<std::vector<Index>> adjacency(net.node_count());
    const auto places = static_cast<Index>(net.place_count());
    for (Index s = 0; s < net.place_count(); ++s) {
        if (within && !within->has_place(s))
            continue;
        for (Index t : net.place_post(s))
            if (!within || within->has_transition(t))
                adjacency[s].push_back(places + t);
    }
    for (Index t = 0; t < net.transition_count(); ++t) {
        if (within && !within->has_transition(t))
            continue;
        for (Index s : net.transition_post(t))
            if (!within || within->has_place(s))
                adjacency[places + t].push_back(s);
    }
    return adjacency;
}

const std::string &smallest_name(const Net &net, const NodeSet &nodes) {
    static const std::string empty;
    const std::string *best = nullptr;
    for (Index s = 0; s < net.place_count(); ++s)
        if (nodes.has_place(s) && (!best || net.place_name(s) < *best))
            best = &net.place_name(s);
    for (Index t = 0; t < net.transition_count(); ++t)
        if (nodes.has_transition(t) && (!best || net.transition_name(t) < *best))
            best = &net.transition_name(t);
    return best ? *best : empty;
}

SccDecomposition scc(const Net &net, const NodeSet &within) {
    auto adjacency = net_adjacency(net, &within);
    std::vector<char> active(net.node_count(), 0);
    for (std::size_t g = 0; g < net.node_count(); ++g)
        active[g] = within.contains(net.from_graph_index(g)) ? 1 : 0;
    GraphScc raw = tarjan_scc(adjacency, &active);

    std::vector<NodeSet> sets(raw.count, NodeSet::none_of(net));
    for (std::size_t g = 0; g < net.node_count(); ++g)
        if (raw.component_of[g] != no_component)
            sets[raw.component_of[g]].insert(net.from_graph_index(g));

    std::vector<std::string> keys(raw.count);
    for (std::size_t c = 0; c < raw.count; ++c)
        keys[c] = smallest_name(net, sets[c]);
    std::vector<std::size_t> order(raw.count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    std::vector<std::size_t> rank(raw.count);
    for (std::size_t i = 0; i < order.size(); ++i)
        rank[order[i]] = i;

    SccDecomposition out;
    out.components.reserve(raw.count);
    for (std::size_t c : order)
        out.components.push_back(std::move(sets[c]));
    out.is_top.assign(raw.count, true);
    out.is_bottom.assign(raw.count, true);
    out.place_component.assign(net.place_count(), no_component);
    out.transition_component.assign(net.transition_count(), no_component);
    for (std::size_t g = 0; g < net.node_count(); ++g) {
        if (raw.component_of[g] == no_component)
            continue;
        NodeRef node = net.from_graph_index(g);
        std::size_t c = rank[raw.component_of[g]];
        (node.kind == NodeKind::place ? out.place_component : out.transition_component)[node.index] = c;
    }
    for (std::size_t g = 0; g < net.node_count(); ++g) {
        if (raw.component_of[g] == no_component)
            continue;
        for (Index h : adjacency[g]) {
            std::size_t a = rank[raw.component_of[g]], b = rank[raw.component_of[h]];
            if (a != b)
                out.condensation.emplace_back(a, b);
        }
    }
    std::sort(out.condensation.begin(), out.condensation.end());
    out.condensation.erase(std::unique(out.condensation.begin(), out.condensation.end()),
                           out.condensation.end());
    for (const auto &[a, b] : out.condensation) {
        out.is_bottom[a] = false;
        out.is_top[b] = false;
    }
    return out;
}

SccDecomposition scc(const Net &net) { return scc(net, NodeSet::all_of(net)); }

bool is_strongly_connected(const Net &net) {
    if (net.node_count() == 0)
        return true;
    return scc(net).size() == 1;
}

} // namespace fcwf
