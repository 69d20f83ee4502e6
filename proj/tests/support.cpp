#include "support.hpp"

#include <algorithm>
#include <filesystem>

#include "fcwf/oracle.hpp"

namespace fcwf::test {

NetDocument fixture(const std::string &name) {
    return read_document(std::string(FCWF_FIXTURE_DIR) + "/" + name + ".net");
}

Net fixture_net(const std::string &name) { return fixture(name).net; }

std::vector<std::string> fixture_names() {
    std::vector<std::string> out;
    for (const auto &entry : std::filesystem::directory_iterator(FCWF_FIXTURE_DIR))
        if (entry.path().extension() == ".net")
            out.push_back(entry.path().stem().string());
    std::sort(out.begin(), out.end());
    return out;
}

NameSet names_of(const Net &net, const NodeSet &nodes) {
    NameSet out;
    for (Index s = 0; s < net.place_count(); ++s)
        if (nodes.has_place(s))
            out.insert(net.place_name(s));
    for (Index t = 0; t < net.transition_count(); ++t)
        if (nodes.has_transition(t))
            out.insert(net.transition_name(t));
    return out;
}

NameSet place_names_of(const Net &net, const std::vector<char> &places) {
    NameSet out;
    for (Index s = 0; s < net.place_count(); ++s)
        if (places[s])
            out.insert(net.place_name(s));
    return out;
}

namespace ref {

std::vector<std::vector<char>> reachability(const Net &net, const NodeSet &within) {
    const std::size_t n = net.node_count();
    std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
    std::vector<std::pair<std::size_t, std::size_t>> arcs;
    for (const Arc &a : net.arcs())
        if (within.contains(a.source) && within.contains(a.target))
            arcs.emplace_back(net.graph_index(a.source), net.graph_index(a.target));
    for (std::size_t v = 0; v < n; ++v)
        r[v][v] = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t v = 0; v < n; ++v)
            for (const auto &[a, b] : arcs)
                if (r[v][a] && !r[v][b]) {
                    r[v][b] = 1;
                    changed = true;
                }
    }
    return r;
}

bool strongly_connected(const Net &net, const NodeSet &nodes) {
    if (nodes.empty())
        return false;
    auto r = reachability(net, nodes);
    std::vector<std::size_t> members;
    for (std::size_t g = 0; g < net.node_count(); ++g)
        if (nodes.contains(net.from_graph_index(g)))
            members.push_back(g);
    for (std::size_t a : members)
        for (std::size_t b : members)
            if (!r[a][b])
                return false;
    return true;
}

namespace {

std::size_t count_in(std::span<const Index> xs, const std::vector<char> &mask) {
    std::size_t k = 0;
    for (Index x : xs)
        k += mask[x] != 0;
    return k;
}

std::vector<char> place_mask(const NodeSet &nodes, std::size_t n) {
    std::vector<char> m(n);
    for (std::size_t i = 0; i < n; ++i)
        m[i] = nodes.has_place(static_cast<Index>(i));
    return m;
}

std::vector<char> transition_mask(const NodeSet &nodes, std::size_t n) {
    std::vector<char> m(n);
    for (std::size_t i = 0; i < n; ++i)
        m[i] = nodes.has_transition(static_cast<Index>(i));
    return m;
}

} // namespace

bool semi_t(const Net &net, const NodeSet &nodes) {
    auto sp = place_mask(nodes, net.place_count());
    auto tp = transition_mask(nodes, net.transition_count());
    if (std::count(tp.begin(), tp.end(), 1) == 0)
        return false;
    for (Index s = 0; s < net.place_count(); ++s)
        if (sp[s] && count_in(net.place_post(s), tp) != 1)
            return false;
    for (Index t = 0; t < net.transition_count(); ++t)
        if (tp[t])
            for (Index s : net.transition_post(t))
                if (!sp[s])
                    return false;
    return strongly_connected(net, nodes);
}

bool full_t(const Net &net, const NodeSet &nodes) {
    if (!semi_t(net, nodes))
        return false;
    auto sp = place_mask(nodes, net.place_count());
    auto tp = transition_mask(nodes, net.transition_count());
    for (Index s = 0; s < net.place_count(); ++s)
        if (sp[s] && count_in(net.place_pre(s), tp) != 1)
            return false;
    for (Index t = 0; t < net.transition_count(); ++t)
        if (tp[t])
            for (Index s : net.transition_pre(t))
                if (!sp[s])
                    return false;
    return true;
}

bool semi_s(const Net &net, const NodeSet &nodes) {
    auto sp = place_mask(nodes, net.place_count());
    auto tp = transition_mask(nodes, net.transition_count());
    if (std::count(sp.begin(), sp.end(), 1) == 0)
        return false;
    for (Index t = 0; t < net.transition_count(); ++t)
        if (tp[t] && count_in(net.transition_pre(t), sp) != 1)
            return false;
    for (Index s = 0; s < net.place_count(); ++s)
        if (sp[s])
            for (Index t : net.place_pre(s))
                if (!tp[t])
                    return false;
    return strongly_connected(net, nodes);
}

bool full_s(const Net &net, const NodeSet &nodes) {
    if (!semi_s(net, nodes))
        return false;
    auto sp = place_mask(nodes, net.place_count());
    auto tp = transition_mask(nodes, net.transition_count());
    for (Index t = 0; t < net.transition_count(); ++t)
        if (tp[t] && count_in(net.transition_post(t), sp) != 1)
            return false;
    for (Index s = 0; s < net.place_count(); ++s)
        if (sp[s])
            for (Index t : net.place_post(s))
                if (!tp[t])
                    return false;
    return true;
}

bool trap(const Net &net, const std::vector<char> &places) {
    for (Index t = 0; t < net.transition_count(); ++t)
        if (count_in(net.transition_pre(t), places) > 0 && count_in(net.transition_post(t), places) == 0)
            return false;
    return true;
}

bool siphon(const Net &net, const std::vector<char> &places) {
    for (Index t = 0; t < net.transition_count(); ++t)
        if (count_in(net.transition_post(t), places) > 0 && count_in(net.transition_pre(t), places) == 0)
            return false;
    return true;
}

bool free_choice_pairwise(const Net &net) {
    for (Index a = 0; a < net.transition_count(); ++a)
        for (Index b = a + 1; b < net.transition_count(); ++b) {
            auto pa = net.transition_pre(a), pb = net.transition_pre(b);
            std::vector<Index> x(pa.begin(), pa.end()), y(pb.begin(), pb.end());
            std::vector<Index> common;
            std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(common));
            if (!common.empty() && x != y)
                return false;
        }
    return true;
}

} // namespace ref

Net random_net(std::mt19937_64 &rng, std::size_t places, std::size_t transitions, double density) {
    std::bernoulli_distribution coin(density);
    NetBuilder b;
    for (std::size_t i = 0; i < places; ++i)
        b.add_place("p" + std::to_string(i));
    for (std::size_t i = 0; i < transitions; ++i)
        b.add_transition("u" + std::to_string(i));
    for (Index s = 0; s < places; ++s)
        for (Index t = 0; t < transitions; ++t) {
            if (coin(rng))
                b.add_arc(NodeRef::place(s), NodeRef::transition(t));
            if (coin(rng))
                b.add_arc(NodeRef::transition(t), NodeRef::place(s));
        }
    return std::move(b).build();
}

Marking random_marking(std::mt19937_64 &rng, std::size_t places, Tokens max_tokens) {
    std::uniform_int_distribution<Tokens> d(0, max_tokens);
    Marking m(places);
    for (std::size_t i = 0; i < places; ++i)
        m[i] = d(rng);
    return m;
}

FiringSequence random_execution(std::mt19937_64 &rng, const Net &net, const Marking &m0, std::size_t steps) {
    FiringSequence seq;
    Marking m = m0;
    for (std::size_t k = 0; k < steps; ++k) {
        std::vector<Index> en;
        for (Index t = 0; t < net.transition_count(); ++t)
            if (enabled(net, m, t))
                en.push_back(t);
        if (en.empty())
            break;
        Index t = en[std::uniform_int_distribution<std::size_t>(0, en.size() - 1)(rng)];
        m = fire(net, m, t);
        seq.push_back(t);
    }
    return seq;
}

std::vector<NodeSet> all_node_subsets(const Net &net) {
    const std::size_t n = net.node_count();
    std::vector<NodeSet> out;
    for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) {
        NodeSet set = NodeSet::none_of(net);
        for (std::size_t g = 0; g < n; ++g)
            if (bits >> g & 1)
                set.insert(net.from_graph_index(g));
        out.push_back(std::move(set));
    }
    return out;
}

std::vector<CorpusEntry> random_corpus(std::size_t count, std::uint64_t first_seed, std::size_t max_clusters,
                                       std::size_t max_cluster_size) {
    std::vector<CorpusEntry> out;
    for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t seed = first_seed + i;
        std::size_t clusters = 1 + seed % max_clusters;
        std::size_t size = 1 + (seed / max_clusters) % max_cluster_size;
        out.push_back({"seed" + std::to_string(seed) + "/c" + std::to_string(clusters) + "/k" + std::to_string(size),
                       random_fc_net(seed, clusters, size)});
    }
    return out;
}

} // namespace fcwf::test
