#include "fcwf/net.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <tuple>

#include "fcwf/error.hpp"

namespace fcwf {

const char *to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::unknown_node: return "UnknownNode";
    case ErrorCode::invalid_net: return "InvalidNet";
    case ErrorCode::not_enabled: return "NotEnabled";
    case ErrorCode::token_overflow: return "TokenOverflow";
    case ErrorCode::not_free_choice: return "NotFreeChoice";
    case ErrorCode::invalid_allocation: return "InvalidAllocation";
    case ErrorCode::cluster_without_transition: return "ClusterWithoutTransition";
    case ErrorCode::cluster_without_place: return "ClusterWithoutPlace";
    case ErrorCode::not_strongly_connected: return "NotStronglyConnected";
    case ErrorCode::degenerate_net: return "DegenerateNet";
    case ErrorCode::enumeration_overflow: return "EnumerationOverflow";
    case ErrorCode::isolated_place_present: return "IsolatedPlacePresent";
    case ErrorCode::incomplete_graph: return "IncompleteGraph";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    }
    return "Error";
}

const char *to_string(NodeKind kind) {
    return kind == NodeKind::place ? "place" : "transition";
}

bool is_identifier(std::string_view text) {
    if (text.empty())
        return false;
    auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(text.front()))
        return false;
    return std::all_of(text.begin() + 1, text.end(), [&](char c) { return alpha(c) || digit(c); });
}

// ---------------------------------------------------------------- NodeSet

NodeSet NodeSet::none_of(const Net &net) {
    return NodeSet(net.place_count(), net.transition_count());
}

NodeSet NodeSet::all_of(const Net &net) {
    NodeSet set(net.place_count(), net.transition_count());
    std::fill(set.places_.begin(), set.places_.end(), 1);
    std::fill(set.transitions_.begin(), set.transitions_.end(), 1);
    return set;
}

std::size_t NodeSet::place_count() const {
    return static_cast<std::size_t>(std::count(places_.begin(), places_.end(), 1));
}

std::size_t NodeSet::transition_count() const {
    return static_cast<std::size_t>(std::count(transitions_.begin(), transitions_.end(), 1));
}

static std::vector<Index> members(const std::vector<char> &mask) {
    std::vector<Index> out;
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i])
            out.push_back(static_cast<Index>(i));
    return out;
}

std::vector<Index> NodeSet::places() const { return members(places_); }
std::vector<Index> NodeSet::transitions() const { return members(transitions_); }

NodeSet NodeSet::swapped() const {
    NodeSet out;
    out.places_ = transitions_;
    out.transitions_ = places_;
    return out;
}

NodeSet &NodeSet::operator|=(const NodeSet &other) {
    for (std::size_t i = 0; i < places_.size(); ++i)
        places_[i] |= other.places_[i];
    for (std::size_t i = 0; i < transitions_.size(); ++i)
        transitions_[i] |= other.transitions_[i];
    return *this;
}

bool NodeSet::is_subset_of(const NodeSet &other) const {
    for (std::size_t i = 0; i < places_.size(); ++i)
        if (places_[i] && !other.places_[i])
            return false;
    for (std::size_t i = 0; i < transitions_.size(); ++i)
        if (transitions_[i] && !other.transitions_[i])
            return false;
    return true;
}

bool NodeSet::intersects(const NodeSet &other) const {
    for (std::size_t i = 0; i < places_.size(); ++i)
        if (places_[i] && other.places_[i])
            return true;
    for (std::size_t i = 0; i < transitions_.size(); ++i)
        if (transitions_[i] && other.transitions_[i])
            return true;
    return false;
}

// ---------------------------------------------------------------- Marking

bool Marking::covers(const Marking &other) const {
    for (std::size_t i = 0; i < tokens_.size(); ++i)
        if (tokens_[i] < other.tokens_[i])
            return false;
    return true;
}

Tokens Marking::total() const {
    return std::accumulate(tokens_.begin(), tokens_.end(), Tokens{0});
}

std::size_t MarkingHash::operator()(const Marking &m) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (Tokens v : m.tokens()) {
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------- Net

std::optional<NodeRef> Net::find(std::string_view name) const {
    auto it = lookup_.find(std::string(name));
    if (it == lookup_.end())
        return std::nullopt;
    return it->second;
}

NodeRef Net::resolve(const NodeId &id) const {
    auto node = find(id.name);
    if (!node || node->kind != id.kind)
        throw Error(ErrorCode::unknown_node,
                    std::string("unknown ") + to_string(id.kind) + " '" + id.name + "'");
    return *node;
}

NodeRef Net::resolve(std::string_view name) const {
    auto node = find(name);
    if (!node)
        throw Error(ErrorCode::unknown_node, "unknown node '" + std::string(name) + "'");
    return *node;
}

Index Net::place(std::string_view name) const {
    return resolve(NodeId{NodeKind::place, std::string(name)}).index;
}

Index Net::transition(std::string_view name) const {
    return resolve(NodeId{NodeKind::transition, std::string(name)}).index;
}

bool Net::has_arc(NodeRef source, NodeRef target) const {
    if (source.kind == target.kind)
        return false;
    auto succ = post(source);
    return std::binary_search(succ.begin(), succ.end(), target.index);
}

std::vector<Arc> Net::arcs() const {
    std::vector<Arc> out;
    out.reserve(arc_count_);
    for (Index s = 0; s < place_count(); ++s)
        for (Index t : place_post_[s])
            out.push_back({NodeRef::place(s), NodeRef::transition(t)});
    for (Index t = 0; t < transition_count(); ++t)
        for (Index s : transition_post_[t])
            out.push_back({NodeRef::transition(t), NodeRef::place(s)});
    return out;
}

bool operator==(const Net &a, const Net &b) {
    if (a.place_count() != b.place_count() || a.transition_count() != b.transition_count() ||
        a.arc_count() != b.arc_count())
        return false;
    for (const auto &[name, ref] : a.lookup_) {
        auto other = b.find(name);
        if (!other || other->kind != ref.kind)
            return false;
    }
    for (const Arc &arc : a.arcs()) {
        auto source = b.find(a.name(arc.source));
        auto target = b.find(a.name(arc.target));
        if (!b.has_arc(*source, *target))
            return false;
    }
    return true;
}

// ---------------------------------------------------------------- NetBuilder

NodeRef NetBuilder::add_node(NodeKind kind, std::string name) {
    if (!is_identifier(name))
        throw Error(ErrorCode::invalid_net, "invalid identifier '" + name + "'");
    if (net_.lookup_.count(name))
        throw Error(ErrorCode::invalid_net, "duplicate node '" + name + "'");
    NodeRef ref{};
    if (kind == NodeKind::place) {
        ref = NodeRef::place(static_cast<Index>(net_.place_names_.size()));
        net_.place_names_.push_back(name);
        net_.place_pre_.emplace_back();
        net_.place_post_.emplace_back();
    } else {
        ref = NodeRef::transition(static_cast<Index>(net_.transition_names_.size()));
        net_.transition_names_.push_back(name);
        net_.transition_pre_.emplace_back();
        net_.transition_post_.emplace_back();
    }
    net_.lookup_.emplace(std::move(name), ref);
    return ref;
}

NodeRef NetBuilder::add_place(std::string name) { return add_node(NodeKind::place, std::move(name)); }

NodeRef NetBuilder::add_transition(std::string name) {
    return add_node(NodeKind::transition, std::move(name));
}

std::uint64_t NetBuilder::arc_key(NodeRef source, NodeRef target) const {
    return (std::uint64_t{source.kind == NodeKind::place ? 0u : 1u} << 63) |
           (std::uint64_t{source.index} << 31) | std::uint64_t{target.index};
}

bool NetBuilder::has_arc(NodeRef source, NodeRef target) const {
    return arc_keys_.count(arc_key(source, target)) != 0;
}

void NetBuilder::add_arc(NodeRef source, NodeRef target) {
    if (source.kind == target.kind)
        throw Error(ErrorCode::invalid_net, "arc " + net_.name(source) + " -> " + net_.name(target) +
                                                " connects two " + to_string(source.kind) + "s");
    if (!arc_keys_.insert(arc_key(source, target)).second)
        throw Error(ErrorCode::invalid_net,
                    "duplicate arc " + net_.name(source) + " -> " + net_.name(target));
    if (source.kind == NodeKind::place) {
        net_.place_post_[source.index].push_back(target.index);
        net_.transition_pre_[target.index].push_back(source.index);
    } else {
        net_.transition_post_[source.index].push_back(target.index);
        net_.place_pre_[target.index].push_back(source.index);
    }
    ++net_.arc_count_;
}

void NetBuilder::add_arc(std::string_view source, std::string_view target) {
    auto from = find(source);
    if (!from)
        throw Error(ErrorCode::unknown_node, "unknown node '" + std::string(source) + "'");
    auto to = find(target);
    if (!to)
        throw Error(ErrorCode::unknown_node, "unknown node '" + std::string(target) + "'");
    add_arc(*from, *to);
}

std::optional<NodeRef> NetBuilder::find(std::string_view name) const { return net_.find(name); }

Net NetBuilder::build() && {
    for (auto *lists : {&net_.place_pre_, &net_.place_post_, &net_.transition_pre_, &net_.transition_post_})
        for (auto &list : *lists)
            std::sort(list.begin(), list.end());
    auto by_name = [](const std::vector<std::string> &names) {
        std::vector<Index> order(names.size());
        std::iota(order.begin(), order.end(), Index{0});
        std::sort(order.begin(), order.end(), [&](Index a, Index b) { return names[a] < names[b]; });
        return order;
    };
    net_.places_by_name_ = by_name(net_.place_names_);
    net_.transitions_by_name_ = by_name(net_.transition_names_);
    arc_keys_.clear();
    return std::move(net_);
}

Net make_net(const std::vector<std::string> &places, const std::vector<std::string> &transitions,
             const std::vector<std::pair<std::string, std::string>> &arcs) {
    NetBuilder builder;
    for (const auto &p : places)
        builder.add_place(p);
    for (const auto &t : transitions)
        builder.add_transition(t);
    for (const auto &[from, to] : arcs)
        builder.add_arc(from, to);
    return std::move(builder).build();
}

// ---------------------------------------------------------------- operations

static std::vector<NodeId> sorted_ids(const Net &net, NodeKind kind, std::span<const Index> indices) {
    std::vector<NodeId> out;
    out.reserve(indices.size());
    for (Index i : indices)
        out.push_back(net.id({kind, i}));
    std::sort(out.begin(), out.end(), [](const NodeId &a, const NodeId &b) { return a.name < b.name; });
    return out;
}

std::vector<NodeId> preset(const Net &net, const NodeId &node) {
    NodeRef ref = net.resolve(node);
    return sorted_ids(net, opposite(ref.kind), net.pre(ref));
}

std::vector<NodeId> postset(const Net &net, const NodeId &node) {
    NodeRef ref = net.resolve(node);
    return sorted_ids(net, opposite(ref.kind), net.post(ref));
}

Net induced_subnet(const Net &net, const NodeSet &nodes) {
    if (nodes.place_capacity() != net.place_count() || nodes.transition_capacity() != net.transition_count())
        throw Error(ErrorCode::unknown_node, "node set does not belong to this net");
    NetBuilder builder;
    std::vector<NodeRef> place_map(net.place_count()), transition_map(net.transition_count());
    for (Index s = 0; s < net.place_count(); ++s)
        if (nodes.has_place(s))
            place_map[s] = builder.add_place(net.place_name(s));
    for (Index t = 0; t < net.transition_count(); ++t)
        if (nodes.has_transition(t))
            transition_map[t] = builder.add_transition(net.transition_name(t));
    for (const Arc &arc : net.arcs()) {
        if (!nodes.contains(arc.source) || !nodes.contains(arc.target))
            continue;
        auto map = [&](NodeRef r) { return r.kind == NodeKind::place ? place_map[r.index] : transition_map[r.index]; };
        builder.add_arc(map(arc.source), map(arc.target));
    }
    return std::move(builder).build();
}

Net induced_subnet(const Net &net, const std::vector<NodeId> &nodes) {
    NodeSet set = NodeSet::none_of(net);
    for (const auto &id : nodes)
        set.insert(net.resolve(id));
    return induced_subnet(net, set);
}

NodeSet node_set(const Net &net, const std::vector<std::string> &names) {
    NodeSet set = NodeSet::none_of(net);
    for (const auto &name : names)
        set.insert(net.resolve(name));
    return set;
}

std::vector<std::string> node_names(const Net &net, const NodeSet &nodes) {
    std::vector<std::string> out;
    for (Index s : nodes.places())
        out.push_back(net.place_name(s));
    for (Index t : nodes.transitions())
        out.push_back(net.transition_name(t));
    std::sort(out.begin(), out.end());
    return out;
}

Net reverse_dual(const Net &net) {
    NetBuilder builder;
    for (Index t = 0; t < net.transition_count(); ++t)
        builder.add_place(net.transition_name(t));
    for (Index s = 0; s < net.place_count(); ++s)
        builder.add_transition(net.place_name(s));
    for (const Arc &arc : net.arcs())
        builder.add_arc(dual_ref(arc.target), dual_ref(arc.source));
    return std::move(builder).build();
}

static void check_transition(const Net &net, Index t) {
    if (t >= net.transition_count())
        throw Error(ErrorCode::unknown_node, "transition index " + std::to_string(t) + " out of range");
}

static void check_marking(const Net &net, const Marking &m) {
    if (m.size() != net.place_count())
        throw Error(ErrorCode::invalid_argument, "marking has " + std::to_string(m.size()) +
                                                     " entries, net has " +
                                                     std::to_string(net.place_count()) + " places");
}

bool enabled(const Net &net, const Marking &m, Index t) {
    check_transition(net, t);
    check_marking(net, m);
    for (Index s : net.transition_pre(t))
        if (m[s] == 0)
            return false;
    return true;
}

static Marking fire_unchecked(const Net &net, Marking m, Index t) {
    for (Index s : net.transition_pre(t))
        --m[s];
    for (Index s : net.transition_post(t)) {
        if (m[s] == std::numeric_limits<Tokens>::max())
            throw Error(ErrorCode::token_overflow,
                        "token count of place '" + net.place_name(s) + "' overflows");
        ++m[s];
    }
    return m;
}

Marking fire(const Net &net, const Marking &m, Index t) {
    if (!enabled(net, m, t))
        throw NotEnabledError(0, net.transition_name(t));
    return fire_unchecked(net, m, t);
}

Marking fire_sequence(const Net &net, const Marking &m, const FiringSequence &sequence) {
    check_marking(net, m);
    Marking current = m;
    for (std::size_t i = 0; i < sequence.size(); ++i) {
        Index t = sequence[i];
        if (!enabled(net, current, t))
            throw NotEnabledError(i, net.transition_name(t));
        current = fire_unchecked(net, std::move(current), t);
    }
    return current;
}

Effect sequence_effect(const Net &net, const FiringSequence &sequence) {
    Effect effect(net.place_count(), 0);
    for (Index t : sequence) {
        check_transition(net, t);
        for (Index s : net.transition_pre(t))
            --effect[s];
        for (Index s : net.transition_post(t))
            ++effect[s];
    }
    return effect;
}

FiringSequence restrict_sequence(const FiringSequence &sequence, std::span<const Index> keep) {
    std::unordered_set<Index> kept(keep.begin(), keep.end());
    FiringSequence out;
    std::copy_if(sequence.begin(), sequence.end(), std::back_inserter(out),
                 [&](Index t) { return kept.count(t) != 0; });
    return out;
}

FiringSequence to_sequence(const Net &net, const std::vector<std::string> &transitions) {
    FiringSequence out;
    out.reserve(transitions.size());
    for (const auto &name : transitions)
        out.push_back(net.transition(name));
    return out;
}

std::vector<std::string> sequence_names(const Net &net, const FiringSequence &sequence) {
    std::vector<std::string> out;
    out.reserve(sequence.size());
    for (Index t : sequence)
        out.push_back(net.transition_name(t));
    return out;
}

Marking make_marking(const Net &net, const std::vector<std::pair<std::string, Tokens>> &tokens) {
    Marking m(net.place_count());
    for (const auto &[name, count] : tokens)
        m[net.place(name)] = count;
    return m;
}

} // namespace fcwf
