#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace fcwf {

using Index = std::uint32_t;
using Tokens = std::uint64_t;

enum class NodeKind : std::uint8_t { place, transition };

inline NodeKind opposite(NodeKind kind) {
    return kind == NodeKind::place ? NodeKind::transition : NodeKind::place;
}

const char *to_string(NodeKind kind);

// Dense handle of a node inside one particular net.
struct NodeRef {
    NodeKind kind;
    Index index;

    static NodeRef place(Index i) { return {NodeKind::place, i}; }
    static NodeRef transition(Index i) { return {NodeKind::transition, i}; }

    auto operator<=>(const NodeRef &) const = default;
};

// External identity of a node: its kind plus its identifier.
struct NodeId {
    NodeKind kind;
    std::string name;

    auto operator<=>(const NodeId &) const = default;
};

bool is_identifier(std::string_view text);

class Net;

// Subset of the nodes of a net, stored as two dense membership masks.
class NodeSet {
  public:
    NodeSet() = default;
    NodeSet(std::size_t place_count, std::size_t transition_count)
        : places_(place_count, 0), transitions_(transition_count, 0) {}

    static NodeSet none_of(const Net &net);
    static NodeSet all_of(const Net &net);

    bool contains(NodeRef node) const {
        return node.kind == NodeKind::place ? places_[node.index] != 0
                                            : transitions_[node.index] != 0;
    }
    bool has_place(Index i) const { return places_[i] != 0; }
    bool has_transition(Index i) const { return transitions_[i] != 0; }

    void insert(NodeRef node) { mask(node.kind)[node.index] = 1; }
    void erase(NodeRef node) { mask(node.kind)[node.index] = 0; }
    void insert_place(Index i) { places_[i] = 1; }
    void insert_transition(Index i) { transitions_[i] = 1; }
    void erase_place(Index i) { places_[i] = 0; }
    void erase_transition(Index i) { transitions_[i] = 0; }

    std::size_t place_capacity() const { return places_.size(); }
    std::size_t transition_capacity() const { return transitions_.size(); }

    std::size_t place_count() const;
    std::size_t transition_count() const;
    std::size_t size() const { return place_count() + transition_count(); }
    bool empty() const { return size() == 0; }

    std::vector<Index> places() const;
    std::vector<Index> transitions() const;

    // The same node set read in the reverse-dual net, where kinds swap.
    NodeSet swapped() const;

    NodeSet &operator|=(const NodeSet &other);
    bool is_subset_of(const NodeSet &other) const;
    bool intersects(const NodeSet &other) const;

    bool operator==(const NodeSet &) const = default;

  private:
    std::vector<char> &mask(NodeKind kind) {
        return kind == NodeKind::place ? places_ : transitions_;
    }

    std::vector<char> places_;
    std::vector<char> transitions_;
};

class Marking {
  public:
    Marking() = default;
    explicit Marking(std::size_t place_count, Tokens value = 0) : tokens_(place_count, value) {}
    explicit Marking(std::vector<Tokens> tokens) : tokens_(std::move(tokens)) {}
    Marking(std::initializer_list<Tokens> tokens) : tokens_(tokens) {}

    std::size_t size() const { return tokens_.size(); }
    Tokens operator[](std::size_t i) const { return tokens_[i]; }
    Tokens &operator[](std::size_t i) { return tokens_[i]; }
    const std::vector<Tokens> &tokens() const { return tokens_; }

    // Componentwise M >= other.
    bool covers(const Marking &other) const;
    Tokens total() const;

    auto operator<=>(const Marking &) const = default;
    bool operator==(const Marking &) const = default;

  private:
    std::vector<Tokens> tokens_;
};

struct MarkingHash {
    std::size_t operator()(const Marking &m) const noexcept;
};

// Transition indices of one net, in firing order.
using FiringSequence = std::vector<Index>;

// Effect vector Δ over the places of a net.
using Effect = std::vector<std::int64_t>;

struct Arc {
    NodeRef source;
    NodeRef target;

    auto operator<=>(const Arc &) const = default;
};

// Immutable place/transition net. Places and transitions keep the order in
// which they were declared; pre- and postsets are sorted by index.
class Net {
  public:
    Net() = default;

    std::size_t place_count() const { return place_names_.size(); }
    std::size_t transition_count() const { return transition_names_.size(); }
    std::size_t node_count() const { return place_count() + transition_count(); }
    std::size_t arc_count() const { return arc_count_; }

    const std::string &place_name(Index i) const { return place_names_[i]; }
    const std::string &transition_name(Index i) const { return transition_names_[i]; }
    const std::string &name(NodeRef node) const {
        return node.kind == NodeKind::place ? place_names_[node.index]
                                            : transition_names_[node.index];
    }
    NodeId id(NodeRef node) const { return {node.kind, name(node)}; }

    std::optional<NodeRef> find(std::string_view name) const;
    // Throw Error(unknown_node) when the node is not declared with that kind.
    NodeRef resolve(const NodeId &id) const;
    NodeRef resolve(std::string_view name) const;
    Index place(std::string_view name) const;
    Index transition(std::string_view name) const;

    std::span<const Index> place_pre(Index s) const { return place_pre_[s]; }
    std::span<const Index> place_post(Index s) const { return place_post_[s]; }
    std::span<const Index> transition_pre(Index t) const { return transition_pre_[t]; }
    std::span<const Index> transition_post(Index t) const { return transition_post_[t]; }

    // Neighbours of the opposite kind.
    std::span<const Index> pre(NodeRef node) const {
        return node.kind == NodeKind::place ? place_pre(node.index) : transition_pre(node.index);
    }
    std::span<const Index> post(NodeRef node) const {
        return node.kind == NodeKind::place ? place_post(node.index) : transition_post(node.index);
    }

    bool has_arc(NodeRef source, NodeRef target) const;
    bool is_isolated(NodeRef node) const { return pre(node).empty() && post(node).empty(); }

    // Place-then-transition arcs, each group ordered by source then target index.
    std::vector<Arc> arcs() const;

    // Uniform numbering for graph algorithms: places first, then transitions.
    std::size_t graph_index(NodeRef node) const {
        return node.kind == NodeKind::place ? node.index : place_count() + node.index;
    }
    NodeRef from_graph_index(std::size_t g) const {
        return g < place_count() ? NodeRef::place(static_cast<Index>(g))
                                 : NodeRef::transition(static_cast<Index>(g - place_count()));
    }

    // Indices sorted by identifier.
    const std::vector<Index> &places_by_name() const { return places_by_name_; }
    const std::vector<Index> &transitions_by_name() const { return transitions_by_name_; }

    // Structural equality: same named nodes and same named arcs, regardless
    // of declaration order.
    friend bool operator==(const Net &a, const Net &b);

  private:
    friend class NetBuilder;

    std::vector<std::string> place_names_;
    std::vector<std::string> transition_names_;
    std::vector<std::vector<Index>> place_pre_;
    std::vector<std::vector<Index>> place_post_;
    std::vector<std::vector<Index>> transition_pre_;
    std::vector<std::vector<Index>> transition_post_;
    std::unordered_map<std::string, NodeRef> lookup_;
    std::vector<Index> places_by_name_;
    std::vector<Index> transitions_by_name_;
    std::size_t arc_count_ = 0;
};

// Incremental construction with validation. Every violation of the net
// invariants (bad identifier, duplicate node, same-kind arc, duplicate arc,
// unknown endpoint) throws Error.
class NetBuilder {
  public:
    NodeRef add_place(std::string name);
    NodeRef add_transition(std::string name);
    NodeRef add_node(NodeKind kind, std::string name);
    void add_arc(NodeRef source, NodeRef target);
    void add_arc(std::string_view source, std::string_view target);

    std::optional<NodeRef> find(std::string_view name) const;
    bool has_arc(NodeRef source, NodeRef target) const;

    Net build() &&;

  private:
    std::uint64_t arc_key(NodeRef source, NodeRef target) const;

    Net net_;
    std::unordered_set<std::uint64_t> arc_keys_;
};

// Convenience for fixtures and tests: names are resolved against the declared
// places and transitions.
Net make_net(const std::vector<std::string> &places, const std::vector<std::string> &transitions,
             const std::vector<std::pair<std::string, std::string>> &arcs);

std::vector<NodeId> preset(const Net &net, const NodeId &node);
std::vector<NodeId> postset(const Net &net, const NodeId &node);

Net induced_subnet(const Net &net, const NodeSet &nodes);
Net induced_subnet(const Net &net, const std::vector<NodeId> &nodes);
NodeSet node_set(const Net &net, const std::vector<std::string> &names);
// Sorted identifiers of the members.
std::vector<std::string> node_names(const Net &net, const NodeSet &nodes);

// rd(N) = (T, S, F^-1). Names survive, kinds flip, indices are preserved.
Net reverse_dual(const Net &net);

bool enabled(const Net &net, const Marking &m, Index t);
Marking fire(const Net &net, const Marking &m, Index t);
Marking fire_sequence(const Net &net, const Marking &m, const FiringSequence &sequence);
Effect sequence_effect(const Net &net, const FiringSequence &sequence);
FiringSequence restrict_sequence(const FiringSequence &sequence, std::span<const Index> keep);

FiringSequence to_sequence(const Net &net, const std::vector<std::string> &transitions);
std::vector<std::string> sequence_names(const Net &net, const FiringSequence &sequence);

// Marking from (place, tokens) pairs; unlisted places hold zero tokens.
Marking make_marking(const Net &net, const std::vector<std::pair<std::string, Tokens>> &tokens);

// Same node names, opposite-net indices: S_X of a subset in N is T_X in rd(N).
inline NodeRef dual_ref(NodeRef node) { return {opposite(node.kind), node.index}; }

} // namespace fcwf
