#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fcwf/components.hpp"
#include "fcwf/net.hpp"

namespace fcwf {

enum class Answer { yes, no };
const char *to_string(Answer answer);

// A bottom SCC that is not a top SCC rules out any live and bounded marking.
struct StructuralRefusal {
    NodeSet source; // an SCC with an arc into the bottom SCC
    NodeSet bottom;
};

struct WellFormednessVerdict {
    Answer answer = Answer::no;
    std::vector<Component> t_cover;    // answer == yes
    std::optional<Component> witness;  // answer == no, proper semi-T-component
    std::optional<StructuralRefusal> refusal;
};

// Strongly connected free-choice nets with at least one place and transition.
WellFormednessVerdict decide_well_formed_scc(const Net &net);

// Any free-choice net. Nets whose SCCs are not all isolated from each other
// are refused structurally.
WellFormednessVerdict decide_well_formed(const Net &net);

// Goodness fixpoint search for a semi-T-component meeting T0.
std::optional<Component> find_semi_t_intersecting(const Net &net, std::span<const Index> t0);

// Proper semi-S-component of Type II (outbound arc), searched on rd(net).
std::optional<Component> find_proper_semi_s_type2(const Net &net);

namespace detail {
// Search on the induced subnet net[within]; returns the node set in net's
// indices. net[within] must be free-choice.
std::optional<NodeSet> semi_t_intersecting_within(const Net &net, const NodeSet &within,
                                                  std::span<const Index> t0);
// Phase 2 of the decision procedure. When skip_single_place_clusters is set,
// clusters with one place are not examined.
std::optional<Component> phase_two(const Net &net, bool skip_single_place_clusters);
} // namespace detail

} // namespace fcwf
