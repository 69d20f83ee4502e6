#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fcwf/net.hpp"

namespace fcwf {

// Place subsets are masks over the places of a net.
using PlaceSet = std::vector<char>;

PlaceSet place_set(const Net &net, const std::vector<std::string> &names);
std::vector<std::string> place_names(const Net &net, const PlaceSet &places);

bool is_trap(const Net &net, const PlaceSet &q);
bool is_siphon(const Net &net, const PlaceSet &r);

struct MaxTrapResult {
    PlaceSet trap;
    // Leaking transitions in removal order; layer i holds the transitions with
    // exit index i + 1.
    std::vector<std::vector<Index>> layers;
    // Per transition: 0 if it never leaked, otherwise its layer number.
    std::vector<std::size_t> exit_index;
};

MaxTrapResult maximal_trap(const Net &net, const PlaceSet &r);

inline constexpr std::size_t default_siphon_cap = 100000;

// All inclusion-minimal nonempty siphons, each as a sorted-by-name place list,
// ordered lexicographically by those name lists.
std::vector<PlaceSet> minimal_siphons(const Net &net, std::size_t cap = default_siphon_cap);

struct CommonerVerdict {
    bool live = false;
    std::optional<PlaceSet> witness_siphon; // set when not live
};

CommonerVerdict commoner_live(const Net &net, const Marking &m0, std::size_t cap = default_siphon_cap);

} // namespace fcwf
