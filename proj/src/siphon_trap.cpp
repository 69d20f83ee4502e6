#include "fcwf/siphon_trap.hpp"

#include <algorithm>

#include "fcwf/error.hpp"
#include "fcwf/free_choice.hpp"

namespace fcwf {

namespace {

void check_places(const Net &net, const PlaceSet &set) {
    if (set.size() != net.place_count())
        throw Error(ErrorCode::unknown_node, "place set does not belong to this net");
}

bool touches(std::span<const Index> places, const PlaceSet &set) {
    return std::any_of(places.begin(), places.end(), [&](Index s) { return set[s] != 0; });
}

bool is_empty(const PlaceSet &set) { return std::find(set.begin(), set.end(), 1) == set.end(); }

bool subset(const PlaceSet &a, const PlaceSet &b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && !b[i])
            return false;
    return true;
}

// Largest siphon inside a: drop places fed by a transition that takes nothing
// from the current set.
PlaceSet max_siphon(const Net &net, PlaceSet a) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (Index s = 0; s < net.place_count(); ++s) {
            if (!a[s])
                continue;
            for (Index t : net.place_pre(s))
                if (!touches(net.transition_pre(t), a)) {
                    a[s] = 0;
                    changed = true;
                    break;
                }
        }
    }
    return a;
}

bool is_minimal_siphon(const Net &net, const PlaceSet &r) {
    for (Index q = 0; q < net.place_count(); ++q) {
        if (!r[q])
            continue;
        PlaceSet smaller = r;
        smaller[q] = 0;
        if (!is_empty(max_siphon(net, smaller)))
            return false;
    }
    return true;
}

// Partition search: every node holds a region (include, allowed). The region's
// siphons that contain `include` are split by which place of one such siphon
// they miss, so sibling regions are disjoint and each node yields a distinct set.
struct SiphonSearch {
    const Net &net;
    std::size_t cap;
    std::vector<PlaceSet> found;

    // Smallest siphon containing include found by dropping places one at a time;
    // no siphon between include and the result is strictly smaller.
    PlaceSet shrink(PlaceSet r, const PlaceSet &include) {
        for (Index q : net.places_by_name()) {
            if (!r[q] || include[q])
                continue;
            PlaceSet smaller = r;
            smaller[q] = 0;
            smaller = max_siphon(net, smaller);
            if (!is_empty(smaller) && subset(include, smaller))
                r = std::move(smaller);
        }
        return r;
    }

    void run(PlaceSet include, const PlaceSet &allowed) {
        PlaceSet r = max_siphon(net, allowed);
        if (is_empty(r) || !subset(include, r))
            return;
        PlaceSet m = shrink(std::move(r), include);
        if (is_minimal_siphon(net, m)) {
            found.push_back(m);
            if (found.size() > cap)
                throw Error(ErrorCode::enumeration_overflow, "more than " + std::to_string(cap) + " minimal siphons");
        }
        PlaceSet region = max_siphon(net, allowed);
        for (Index p : net.places_by_name()) {
            if (!m[p] || include[p])
                continue;
            PlaceSet without = region;
            without[p] = 0;
            run(include, without);
            include[p] = 1;
        }
    }
};

} // namespace

PlaceSet place_set(const Net &net, const std::vector<std::string> &names) {
    PlaceSet set(net.place_count(), 0);
    for (const auto &name : names)
        set[net.place(name)] = 1;
    return set;
}

std::vector<std::string> place_names(const Net &net, const PlaceSet &places) {
    std::vector<std::string> out;
    for (Index s : net.places_by_name())
        if (places[s])
            out.push_back(net.place_name(s));
    return out;
}

bool is_trap(const Net &net, const PlaceSet &q) {
    check_places(net, q);
    for (Index t = 0; t < net.transition_count(); ++t)
        if (touches(net.transition_pre(t), q) && !touches(net.transition_post(t), q))
            return false;
    return true;
}

bool is_siphon(const Net &net, const PlaceSet &r) {
    check_places(net, r);
    for (Index t = 0; t < net.transition_count(); ++t)
        if (touches(net.transition_post(t), r) && !touches(net.transition_pre(t), r))
            return false;
    return true;
}

MaxTrapResult maximal_trap(const Net &net, const PlaceSet &r) {
    check_places(net, r);
    MaxTrapResult out;
    out.trap = r;
    out.exit_index.assign(net.transition_count(), 0);
    for (;;) {
        std::vector<Index> exits;
        for (Index t : net.transitions_by_name())
            if (touches(net.transition_pre(t), out.trap) && !touches(net.transition_post(t), out.trap))
                exits.push_back(t);
        if (exits.empty())
            break;
        for (Index t : exits) {
            out.exit_index[t] = out.layers.size() + 1;
            for (Index s : net.transition_pre(t))
                out.trap[s] = 0;
        }
        out.layers.push_back(std::move(exits));
    }
    return out;
}

std::vector<PlaceSet> minimal_siphons(const Net &net, std::size_t cap) {
    SiphonSearch search{net, cap, {}};
    search.run(PlaceSet(net.place_count(), 0), PlaceSet(net.place_count(), 1));
    std::vector<std::pair<std::vector<std::string>, PlaceSet>> keyed;
    for (PlaceSet &s : search.found)
        keyed.emplace_back(place_names(net, s), std::move(s));
    std::sort(keyed.begin(), keyed.end());
    std::vector<PlaceSet> out;
    for (auto &entry : keyed)
        out.push_back(std::move(entry.second));
    return out;
}

CommonerVerdict commoner_live(const Net &net, const Marking &m0, std::size_t cap) {
    if (!is_free_choice(net))
        throw Error(ErrorCode::not_free_choice, "net is not free-choice");
    for (Index s = 0; s < net.place_count(); ++s)
        if (net.is_isolated(NodeRef::place(s)))
            throw Error(ErrorCode::isolated_place_present, "place '" + net.place_name(s) + "' is isolated");
    if (m0.size() != net.place_count())
        throw Error(ErrorCode::invalid_argument, "marking size does not match the net");
    for (PlaceSet &siphon : minimal_siphons(net, cap)) {
        MaxTrapResult trap = maximal_trap(net, siphon);
        bool marked = false;
        for (Index s = 0; s < net.place_count(); ++s)
            marked |= trap.trap[s] && m0[s] > 0;
        if (!marked)
            return {false, std::move(siphon)};
    }
    return {true, std::nullopt};
}

} // namespace fcwf
