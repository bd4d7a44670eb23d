#pragma once

// Property suites run by `rcc verify` and by the acceptance binary. Each suite
// checks one diagram and says why it passed or failed.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rcc/arf.hpp"
#include "rcc/codec.hpp"
#include "rcc/diagram.hpp"
#include "rcc/gf2.hpp"
#include "rcc/region_solver.hpp"
#include "rcc/unknotter.hpp"

namespace rcc::suites {

struct Outcome {
    bool passed = true;
    bool skipped = false;
    std::string detail;
};

inline Outcome skip(std::string why) { return {true, true, std::move(why)}; }

inline std::uint64_t seed_for(std::string_view name) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : name)
        h = (h ^ ch) * 1099511628211ull;
    return h;
}

inline std::string join(const std::vector<int>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
}

inline Outcome rank_law(const Diagram& d) {
    const auto r = static_cast<int>(gf2::rank(incidence_matrix(d).matrix));
    const int want = d.crossing_count() - d.component_count() + 1;
    return {r == want, false, "rank " + std::to_string(r) + ", c-n+1 = " + std::to_string(want)};
}

inline Outcome check_selection(const Diagram& d, const CrossingSelection& q) {
    const bool parity = admissible_by_parity(d, q);
    const auto linear = solve_regions(d, q);
    const auto brute = brute_force_regions(d, q);
    auto fail = [&](const std::string& what) { return Outcome{false, false, what + " for Q=" + join(q.members())}; };
    if (parity != linear.has_value() || parity != brute.has_value())
        return fail("parity/linear/brute-force disagree");
    if (!linear)
        return {};
    if (region_effect(d, *linear) != q)
        return fail("linear solution does not realize Q");
    const auto minimal = minimal_regions(d, q);
    if (!minimal || minimal->count() != brute->count())
        return fail("minimal cardinality differs from brute force");
    if (*minimal != *brute)
        return fail("minimal set differs from brute force tie-break");
    return {};
}

/// Parity criterion, linear solve and brute force agree; so do minimal sets.
/// Every selection when c <= 5, 200 seeded random ones when c <= 7.
inline Outcome admissibility(const Diagram& d, std::string_view name) {
    const int c = d.crossing_count();
    if (c > 7)
        return skip("c > 7");
    int checked = 0, admissible = 0;
    auto run = [&](const CrossingSelection& q) {
        ++checked;
        auto o = check_selection(d, q);
        if (o.passed && admissible_by_parity(d, q))
            ++admissible;
        return o;
    };
    if (c <= 5) {
        for (std::uint32_t mask = 0; mask < (1u << c); ++mask) {
            CrossingSelection q(static_cast<std::size_t>(c));
            for (int x = 0; x < c; ++x)
                if ((mask >> x) & 1u)
                    q.insert(x);
            if (auto o = run(q); !o.passed)
                return o;
        }
    } else {
        std::mt19937_64 rng(seed_for(name));
        for (int t = 0; t < 200; ++t) {
            CrossingSelection q(static_cast<std::size_t>(c));
            for (int x = 0; x < c; ++x)
                if (rng() & 1u)
                    q.insert(x);
            if (auto o = run(q); !o.passed)
                return o;
        }
    }
    return {true, false, std::to_string(checked) + " selections, " + std::to_string(admissible) + " admissible"};
}

template <class Rng>
BasePointOrdering random_ordering(const Diagram& d, Rng& rng) {
    BasePointOrdering ord = default_ordering(d);
    std::shuffle(ord.order.begin(), ord.order.end(), rng);
    for (auto& bp : ord.order) {
        const auto& arcs = d.component_arcs(bp.component);
        if (!arcs.empty())
            bp.arc = arcs[static_cast<std::size_t>(rng() % arcs.size())];
        bp.forward = (rng() & 1u) != 0;
    }
    return ord;
}

/// Proper: the returned regions make the diagram descending. Not proper:
/// NotProperError, and descending selections from 5 random orderings are all
/// inadmissible.
inline Outcome unknotting(const Diagram& d, std::string_view name) {
    if (is_proper(d)) {
        const auto ord = default_ordering(d);
        const auto plan = unknot_plan(d, ord);
        if (!is_descending(apply_regions(d, plan.regions), ord))
            return {false, false, "flipped diagram is not descending"};
        return {true, false, "regions " + join(plan.regions.members()) + " give a descending diagram"};
    }
    try {
        unknot_regions(d);
        return {false, false, "non-proper diagram was unknotted"};
    } catch (const NotProperError&) {
    }
    std::mt19937_64 rng(seed_for(name) ^ 0x5bd1e995u);
    for (int t = 0; t < 5; ++t) {
        const auto q = descending_selection(d, random_ordering(d, rng));
        if (admissible_by_parity(d, q) || solve_regions(d, q))
            return {false, false, "descending selection " + join(q.members()) + " is admissible"};
    }
    return {true, false, "NotProperError; 5 random descending selections inadmissible"};
}

/// A region crossing change keeps each component's total linking parity.
inline Outcome linking_parity(const Diagram& d) {
    const auto before = linking_matrix(d).total_parity();
    for (int f = 0; f < d.face_count(); ++f) {
        const auto after =
            linking_matrix(apply_regions(d, RegionSelection::of(static_cast<std::size_t>(d.face_count()), {f}))).total_parity();
        if (after != before)
            return {false, false, "face " + std::to_string(f) + " changes the parity vector"};
    }
    return {true, false, std::to_string(d.face_count()) + " faces"};
}

inline Outcome a_even(const Diagram& d) {
    std::vector<int> values;
    for (int f = 0; f < d.face_count(); ++f) {
        const int a = region_signs(d, f).A;
        if (a % 2 != 0)
            return {false, false, "A = " + std::to_string(a) + " on face " + std::to_string(f)};
        values.push_back(a);
    }
    std::ostringstream os;
    os << "A values";
    for (int a : values)
        os << ' ' << a;
    return {true, false, os.str()};
}

/// Predicted Arf change on every region against the determinant oracle.
inline Outcome arf_change(const Diagram& d) {
    if (!is_proper(d))
        return skip("not proper");
    if (d.crossing_count() > 8)
        return skip("c > 8");
    const auto base = arf_link(d);
    for (int f = 0; f < d.face_count(); ++f) {
        const auto flipped = arf_link(apply_regions(d, RegionSelection::of(static_cast<std::size_t>(d.face_count()), {f})));
        const int predicted = arf_delta(d, f);
        if ((base ^ flipped).bit != predicted)
            return {false, false, "face " + std::to_string(f) + ": predicted " + std::to_string(predicted) + ", oracle " +
                                      std::to_string((base ^ flipped).bit)};
    }
    return {true, false, std::to_string(d.face_count()) + " regions agree with the oracle"};
}

inline Outcome arf_regions(const Diagram& d) {
    if (!is_proper(d))
        return skip("not proper");
    const auto s = unknot_regions(d);
    const auto via = arf_via_regions(d, s);
    const auto oracle = arf_link(d);
    return {via == oracle, false,
            "regions " + std::to_string(via.bit) + ", oracle " + std::to_string(oracle.bit) + " (det " +
                std::to_string(link_determinant(d)) + ")"};
}

namespace detail {
inline void all_smoothings(const Diagram& d, std::set<int>& results, int& sequences) {
    if (d.component_count() == 1) {
        results.insert(arf_knot(d).bit);
        ++sequences;
        return;
    }
    for (int x = 0; x < d.crossing_count(); ++x)
        if (!d.is_self_crossing(x))
            all_smoothings(smooth_crossing(d, x), results, sequences);
}
} // namespace detail

/// Every order of smoothing inter-component crossings gives the same Arf.
inline Outcome smoothing_order(const Diagram& d) {
    if (!is_proper(d) || d.component_count() < 2)
        return skip("needs a proper link with n >= 2");
    if (d.component_count() > 3)
        return skip("n > 3");
    std::set<int> results;
    int sequences = 0;
    detail::all_smoothings(d, results, sequences);
    return {results.size() == 1, false, std::to_string(sequences) + " sequences, " + std::to_string(results.size()) + " distinct value(s)"};
}

inline Outcome round_trip(const OrientedPDCode& code) {
    const auto text = serialize_pd(code);
    const bool same = parse_pd(text) == code && serialize_pd(parse_pd(text)) == text;
    return {same, false, same ? "ok" : "round trip changed " + text};
}

struct Named {
    const char* name;
    Outcome (*run)(const Diagram&, const OrientedPDCode&, std::string_view);
};

inline const std::vector<Named>& all() {
    static const std::vector<Named> list = {
        {"round_trip", [](const Diagram&, const OrientedPDCode& c, std::string_view) { return round_trip(c); }},
        {"rank_law", [](const Diagram& d, const OrientedPDCode&, std::string_view) { return rank_law(d); }},
        {"admissibility", [](const Diagram& d, const OrientedPDCode&, std::string_view n) { return admissibility(d, n); }},
        {"unknotting", [](const Diagram& d, const OrientedPDCode&, std::string_view n) { return unknotting(d, n); }},
        {"linking_parity", [](const Diagram& d, const OrientedPDCode&, std::string_view) { return linking_parity(d); }},
        {"a_even", [](const Diagram& d, const OrientedPDCode&, std::string_view) { return a_even(d); }},
        {"arf_change", [](const Diagram& d, const OrientedPDCode&, std::string_view) { return arf_change(d); }},
        {"arf_regions", [](const Diagram& d, const OrientedPDCode&, std::string_view) { return arf_regions(d); }},
        {"smoothing_order", [](const Diagram& d, const OrientedPDCode&, std::string_view) { return smoothing_order(d); }},
    };
    return list;
}

} // namespace rcc::suites
