#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "rcc/diagram.hpp"
#include "rcc/errors.hpp"
#include "rcc/gf2.hpp"
#include "rcc/selection.hpp"

namespace rcc {

/// Region-by-crossing incidence over GF(2). Rows hold the black faces (one
/// checkerboard class, the Tait graph) followed by the white faces (its dual).
struct IncidenceMatrix {
    gf2::BitMatrix matrix;
    std::vector<int> row_face;
    std::vector<int> face_row;
};

inline IncidenceMatrix incidence_matrix(const Diagram& d) {
    IncidenceMatrix m;
    m.matrix = gf2::BitMatrix(static_cast<std::size_t>(d.face_count()), static_cast<std::size_t>(d.crossing_count()));
    m.face_row.assign(static_cast<std::size_t>(d.face_count()), -1);
    for (Color block : {Color::black, Color::white})
        for (const auto& f : d.faces())
            if (d.color(f.id) == block) {
                const auto r = m.row_face.size();
                m.face_row[static_cast<std::size_t>(f.id)] = static_cast<int>(r);
                m.row_face.push_back(f.id);
                for (int x : f.crossings)
                    m.matrix.set(r, static_cast<std::size_t>(x));
            }
    return m;
}

/// Crossings flipped by region crossing changes on every face of `s`; a crossing
/// on the boundary of several chosen faces flips once per face.
inline CrossingSelection region_effect(const Diagram& d, const RegionSelection& s) {
    CrossingSelection out(static_cast<std::size_t>(d.crossing_count()));
    for (int f : s.members())
        for (int x : d.face(f).crossings)
            out.toggle(x);
    return out;
}

inline Diagram apply_regions(const Diagram& d, const RegionSelection& s) { return flip_crossings(d, region_effect(d, s)); }

/// G(L;Q): one vertex per component, one edge per selected crossing between two
/// different components.
struct AdmissibilityGraph {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;

    std::vector<int> degrees() const {
        std::vector<int> deg(static_cast<std::size_t>(vertex_count), 0);
        for (auto [a, b] : edges) {
            ++deg[static_cast<std::size_t>(a)];
            ++deg[static_cast<std::size_t>(b)];
        }
        return deg;
    }
};

inline AdmissibilityGraph admissibility_graph(const Diagram& d, const CrossingSelection& q) {
    AdmissibilityGraph g{d.component_count(), {}};
    for (int x : q.members())
        if (!d.is_self_crossing(x))
            g.edges.emplace_back(d.under_component(x), d.over_component(x));
    return g;
}

inline bool admissible_by_parity(const Diagram& d, const CrossingSelection& q) {
    const auto deg = admissibility_graph(d, q).degrees();
    return std::all_of(deg.begin(), deg.end(), [](int v) { return v % 2 == 0; });
}

/// Every region selection realizing a crossing selection: `particular` plus any
/// combination of `basis`.
struct RegionCoset {
    RegionSelection particular;
    std::vector<RegionSelection> basis;
};

namespace detail {

inline RegionSelection rows_to_regions(const IncidenceMatrix& m, const gf2::BitVector& rows) {
    RegionSelection s(m.row_face.size());
    for (std::size_t r = rows.first_set(); r != gf2::BitVector::npos; r = rows.find_next(r + 1))
        s.insert(m.row_face[r]);
    return s;
}

// Fewer regions first, then the lexicographically smaller sorted id list.
inline bool better(const RegionSelection& a, const RegionSelection& b) {
    if (a.count() != b.count())
        return a.count() < b.count();
    const auto diff = a.bits() ^ b.bits();
    const auto first = diff.first_set();
    return first != gf2::BitVector::npos && a.bits().test(first);
}

} // namespace detail

inline std::optional<RegionCoset> solution_coset(const Diagram& d, const CrossingSelection& q) {
    const auto m = incidence_matrix(d);
    const auto sol = gf2::solve(m.matrix, q.bits());
    if (!sol)
        return std::nullopt;
    RegionCoset coset{detail::rows_to_regions(m, sol->particular), {}};
    for (const auto& v : sol->nullspace)
        coset.basis.push_back(detail::rows_to_regions(m, v));
    return coset;
}

/// Some region selection whose crossing changes are exactly `q`, or nullopt when
/// `q` is not realizable. Debug builds cross-check against the parity criterion.
inline std::optional<RegionSelection> solve_regions(const Diagram& d, const CrossingSelection& q) {
    auto coset = solution_coset(d, q);
#ifndef NDEBUG
    if (coset.has_value() != admissible_by_parity(d, q))
        throw std::logic_error("linear solve and parity criterion disagree");
#endif
    if (!coset)
        return std::nullopt;
    return std::move(coset->particular);
}

/// Minimum-cardinality solution, ties broken by the lexicographically smallest
/// face-id list. Enumerates the whole coset (2^(n+1) members).
inline std::optional<RegionSelection> minimal_regions(const Diagram& d, const CrossingSelection& q) {
    const auto coset = solution_coset(d, q);
    if (!coset)
        return std::nullopt;
    const auto k = coset->basis.size();
    if (k >= 31)
        throw TooLargeError("solution coset of dimension " + std::to_string(k));
    RegionSelection best = coset->particular;
    RegionSelection cur = coset->particular;
    // Gray-code walk over the coset.
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << k); ++i) {
        cur ^= coset->basis[static_cast<std::size_t>(std::countr_zero(i))];
        if (detail::better(cur, best))
            best = cur;
    }
    return best;
}

inline constexpr int kBruteForceMaxFaces = 22;

/// Exhaustive oracle: tries every subset of faces, flipping the boundary
/// crossings of each chosen face, and returns a minimal solution under the same
/// ordering as minimal_regions. Does not use the incidence matrix or any solver.
inline std::optional<RegionSelection> brute_force_regions(const Diagram& d, const CrossingSelection& q) {
    const int faces = d.face_count();
    if (faces > kBruteForceMaxFaces)
        throw TooLargeError("brute force limited to " + std::to_string(kBruteForceMaxFaces) + " faces, got " +
                            std::to_string(faces));
    std::vector<std::uint64_t> flips(static_cast<std::size_t>(faces), 0);
    for (int f = 0; f < faces; ++f)
        for (int x : d.face(f).crossings)
            flips[static_cast<std::size_t>(f)] ^= std::uint64_t{1} << x;
    std::uint64_t target = 0;
    for (int x : q.members())
        target |= std::uint64_t{1} << x;

    auto better = [](std::uint64_t a, std::uint64_t b) {
        if (std::popcount(a) != std::popcount(b))
            return std::popcount(a) < std::popcount(b);
        const auto diff = a ^ b;
        return (a & diff & (~diff + 1)) != 0;
    };
    constexpr std::uint64_t none = ~std::uint64_t{0};

    const std::uint64_t total = std::uint64_t{1} << faces;
    auto scan = [&](std::uint64_t lo, std::uint64_t hi) {
        std::uint64_t best = none;
        for (std::uint64_t subset = lo; subset < hi; ++subset) {
            std::uint64_t effect = 0;
            for (std::uint64_t rest = subset; rest != 0; rest &= rest - 1)
                effect ^= flips[static_cast<std::size_t>(std::countr_zero(rest))];
            if (effect == target && (best == none || better(subset, best)))
                best = subset;
        }
        return best;
    };

    std::uint64_t best = none;
    const unsigned workers = faces >= 16 ? std::max(1u, std::thread::hardware_concurrency()) : 1u;
    if (workers == 1) {
        best = scan(0, total);
    } else {
        std::vector<std::future<std::uint64_t>> parts;
        const std::uint64_t chunk = (total + workers - 1) / workers;
        for (std::uint64_t lo = 0; lo < total; lo += chunk)
            parts.push_back(std::async(std::launch::async, scan, lo, std::min(total, lo + chunk)));
        for (auto& p : parts) {
            const auto b = p.get();
            if (b != none && (best == none || better(b, best)))
                best = b;
        }
    }
    if (best == none)
        return std::nullopt;
    RegionSelection s(static_cast<std::size_t>(faces));
    for (int f = 0; f < faces; ++f)
        if ((best >> f) & 1u)
            s.insert(f);
    return s;
}

} // namespace rcc
