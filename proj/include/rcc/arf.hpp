#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "rcc/diagram.hpp"
#include "rcc/errors.hpp"
#include "rcc/region_solver.hpp"
#include "rcc/unknotter.hpp"

namespace rcc {

struct ArfValue {
    int bit = 0;

    friend bool operator==(const ArfValue&, const ArfValue&) = default;
    friend ArfValue operator^(ArfValue a, ArfValue b) { return {a.bit ^ b.bit}; }
};

// ---------------------------------------------------------------------------
// Goeritz-matrix determinant. Independent of the region-sign machinery below.

/// Dense square integer matrix, row-major.
struct IntMatrix {
    int n = 0;
    std::vector<std::int64_t> a;

    std::int64_t& at(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
    std::int64_t at(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }
};

/// Fraction-free (Bareiss) elimination; exact for integer input.
inline std::int64_t determinant(IntMatrix m) {
    const int n = m.n;
    if (n == 0)
        return 1;
    __int128 prev = 1;
    int sign = 1;
    std::vector<__int128> w(m.a.begin(), m.a.end());
    auto at = [&](int i, int j) -> __int128& { return w[static_cast<std::size_t>(i * n + j)]; };
    for (int k = 0; k < n - 1; ++k) {
        if (at(k, k) == 0) {
            int p = k + 1;
            while (p < n && at(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            for (int j = 0; j < n; ++j)
                std::swap(at(k, j), at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
            at(i, k) = 0;
        }
        prev = at(k, k);
    }
    return static_cast<std::int64_t>(sign * at(n - 1, n - 1));
}

/// Goeritz matrix on the faces coloured `white` (indexed in face-id order).
/// A crossing whose two white corners lie in different faces f, g contributes
/// -eta to G[f][g]; eta is +1 when the white corners are the ones that follow
/// an over-strand end counterclockwise. Rows sum to zero.
inline IntMatrix goeritz_matrix(const Diagram& d, Color white) {
    std::vector<int> index(static_cast<std::size_t>(d.face_count()), -1);
    int m = 0;
    for (int f = 0; f < d.face_count(); ++f)
        if (d.color(f) == white)
            index[static_cast<std::size_t>(f)] = m++;
    IntMatrix g{m, std::vector<std::int64_t>(static_cast<std::size_t>(m * m), 0)};
    for (int x = 0; x < d.crossing_count(); ++x) {
        int q = d.over_in_slot(x) & 1; // quadrants 1,3 follow the over ends when over-in is odd
        if (d.color(d.face_at(x, q)) != white)
            q ^= 1;
        const int eta = (q & 1) == (d.over_in_slot(x) & 1) ? 1 : -1;
        const int f = index[static_cast<std::size_t>(d.face_at(x, q))];
        const int h = index[static_cast<std::size_t>(d.face_at(x, q + 2))];
        if (f == h)
            continue;
        g.at(f, h) -= eta;
        g.at(h, f) -= eta;
        g.at(f, f) += eta;
        g.at(h, h) += eta;
    }
    return g;
}

/// |det| of the Goeritz matrix with its last row and column deleted.
inline std::int64_t link_determinant(const Diagram& d, Color white = Color::white) {
    const auto g = goeritz_matrix(d, white);
    if (g.n <= 1)
        return 1;
    IntMatrix minor{g.n - 1, {}};
    for (int i = 0; i < g.n - 1; ++i)
        for (int j = 0; j < g.n - 1; ++j)
            minor.a.push_back(g.at(i, j));
    return std::llabs(determinant(std::move(minor)));
}

/// Arf invariant of a knot from its determinant: 0 when det ≡ ±1 (mod 8),
/// 1 when det ≡ ±3 (mod 8).
inline ArfValue arf_knot(const Diagram& d) {
    if (d.component_count() != 1)
        throw MultiComponentError("arf_knot needs a knot, got " + std::to_string(d.component_count()) + " components");
    const auto r = link_determinant(d) % 8;
    if (r == 1 || r == 7)
        return {0};
    if (r == 3 || r == 5)
        return {1};
    throw std::logic_error("knot determinant " + std::to_string(link_determinant(d)) + " is even");
}

/// Smooths inter-component crossings (lowest id first) until one component is
/// left, then evaluates the resulting knot.
inline ArfValue arf_link(const Diagram& d) {
    if (!is_proper(d))
        throw NotProperError("Arf invariant is only defined for proper links");
    Diagram cur = d;
    while (cur.component_count() > 1) {
        int pick = 0;
        while (cur.is_self_crossing(pick))
            ++pick;
        cur = smooth_crossing(cur, pick);
    }
    return arf_knot(cur);
}

// ---------------------------------------------------------------------------
// Region signs a(c), w(c) and A(R).

/// Sign of w(c) when, looking along the over-strand, the white corners are
/// front-left and back-right. Fixed so that A(R) is even on every region and
/// the predicted Arf change matches the determinant oracle; the opposite value
/// fails both (see arf_test).
inline constexpr int kWhiteFrontLeftSign = -1;

struct CrossingSigns {
    int crossing = -1;
    int a = 0; // crossing sign
    int w = 0; // checkerboard sign with the region white
};

struct RegionSignData {
    int region = -1;
    std::vector<CrossingSigns> crossings;
    int m_minus_plus = 0;
    int m_plus_minus = 0;
    int m_plus_plus = 0;
    int m_minus_minus = 0;
    // Crossings the region meets at two opposite corners (a curl pinched
    // against R). They flip without changing the link and carry no weight.
    std::vector<int> nugatory;
    int A = 0; // m_plus_minus - m_minus_plus
};

inline RegionSignData region_signs(const Diagram& d, int region) {
    const auto colors = checkerboard(d, region);
    RegionSignData out;
    out.region = region;
    const auto& face = d.face(region);
    for (int x : face.crossings) {
        const auto hits = std::count_if(face.corners.begin(), face.corners.end(),
                                        [x](const Corner& c) { return c.crossing == x; });
        if (hits > 1) {
            out.nugatory.push_back(x);
            continue;
        }
        // Looking along the over-strand, the front-left corner is the quadrant
        // that starts at the over-out slot.
        const int front_left = (d.over_in_slot(x) + 2) & 3;
        const bool fl_white = colors[static_cast<std::size_t>(d.face_at(x, front_left))] == Color::white;
        const int a = d.sign(x);
        const int w = fl_white ? kWhiteFrontLeftSign : -kWhiteFrontLeftSign;
        out.crossings.push_back({x, a, w});
        if (a < 0 && w > 0)
            ++out.m_minus_plus;
        else if (a > 0 && w < 0)
            ++out.m_plus_minus;
        else if (a > 0)
            ++out.m_plus_plus;
        else
            ++out.m_minus_minus;
    }
    out.A = out.m_plus_minus - out.m_minus_plus;
    return out;
}

namespace detail {
inline int mod4(int v) { return ((v % 4) + 4) % 4; }
} // namespace detail

/// Predicted Arf(L) + Arf(L') where L' is L after a region crossing change on
/// `region`: 0 when A(R) ≡ 0 (mod 4), 1 when A(R) ≡ 2 (mod 4).
inline int arf_delta(const Diagram& d, int region) {
    if (!is_proper(d))
        throw NotProperError("Arf invariant is only defined for proper links");
    const int a = region_signs(d, region).A;
    if (a % 2 != 0)
        throw std::logic_error("A(R) is odd on region " + std::to_string(region));
    return detail::mod4(a) / 2;
}

/// Region signs along a sequence of region crossing changes: the regions of `s`
/// in id order, each evaluated on the diagram left by the earlier changes.
inline std::vector<RegionSignData> region_sign_sequence(const Diagram& d, const RegionSelection& s) {
    std::vector<RegionSignData> out;
    Diagram cur = d;
    for (int f : s.members()) {
        out.push_back(region_signs(cur, f));
        cur = apply_regions(cur, RegionSelection::of(static_cast<std::size_t>(d.face_count()), {f}));
    }
    return out;
}

/// Arf(L) from a set of regions that trivializes the diagram: 0 when
/// Σ A(R_i) ≡ 0 (mod 4), 1 when ≡ 2, with the A(R_i) from
/// region_sign_sequence. Taking every A on the input diagram instead can go
/// wrong once two chosen regions share a crossing.
inline ArfValue arf_via_regions(const Diagram& d, const RegionSelection& s) {
    if (!is_proper(d))
        throw NotProperError("Arf invariant is only defined for proper links");
    if (!find_descending_ordering(apply_regions(d, s)))
        throw NotUnknottingError("regions do not turn the diagram into a descending one");
    int total = 0;
    for (const auto& step : region_sign_sequence(d, s))
        total += step.A;
    return {detail::mod4(total) / 2};
}

} // namespace rcc
