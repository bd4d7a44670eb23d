#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "rcc/codec.hpp"
#include "rcc/errors.hpp"
#include "rcc/selection.hpp"

namespace rcc {

enum class Color : std::uint8_t { black = 0, white = 1 };

constexpr Color opposite(Color c) noexcept { return c == Color::black ? Color::white : Color::black; }

/// An arc end at a crossing; slots are numbered 0..3 counterclockwise.
struct Slot {
    int crossing = -1;
    int slot = -1;

    friend bool operator==(const Slot&, const Slot&) = default;
};

/// Quadrant q of a crossing is the corner between slot q and slot q+1 (mod 4).
struct Corner {
    int crossing = -1;
    int quadrant = -1;

    friend bool operator==(const Corner&, const Corner&) = default;
};

/// A face of the plane minus the diagram.
struct Region {
    int id = -1;
    std::vector<int> crossings; // sorted, each incident crossing once
    std::vector<Corner> corners;

    bool touches(int crossing) const { return std::binary_search(crossings.begin(), crossings.end(), crossing); }
};

/// Pairwise linking numbers; the diagonal is zero and unused.
struct LinkingMatrix {
    int n = 0;
    std::vector<int> values;

    int at(int i, int j) const { return values[static_cast<std::size_t>(i * n + j)]; }

    /// (Σ_{j≠i} lk(K_i, K_j)) mod 2 for each component.
    std::vector<int> total_parity() const {
        std::vector<int> out(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (j != i)
                    out[static_cast<std::size_t>(i)] ^= at(i, j) & 1;
        return out;
    }

    friend bool operator==(const LinkingMatrix&, const LinkingMatrix&) = default;
};

/// Immutable combinatorial planar map of a connected link diagram.
///
/// Arc ids are code labels minus one. Faces come from the counterclockwise
/// rotation system; the unbounded face is not distinguished. `color()` is the
/// canonical checkerboard coloring, with face 0 black.
class Diagram {
public:
    int crossing_count() const noexcept { return static_cast<int>(crossings_.size()); }
    int arc_count() const noexcept { return static_cast<int>(arcs_.size()); }
    int component_count() const noexcept { return static_cast<int>(components_.size()); }
    int face_count() const noexcept { return static_cast<int>(faces_.size()); }

    int arc_at(int crossing, int slot) const { return x(crossing).arcs[static_cast<std::size_t>(slot & 3)]; }
    int under_in_slot(int crossing) const { return x(crossing).under_in; }
    int over_in_slot(int crossing) const { return x(crossing).over_in; }
    bool is_over_slot(int crossing, int slot) const { return ((slot - x(crossing).over_in) & 1) == 0; }

    /// +1 when the over-strand, turned a quarter counterclockwise, points along the under-strand.
    int sign(int crossing) const {
        const auto& d = x(crossing);
        return d.over_in == ((d.under_in + 3) & 3) ? 1 : -1;
    }

    int under_component(int crossing) const { return arcs_[static_cast<std::size_t>(arc_at(crossing, under_in_slot(crossing)))].component; }
    int over_component(int crossing) const { return arcs_[static_cast<std::size_t>(arc_at(crossing, over_in_slot(crossing)))].component; }
    bool is_self_crossing(int crossing) const { return under_component(crossing) == over_component(crossing); }

    Slot arc_tail(int arc) const { return arcs_[static_cast<std::size_t>(arc)].tail; }
    Slot arc_head(int arc) const { return arcs_[static_cast<std::size_t>(arc)].head; }
    int arc_component(int arc) const { return arcs_[static_cast<std::size_t>(arc)].component; }

    /// Arcs of component k in traversal order, starting at its lowest arc id.
    const std::vector<int>& component_arcs(int k) const { return components_[static_cast<std::size_t>(k)]; }

    const std::vector<Region>& faces() const noexcept { return faces_; }
    const Region& face(int f) const { return faces_[static_cast<std::size_t>(f)]; }
    int face_at(int crossing, int quadrant) const { return quadrant_face_[static_cast<std::size_t>(4 * crossing + (quadrant & 3))]; }

    Color color(int f) const { return coloring_[static_cast<std::size_t>(f)]; }
    const std::vector<Color>& coloring() const noexcept { return coloring_; }

    friend Diagram build_diagram(const OrientedPDCode& code);
    friend Diagram flip_crossings(const Diagram& d, const CrossingSelection& sel);

private:
    struct CrossingData {
        std::array<int, 4> arcs{};
        int under_in = 0;
        int over_in = 1;
    };
    struct ArcData {
        Slot tail;
        Slot head;
        int component = -1;
    };

    const CrossingData& x(int crossing) const { return crossings_[static_cast<std::size_t>(crossing)]; }

    std::vector<CrossingData> crossings_;
    std::vector<ArcData> arcs_;
    std::vector<std::vector<int>> components_;
    std::vector<Region> faces_;
    std::vector<int> quadrant_face_;
    std::vector<Color> coloring_;
};

/// Builds the planar map. Throws SplitError for a disconnected diagram and
/// NonPlanarError when the rotation system does not close up with c+2 faces.
/// The empty code gives the 0-crossing unknot: one component, two faces.
inline Diagram build_diagram(const OrientedPDCode& code) {
    Diagram d;
    const int c = static_cast<int>(code.size());
    if (c == 0) {
        d.components_.emplace_back();
        d.faces_ = {Region{0, {}, {}}, Region{1, {}, {}}};
        d.coloring_ = {Color::black, Color::white};
        return d;
    }

    d.crossings_.resize(static_cast<std::size_t>(c));
    d.arcs_.resize(static_cast<std::size_t>(2 * c));
    for (int i = 0; i < c; ++i) {
        const auto& px = code.crossings[static_cast<std::size_t>(i)];
        auto& cx = d.crossings_[static_cast<std::size_t>(i)];
        cx.under_in = 0;
        cx.over_in = px.over_in_slot;
        for (int s = 0; s < 4; ++s) {
            const int arc = px.ends[static_cast<std::size_t>(s)] - 1;
            cx.arcs[static_cast<std::size_t>(s)] = arc;
            const bool incoming = s == 0 || s == px.over_in_slot;
            (incoming ? d.arcs_[static_cast<std::size_t>(arc)].head : d.arcs_[static_cast<std::size_t>(arc)].tail) = Slot{i, s};
        }
    }

    // Components: follow each arc into its head crossing and straight through.
    for (int start = 0; start < 2 * c; ++start) {
        if (d.arcs_[static_cast<std::size_t>(start)].component >= 0)
            continue;
        const int k = static_cast<int>(d.components_.size());
        auto& comp = d.components_.emplace_back();
        for (int a = start; d.arcs_[static_cast<std::size_t>(a)].component < 0;) {
            d.arcs_[static_cast<std::size_t>(a)].component = k;
            comp.push_back(a);
            const Slot h = d.arcs_[static_cast<std::size_t>(a)].head;
            a = d.arc_at(h.crossing, h.slot + 2);
        }
    }

    // Connectivity of the underlying 4-valent graph.
    {
        std::vector<int> parent(static_cast<std::size_t>(c));
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int v) {
            while (parent[static_cast<std::size_t>(v)] != v)
                v = parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            return v;
        };
        int pieces = c;
        for (const auto& arc : d.arcs_) {
            const int a = find(arc.tail.crossing), b = find(arc.head.crossing);
            if (a != b) {
                parent[static_cast<std::size_t>(a)] = b;
                --pieces;
            }
        }
        if (pieces != 1)
            throw SplitError("diagram has " + std::to_string(pieces) + " disconnected pieces");
    }

    // Faces: leave through a slot, arrive at the far end of the arc, turn to the clockwise neighbour.
    d.quadrant_face_.assign(static_cast<std::size_t>(4 * c), -1);
    std::vector<char> used(static_cast<std::size_t>(4 * c), 0);
    for (int dart = 0; dart < 4 * c; ++dart) {
        if (used[static_cast<std::size_t>(dart)])
            continue;
        Region r;
        r.id = static_cast<int>(d.faces_.size());
        for (Slot cur{dart / 4, dart % 4}; !used[static_cast<std::size_t>(4 * cur.crossing + cur.slot)];) {
            used[static_cast<std::size_t>(4 * cur.crossing + cur.slot)] = 1;
            const auto& arc = d.arcs_[static_cast<std::size_t>(d.arc_at(cur.crossing, cur.slot))];
            const Slot far = arc.tail == cur ? arc.head : arc.tail;
            const Corner corner{far.crossing, (far.slot + 3) & 3};
            r.corners.push_back(corner);
            d.quadrant_face_[static_cast<std::size_t>(4 * corner.crossing + corner.quadrant)] = r.id;
            cur = Slot{far.crossing, corner.quadrant};
        }
        for (const auto& corner : r.corners)
            r.crossings.push_back(corner.crossing);
        std::sort(r.crossings.begin(), r.crossings.end());
        r.crossings.erase(std::unique(r.crossings.begin(), r.crossings.end()), r.crossings.end());
        d.faces_.push_back(std::move(r));
    }
    if (d.face_count() != c + 2)
        throw NonPlanarError("rotation system has " + std::to_string(d.face_count()) + " faces, expected " +
                             std::to_string(c + 2));

    // Checkerboard: quadrants on either side of an edge get opposite colours.
    std::vector<int> color(d.faces_.size(), -1);
    std::vector<std::vector<int>> adjacent(d.faces_.size());
    for (int i = 0; i < c; ++i)
        for (int q = 0; q < 4; ++q) {
            const int f = d.face_at(i, q), g = d.face_at(i, q + 1);
            adjacent[static_cast<std::size_t>(f)].push_back(g);
            adjacent[static_cast<std::size_t>(g)].push_back(f);
        }
    color[0] = 0;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        const int f = stack.back();
        stack.pop_back();
        for (int g : adjacent[static_cast<std::size_t>(f)]) {
            if (color[static_cast<std::size_t>(g)] < 0) {
                color[static_cast<std::size_t>(g)] = 1 - color[static_cast<std::size_t>(f)];
                stack.push_back(g);
            } else if (color[static_cast<std::size_t>(g)] == color[static_cast<std::size_t>(f)]) {
                throw NonPlanarError("faces admit no checkerboard colouring");
            }
        }
    }
    for (int col : color)
        d.coloring_.push_back(col == 0 ? Color::black : Color::white);
    return d;
}

inline int crossing_sign(const Diagram& d, int crossing) { return d.sign(crossing); }

inline int writhe(const Diagram& d) {
    int w = 0;
    for (int i = 0; i < d.crossing_count(); ++i)
        w += d.sign(i);
    return w;
}

/// Same 4-valent map with over and under exchanged at every selected crossing.
inline Diagram flip_crossings(const Diagram& d, const CrossingSelection& sel) {
    assert(static_cast<int>(sel.size()) == d.crossing_count());
    Diagram out = d;
    for (int i : sel.members()) {
        auto& cx = out.crossings_[static_cast<std::size_t>(i)];
        std::swap(cx.under_in, cx.over_in);
    }
    return out;
}

inline Diagram mirror(const Diagram& d) {
    return flip_crossings(d, CrossingSelection::all(static_cast<std::size_t>(d.crossing_count())));
}

inline LinkingMatrix linking_matrix(const Diagram& d) {
    const int n = d.component_count();
    LinkingMatrix lk{n, std::vector<int>(static_cast<std::size_t>(n * n), 0)};
    for (int i = 0; i < d.crossing_count(); ++i) {
        const int a = d.under_component(i), b = d.over_component(i);
        if (a == b)
            continue;
        lk.values[static_cast<std::size_t>(a * n + b)] += d.sign(i);
        lk.values[static_cast<std::size_t>(b * n + a)] += d.sign(i);
    }
    for (int& v : lk.values) {
        if (v % 2 != 0)
            throw std::logic_error("odd signed count between two components");
        v /= 2;
    }
    return lk;
}

/// Every component links the rest an even number of times in total.
inline bool is_proper(const Diagram& d) {
    const auto parity = linking_matrix(d).total_parity();
    return std::all_of(parity.begin(), parity.end(), [](int p) { return p == 0; });
}

/// Checkerboard colouring with `white_face` white.
inline std::vector<Color> checkerboard(const Diagram& d, int white_face) {
    if (white_face < 0 || white_face >= d.face_count())
        throw std::out_of_range("face id " + std::to_string(white_face));
    auto out = d.coloring();
    if (out[static_cast<std::size_t>(white_face)] != Color::white)
        for (auto& col : out)
            col = opposite(col);
    return out;
}

/// Code for `d` with arcs relabelled along the components. Each component is
/// numbered from an arc whose tail crossing precedes its head crossing when it
/// never passes under, so `parse_pd(serialize_pd(to_code(d)))` recovers every
/// orientation.
inline OrientedPDCode to_code(const Diagram& d) {
    const int c = d.crossing_count();
    std::vector<int> label(static_cast<std::size_t>(d.arc_count()), 0);
    int next = 1;
    for (int k = 0; k < d.component_count(); ++k) {
        const auto& arcs = d.component_arcs(k);
        const bool passes_under = std::any_of(arcs.begin(), arcs.end(), [&](int a) {
            const Slot h = d.arc_head(a);
            return !d.is_over_slot(h.crossing, h.slot);
        });
        std::size_t start = 0;
        if (!passes_under) {
            for (std::size_t t = 0; t < arcs.size(); ++t)
                if (d.arc_tail(arcs[t]).crossing < d.arc_head(arcs[t]).crossing) {
                    start = t;
                    break;
                }
        }
        for (std::size_t t = 0; t < arcs.size(); ++t)
            label[static_cast<std::size_t>(arcs[(start + t) % arcs.size()])] = next++;
    }

    std::vector<PDCrossing> xs(static_cast<std::size_t>(c));
    for (int i = 0; i < c; ++i) {
        const int ui = d.under_in_slot(i);
        auto& px = xs[static_cast<std::size_t>(i)];
        for (int s = 0; s < 4; ++s)
            px.ends[static_cast<std::size_t>(s)] = label[static_cast<std::size_t>(d.arc_at(i, ui + s))];
        px.over_in_slot = (d.over_in_slot(i) - ui + 4) & 3;
    }
    return make_code(std::move(xs));
}

/// Oriented smoothing of an inter-component crossing: under-in joins over-out
/// and over-in joins under-out. The result has one crossing and one component fewer.
inline Diagram smooth_crossing(const Diagram& d, int crossing) {
    if (crossing < 0 || crossing >= d.crossing_count())
        throw std::out_of_range("crossing id " + std::to_string(crossing));
    if (d.is_self_crossing(crossing))
        throw SelfCrossingError("crossing " + std::to_string(crossing) + " joins a component to itself");

    const int ui = d.under_in_slot(crossing), oi = d.over_in_slot(crossing);
    // Arc ending at under-in continues as the arc leaving over-out, and so on.
    std::vector<int> merged(static_cast<std::size_t>(d.arc_count()));
    std::iota(merged.begin(), merged.end(), 0);
    merged[static_cast<std::size_t>(d.arc_at(crossing, oi + 2))] = d.arc_at(crossing, ui);
    merged[static_cast<std::size_t>(d.arc_at(crossing, ui + 2))] = d.arc_at(crossing, oi);

    std::vector<int> label(static_cast<std::size_t>(d.arc_count()), 0);
    int next = 1;
    for (int a = 0; a < d.arc_count(); ++a)
        if (merged[static_cast<std::size_t>(a)] == a)
            label[static_cast<std::size_t>(a)] = next++;
    for (int a = 0; a < d.arc_count(); ++a)
        label[static_cast<std::size_t>(a)] = label[static_cast<std::size_t>(merged[static_cast<std::size_t>(a)])];

    std::vector<PDCrossing> xs;
    for (int i = 0; i < d.crossing_count(); ++i) {
        if (i == crossing)
            continue;
        const int u = d.under_in_slot(i);
        PDCrossing px;
        for (int s = 0; s < 4; ++s)
            px.ends[static_cast<std::size_t>(s)] = label[static_cast<std::size_t>(d.arc_at(i, u + s))];
        px.over_in_slot = (d.over_in_slot(i) - u + 4) & 3;
        xs.push_back(px);
    }
    return build_diagram(make_code(std::move(xs)));
}

} // namespace rcc
