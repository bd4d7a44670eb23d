#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "rcc/diagram.hpp"
#include "rcc/errors.hpp"
#include "rcc/region_solver.hpp"
#include "rcc/selection.hpp"

namespace rcc {

/// Where and which way to start walking one component.
struct BasePoint {
    int component = 0;
    int arc = 0; // arc id on that component
    bool forward = true;

    friend bool operator==(const BasePoint&, const BasePoint&) = default;
};

/// Components in the order they are walked, each with its own base point.
struct BasePointOrdering {
    std::vector<BasePoint> order;

    friend bool operator==(const BasePointOrdering&, const BasePointOrdering&) = default;
};

/// Components in index order, each from its lowest arc id, walking forward.
inline BasePointOrdering default_ordering(const Diagram& d) {
    BasePointOrdering ord;
    for (int k = 0; k < d.component_count(); ++k) {
        const auto& arcs = d.component_arcs(k);
        ord.order.push_back({k, arcs.empty() ? 0 : *std::min_element(arcs.begin(), arcs.end()), true});
    }
    return ord;
}

inline void validate_ordering(const Diagram& d, const BasePointOrdering& ord) {
    const int n = d.component_count();
    if (static_cast<int>(ord.order.size()) != n)
        throw OrderingError("ordering lists " + std::to_string(ord.order.size()) + " components, diagram has " +
                            std::to_string(n));
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (const auto& bp : ord.order) {
        if (bp.component < 0 || bp.component >= n || seen[static_cast<std::size_t>(bp.component)])
            throw OrderingError("component " + std::to_string(bp.component) + " missing or repeated");
        seen[static_cast<std::size_t>(bp.component)] = 1;
        if (d.crossing_count() > 0 && (bp.arc < 0 || bp.arc >= d.arc_count() || d.arc_component(bp.arc) != bp.component))
            throw OrderingError("arc " + std::to_string(bp.arc) + " is not on component " + std::to_string(bp.component));
    }
}

namespace detail {

// Calls visit(crossing, on_over) for each crossing passage along one component.
template <class Visit>
void walk_component(const Diagram& d, const BasePoint& bp, Visit&& visit) {
    if (d.crossing_count() == 0)
        return;
    int arc = bp.arc;
    do {
        const Slot end = bp.forward ? d.arc_head(arc) : d.arc_tail(arc);
        visit(end.crossing, d.is_over_slot(end.crossing, end.slot));
        arc = d.arc_at(end.crossing, end.slot + 2);
    } while (arc != bp.arc);
}

} // namespace detail

/// Crossings first met on their under-strand when walking the components in
/// order. Flipping exactly these makes the diagram descending.
inline CrossingSelection descending_selection(const Diagram& d, const BasePointOrdering& ord) {
    validate_ordering(d, ord);
    CrossingSelection sel(static_cast<std::size_t>(d.crossing_count()));
    std::vector<char> visited(static_cast<std::size_t>(d.crossing_count()), 0);
    for (const auto& bp : ord.order)
        detail::walk_component(d, bp, [&](int x, bool over) {
            if (!visited[static_cast<std::size_t>(x)]) {
                visited[static_cast<std::size_t>(x)] = 1;
                if (!over)
                    sel.insert(x);
            }
        });
    return sel;
}

/// Every crossing is first met on its over-strand. Such a diagram is a trivial link.
inline bool is_descending(const Diagram& d, const BasePointOrdering& ord) {
    return descending_selection(d, ord).empty();
}

/// Searches for an ordering that certifies `d` descending. Self-crossings only
/// depend on a component's own base point and direction; crossings between
/// components require the over component to come first, so a valid component
/// order is a topological order of the over-to-under relation.
inline std::optional<BasePointOrdering> find_descending_ordering(const Diagram& d) {
    const int n = d.component_count();
    std::vector<BasePoint> base(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        bool found = d.crossing_count() == 0 || d.component_arcs(k).empty();
        for (int arc : d.component_arcs(k)) {
            for (bool forward : {true, false}) {
                std::vector<char> seen(static_cast<std::size_t>(d.crossing_count()), 0);
                bool ok = true;
                detail::walk_component(d, {k, arc, forward}, [&](int x, bool over) {
                    if (!d.is_self_crossing(x) || seen[static_cast<std::size_t>(x)])
                        return;
                    seen[static_cast<std::size_t>(x)] = 1;
                    ok = ok && over;
                });
                if (ok) {
                    base[static_cast<std::size_t>(k)] = {k, arc, forward};
                    found = true;
                    break;
                }
            }
            if (found)
                break;
        }
        if (!found)
            return std::nullopt;
        if (d.crossing_count() == 0)
            base[static_cast<std::size_t>(k)] = {k, 0, true};
    }

    std::vector<std::vector<int>> below(static_cast<std::size_t>(n));
    std::vector<int> indegree(static_cast<std::size_t>(n), 0);
    for (int x = 0; x < d.crossing_count(); ++x)
        if (!d.is_self_crossing(x)) {
            below[static_cast<std::size_t>(d.over_component(x))].push_back(d.under_component(x));
            ++indegree[static_cast<std::size_t>(d.under_component(x))];
        }
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (int k = 0; k < n; ++k)
        if (indegree[static_cast<std::size_t>(k)] == 0)
            ready.push(k);
    BasePointOrdering ord;
    while (!ready.empty()) {
        const int k = ready.top();
        ready.pop();
        ord.order.push_back(base[static_cast<std::size_t>(k)]);
        for (int m : below[static_cast<std::size_t>(k)])
            if (--indegree[static_cast<std::size_t>(m)] == 0)
                ready.push(m);
    }
    if (static_cast<int>(ord.order.size()) != n)
        return std::nullopt;
    return ord;
}

struct UnknottingPlan {
    BasePointOrdering ordering;
    CrossingSelection crossings;
    RegionSelection regions;
};

/// Regions whose crossing changes turn a proper diagram into a descending one
/// under `ord`. Throws NotProperError when no such regions can exist.
inline UnknottingPlan unknot_plan(const Diagram& d, const BasePointOrdering& ord, bool minimal = false) {
    if (!is_proper(d))
        throw NotProperError("some component has odd total linking number with the others");
    auto q = descending_selection(d, ord);
    auto s = minimal ? minimal_regions(d, q) : solve_regions(d, q);
    if (!s)
        throw std::logic_error("descending selection of a proper diagram is not admissible");
    return {ord, std::move(q), std::move(*s)};
}

inline RegionSelection unknot_regions(const Diagram& d, const BasePointOrdering& ord, bool minimal = false) {
    return unknot_plan(d, ord, minimal).regions;
}

inline RegionSelection unknot_regions(const Diagram& d) { return unknot_regions(d, default_ordering(d)); }

} // namespace rcc
