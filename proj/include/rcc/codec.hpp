#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rcc/errors.hpp"

namespace rcc {

/// One crossing of an oriented PD code.
///
/// `ends` lists the four arc labels in counterclockwise order around the
/// crossing, starting at the incoming under-strand; so ends[0] is under-in and
/// ends[2] is under-out. The over-strand occupies slots 1 and 3 and
/// `over_in_slot` says which of them is incoming.
struct PDCrossing {
    std::array<int, 4> ends{};
    int over_in_slot = 1;

    int under_in() const noexcept { return ends[0]; }
    int under_out() const noexcept { return ends[2]; }
    int over_in() const noexcept { return ends[static_cast<std::size_t>(over_in_slot)]; }
    int over_out() const noexcept { return ends[static_cast<std::size_t>(over_in_slot ^ 2)]; }

    friend bool operator==(const PDCrossing&, const PDCrossing&) = default;
};

struct OrientedPDCode {
    std::vector<PDCrossing> crossings;

    std::size_t size() const noexcept { return crossings.size(); }
    bool empty() const noexcept { return crossings.empty(); }

    friend bool operator==(const OrientedPDCode&, const OrientedPDCode&) = default;
};

namespace detail {

inline bool is_in_slot(const PDCrossing& x, int slot) { return slot == 0 || slot == x.over_in_slot; }

// Label multiset must be {1..2c} doubled; under and over pairs must not close on themselves.
inline void check_labels(const std::vector<PDCrossing>& xs) {
    const int arcs = static_cast<int>(2 * xs.size());
    std::vector<int> seen(static_cast<std::size_t>(arcs) + 1, 0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (int label : xs[i].ends) {
            if (label < 1 || label > arcs)
                throw LabelError("label " + std::to_string(label) + " at crossing " + std::to_string(i) +
                                 " outside 1.." + std::to_string(arcs));
            if (++seen[static_cast<std::size_t>(label)] > 2)
                throw LabelError("label " + std::to_string(label) + " appears more than twice");
        }
    }
    for (int label = 1; label <= arcs; ++label)
        if (seen[static_cast<std::size_t>(label)] != 2)
            throw LabelError("label " + std::to_string(label) + " appears " +
                             std::to_string(seen[static_cast<std::size_t>(label)]) + " times, expected 2");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto& e = xs[i].ends;
        if (e[0] == e[2])
            throw DegenerateError("crossing " + std::to_string(i) + " joins its own under-strand ends");
        if (e[1] == e[3])
            throw DegenerateError("crossing " + std::to_string(i) + " joins its own over-strand ends");
    }
}

// Each label must be incoming at exactly one end and outgoing at the other.
inline void check_orientation(const std::vector<PDCrossing>& xs) {
    std::vector<int> ins(2 * xs.size() + 1, 0);
    for (const auto& x : xs) {
        if (x.over_in_slot != 1 && x.over_in_slot != 3)
            throw LabelError("over_in_slot must be 1 or 3");
        for (int s = 0; s < 4; ++s)
            if (is_in_slot(x, s))
                ++ins[static_cast<std::size_t>(x.ends[static_cast<std::size_t>(s)])];
    }
    for (std::size_t label = 1; label < ins.size(); ++label)
        if (ins[label] != 1)
            throw LabelError("arc " + std::to_string(label) + " is incoming at " + std::to_string(ins[label]) +
                             " ends, expected exactly 1");
}

// Fixes over_in_slot for every crossing from the arc orientations forced by the
// under-strands. A component that never passes under anything has no forced
// orientation; it is oriented so that its smallest label runs from the
// earlier-listed crossing to the later one.
inline void resolve_over_strands(std::vector<PDCrossing>& xs) {
    const std::size_t c = xs.size();
    // Both ends of every label as (crossing, slot).
    std::vector<std::array<std::pair<int, int>, 2>> where(2 * c + 1);
    std::vector<int> fill(2 * c + 1, 0);
    for (std::size_t i = 0; i < c; ++i)
        for (int s = 0; s < 4; ++s) {
            const auto label = static_cast<std::size_t>(xs[i].ends[static_cast<std::size_t>(s)]);
            where[label][static_cast<std::size_t>(fill[label]++)] = {static_cast<int>(i), s};
        }

    std::vector<int> state(c, 0); // 0 unknown, otherwise the incoming over slot
    std::vector<int> queue;

    auto role = [&](int crossing, int slot) -> int { // 1 in, -1 out, 0 unknown
        if (slot == 0)
            return 1;
        if (slot == 2)
            return -1;
        const int st = state[static_cast<std::size_t>(crossing)];
        if (st == 0)
            return 0;
        return slot == st ? 1 : -1;
    };
    auto assign = [&](int crossing, int slot, bool incoming) {
        const int want = incoming ? slot : (slot ^ 2);
        int& st = state[static_cast<std::size_t>(crossing)];
        if (st == 0) {
            st = want;
            queue.push_back(crossing);
        } else if (st != want) {
            throw LabelError("inconsistent orientation of the over-strand at crossing " + std::to_string(crossing));
        }
    };
    auto partner = [&](int crossing, int slot) {
        const auto label = static_cast<std::size_t>(xs[static_cast<std::size_t>(crossing)].ends[static_cast<std::size_t>(slot)]);
        const auto& w = where[label];
        return w[0] == std::make_pair(crossing, slot) ? w[1] : w[0];
    };
    auto propagate = [&]() {
        while (!queue.empty()) {
            const int i = queue.back();
            queue.pop_back();
            for (int s : {1, 3}) {
                const auto [j, t] = partner(i, s);
                const int r = role(i, s);
                const int other = role(j, t);
                if (other == 0)
                    assign(j, t, r < 0);
                else if (other == r)
                    throw LabelError("arc " + std::to_string(xs[static_cast<std::size_t>(i)].ends[static_cast<std::size_t>(s)]) +
                                     " has two " + (r > 0 ? "incoming" : "outgoing") + " ends");
            }
        }
    };

    for (std::size_t label = 1; label <= 2 * c; ++label) {
        const auto [a, b] = where[label];
        const int ra = role(a.first, a.second);
        const int rb = role(b.first, b.second);
        if (ra != 0 && rb != 0) {
            if (ra == rb)
                throw LabelError("arc " + std::to_string(label) + " has two " + (ra > 0 ? "incoming" : "outgoing") + " ends");
        } else if (ra != 0) {
            assign(b.first, b.second, ra < 0);
        } else if (rb != 0) {
            assign(a.first, a.second, rb < 0);
        }
    }
    propagate();

    for (std::size_t label = 1; label <= 2 * c; ++label) {
        const auto [a, b] = where[label];
        if (a.second % 2 == 0 || state[static_cast<std::size_t>(a.first)] != 0)
            continue;
        // Labels are scanned in increasing order, so this is the smallest label
        // of a component that never passes under.
        const auto tail = a.first <= b.first ? a : b;
        assign(tail.first, tail.second, false);
        propagate();
    }

    for (std::size_t i = 0; i < c; ++i)
        xs[i].over_in_slot = state[i];
}

class Scanner {
public:
    explicit Scanner(std::string_view text) : text_(text) {}

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool done() {
        skip_space();
        return pos_ == text_.size();
    }

    bool accept(std::string_view token) {
        skip_space();
        if (text_.substr(pos_, token.size()) == token) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view token) {
        if (!accept(token))
            throw SyntaxError("expected '" + std::string(token) + "'", pos_);
    }

    int integer() {
        skip_space();
        int value = 0;
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr == first)
            throw SyntaxError("expected integer", pos_);
        pos_ += static_cast<std::size_t>(ptr - first);
        return value;
    }

    std::size_t position() const noexcept { return pos_; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Validates a code whose crossings already carry explicit over-strand directions.
inline OrientedPDCode make_code(std::vector<PDCrossing> crossings) {
    detail::check_labels(crossings);
    detail::check_orientation(crossings);
    return OrientedPDCode{std::move(crossings)};
}

/// Parses `X(a,b,c,d)` terms separated by whitespace or commas, optionally wrapped in `PD[...]`.
/// Each term lists arc labels counterclockwise from the incoming under-strand. The empty
/// string (or `PD[]`) is the 0-crossing unknot.
inline OrientedPDCode parse_pd(std::string_view text) {
    detail::Scanner in(text);
    std::vector<PDCrossing> xs;
    const bool wrapped = in.accept("PD[");
    bool first = true;
    while (true) {
        if (wrapped) {
            if (in.accept("]"))
                break;
        } else if (in.done()) {
            break;
        }
        if (!first)
            in.accept(",");
        first = false;
        in.expect("X(");
        PDCrossing x;
        for (std::size_t s = 0; s < 4; ++s) {
            if (s > 0)
                in.expect(",");
            x.ends[s] = in.integer();
        }
        in.expect(")");
        xs.push_back(x);
    }
    if (!in.done())
        throw SyntaxError("trailing characters", in.position());

    detail::check_labels(xs);
    detail::resolve_over_strands(xs);
    detail::check_orientation(xs);
    return OrientedPDCode{std::move(xs)};
}

inline std::string serialize_pd(const OrientedPDCode& code) {
    std::string out;
    for (const auto& x : code.crossings) {
        if (!out.empty())
            out += ' ';
        out += "X(";
        for (std::size_t s = 0; s < 4; ++s) {
            if (s > 0)
                out += ',';
            out += std::to_string(x.ends[s]);
        }
        out += ')';
    }
    return out;
}

struct CatalogEntry {
    std::string name;
    OrientedPDCode code;
    std::size_t line = 0;
};

struct CatalogDiagnostic {
    std::size_t line = 0;
    std::string message;
};

struct Catalog {
    std::vector<CatalogEntry> entries;
    std::vector<CatalogDiagnostic> diagnostics;
};

/// Reads newline-delimited `{"name": ..., "pd": ...}` records. Bad records are
/// reported with their 1-based line number and skipped; blank lines are ignored.
inline Catalog load_catalog(std::istream& in) {
    Catalog cat;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (std::all_of(line.begin(), line.end(), [](unsigned char ch) { return std::isspace(ch); }))
            continue;
        try {
            const auto record = nlohmann::json::parse(line);
            if (!record.is_object() || !record.contains("name") || !record.contains("pd") ||
                !record["name"].is_string() || !record["pd"].is_string())
                throw Error("record needs string fields \"name\" and \"pd\"");
            cat.entries.push_back({record["name"].get<std::string>(), parse_pd(record["pd"].get<std::string>()), lineno});
        } catch (const nlohmann::json::exception& e) {
            cat.diagnostics.push_back({lineno, std::string("malformed JSON: ") + e.what()});
        } catch (const Error& e) {
            cat.diagnostics.push_back({lineno, e.what()});
        }
    }
    if (in.bad())
        throw IoError("read failure after line " + std::to_string(lineno));
    return cat;
}

inline Catalog load_catalog(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path.string());
    return load_catalog(in);
}

} // namespace rcc
