#pragma once

// `rcc` command line: info, solve, unknot, arf, verify. JSON goes to `out`,
// a one-line-per-diagram summary to `err`.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <future>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rcc/arf.hpp"
#include "rcc/codec.hpp"
#include "rcc/diagram.hpp"
#include "rcc/errors.hpp"
#include "rcc/region_solver.hpp"
#include "rcc/unknotter.hpp"
#include "suites.hpp"

namespace rcc::cli {

using json = nlohmann::ordered_json;

enum Exit { ok = 0, refused = 1, bad_input = 2 };

/// Input problem the user has to fix (bad flag value, out-of-range id).
class InputError : public Error {
public:
    using Error::Error;
};

/// A well-formed request the theory says cannot be met.
class Refusal : public Error {
public:
    Refusal(std::string kind, const std::string& what) : Error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

inline std::string error_name(const std::exception& e) {
    if (auto r = dynamic_cast<const Refusal*>(&e))
        return r->kind();
    if (dynamic_cast<const SyntaxError*>(&e))
        return "SyntaxError";
    if (dynamic_cast<const LabelError*>(&e))
        return "LabelError";
    if (dynamic_cast<const DegenerateError*>(&e))
        return "DegenerateError";
    if (dynamic_cast<const NonPlanarError*>(&e))
        return "NonPlanarError";
    if (dynamic_cast<const SplitError*>(&e))
        return "SplitError";
    if (dynamic_cast<const NotProperError*>(&e))
        return "NotProperError";
    if (dynamic_cast<const OrderingError*>(&e))
        return "OrderingError";
    if (dynamic_cast<const TooLargeError*>(&e))
        return "TooLargeError";
    if (dynamic_cast<const IoError*>(&e))
        return "IoError";
    if (dynamic_cast<const InputError*>(&e))
        return "InputError";
    return "Error";
}

inline bool is_refusal(const std::exception& e) {
    return dynamic_cast<const Refusal*>(&e) || dynamic_cast<const NotProperError*>(&e) ||
           dynamic_cast<const TooLargeError*>(&e);
}

struct Options {
    std::string pd;
    std::string catalog;
    bool minimal = false;
    std::string q;
    std::string ordering;
    int jobs = 1;
    int max_crossings = -1;
};

struct Input {
    std::string name;
    std::string where; // "file:line" or "--pd"
    std::optional<OrientedPDCode> code;
    std::string error;      // set when the record could not be parsed
    std::string error_type;
};

inline std::vector<int> parse_int_list(const std::string& text, const char* flag) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find(',', pos);
        if (end == std::string::npos)
            end = text.size();
        std::string item = text.substr(pos, end - pos);
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (!item.empty()) {
            int v = 0;
            auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
            if (ec != std::errc() || p != item.data() + item.size())
                throw InputError(std::string(flag) + ": not an integer: '" + item + "'");
            out.push_back(v);
        }
        pos = end + 1;
    }
    return out;
}

/// "comp[:arcLabel][+|-],..." with 0-based components and 1-based arc labels.
inline BasePointOrdering parse_ordering(const std::string& text, const Diagram& d) {
    BasePointOrdering ord;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find(',', pos);
        if (end == std::string::npos)
            end = text.size();
        std::string item = text.substr(pos, end - pos);
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        pos = end + 1;
        if (item.empty())
            continue;
        BasePoint bp;
        if (item.back() == '+' || item.back() == '-') {
            bp.forward = item.back() == '+';
            item.pop_back();
        }
        const auto colon = item.find(':');
        const auto comp = parse_int_list(item.substr(0, colon), "--ordering");
        if (comp.size() != 1)
            throw InputError("--ordering: bad entry '" + item + "'");
        bp.component = comp[0];
        if (bp.component < 0 || bp.component >= d.component_count())
            throw InputError("--ordering: no component " + std::to_string(bp.component));
        if (colon != std::string::npos) {
            const auto label = parse_int_list(item.substr(colon + 1), "--ordering");
            if (label.size() != 1 || label[0] < 1 || label[0] > d.arc_count())
                throw InputError("--ordering: bad arc label in '" + item + "'");
            bp.arc = label[0] - 1;
        } else {
            const auto& arcs = d.component_arcs(bp.component);
            bp.arc = arcs.empty() ? 0 : *std::min_element(arcs.begin(), arcs.end());
        }
        ord.order.push_back(bp);
    }
    validate_ordering(d, ord);
    return ord;
}

inline json members(const RegionSelection& s) { return s.members(); }
inline json members(const CrossingSelection& s) { return s.members(); }

inline json header(const Input& in, const Diagram& d) {
    json j;
    j["diagram"] = in.name;
    j["c"] = d.crossing_count();
    j["n"] = d.component_count();
    j["faces"] = d.face_count();
    j["rank"] = gf2::rank(incidence_matrix(d).matrix);
    j["proper"] = is_proper(d);
    return j;
}

inline void info_payload(json& j, const Diagram& d) {
    j["writhe"] = writhe(d);
    std::vector<int> signs;
    for (int x = 0; x < d.crossing_count(); ++x)
        signs.push_back(d.sign(x));
    j["signs"] = signs;
    const auto lk = linking_matrix(d);
    json rows = json::array();
    for (int i = 0; i < lk.n; ++i) {
        std::vector<int> row;
        for (int k = 0; k < lk.n; ++k)
            row.push_back(i == k ? 0 : lk.at(i, k));
        rows.push_back(row);
    }
    j["linking"] = rows;
    json faces = json::array();
    for (const auto& f : d.faces())
        faces.push_back({{"id", f.id}, {"color", d.color(f.id) == Color::black ? "black" : "white"}, {"crossings", f.crossings}});
    j["regions"] = faces;
}

inline void solve_payload(json& j, const Diagram& d, const Options& opt) {
    const auto ids = parse_int_list(opt.q, "--q");
    CrossingSelection q(static_cast<std::size_t>(d.crossing_count()));
    for (int x : ids) {
        if (x < 0 || x >= d.crossing_count())
            throw InputError("--q: no crossing " + std::to_string(x));
        q.insert(x);
    }
    j["q"] = members(q);
    j["admissible"] = admissible_by_parity(d, q);
    const auto s = opt.minimal ? minimal_regions(d, q) : solve_regions(d, q);
    if (!s)
        throw Refusal("NotAdmissible", "no set of regions changes exactly the crossings " + suites::join(q.members()));
    j["minimal"] = opt.minimal;
    j["regions"] = members(*s);
    j["effect"] = members(region_effect(d, *s));
}

inline void unknot_payload(json& j, const Diagram& d, const Options& opt) {
    const auto ord = opt.ordering.empty() ? default_ordering(d) : parse_ordering(opt.ordering, d);
    const auto plan = unknot_plan(d, ord, opt.minimal);
    json order = json::array();
    for (const auto& bp : plan.ordering.order)
        order.push_back({{"component", bp.component},
                         {"arc", d.crossing_count() ? bp.arc + 1 : 0},
                         {"direction", bp.forward ? "+" : "-"}});
    j["ordering"] = order;
    j["crossings"] = members(plan.crossings);
    j["minimal"] = opt.minimal;
    j["regions"] = members(plan.regions);
    j["descending"] = is_descending(apply_regions(d, plan.regions), plan.ordering);
}

inline void arf_payload(json& j, const Diagram& d, const Options& opt) {
    if (!is_proper(d))
        throw NotProperError("Arf invariant is only defined for proper links");
    const auto ord = opt.ordering.empty() ? default_ordering(d) : parse_ordering(opt.ordering, d);
    const auto s = unknot_regions(d, ord, opt.minimal);
    json steps = json::array();
    int total = 0;
    for (const auto& r : region_sign_sequence(d, s)) {
        total += r.A;
        steps.push_back({{"region", r.region}, {"A", r.A}});
    }
    std::vector<int> a_values;
    for (int f = 0; f < d.face_count(); ++f)
        a_values.push_back(region_signs(d, f).A);
    j["regions"] = members(s);
    j["steps"] = steps;
    j["sum_A"] = total;
    j["arf_regions"] = arf_via_regions(d, s).bit;
    j["arf"] = arf_link(d).bit;
    j["determinant"] = link_determinant(d);
    j["region_A"] = a_values;
}

struct Result {
    json report;
    int exit = ok;
    std::string summary;
};

inline Result run_one(const std::string& command, const Input& in, const Options& opt) {
    Result r;
    if (!in.code) {
        r.report = {{"diagram", in.name}, {"error", {{"type", in.error_type}, {"message", in.where + ": " + in.error}}}};
        r.exit = bad_input;
        r.summary = in.where + ": " + in.error_type + ": " + in.error;
        return r;
    }
    std::optional<Diagram> d;
    try {
        d = build_diagram(*in.code);
        r.report = header(in, *d);
        auto& payload = r.report;
        if (command == "info")
            info_payload(payload, *d);
        else if (command == "solve")
            solve_payload(payload, *d, opt);
        else if (command == "unknot")
            unknot_payload(payload, *d, opt);
        else
            arf_payload(payload, *d, opt);
        r.summary = in.name + ": c=" + std::to_string(d->crossing_count()) + " n=" + std::to_string(d->component_count()) +
                    " faces=" + std::to_string(d->face_count()) + (is_proper(*d) ? " proper" : " not proper");
        if (payload.contains("regions") && command != "info")
            r.summary += " regions=" + payload["regions"].dump();
        if (payload.contains("arf"))
            r.summary += " arf=" + payload["arf"].dump();
    } catch (const Error& e) {
        if (r.report.is_null())
            r.report = {{"diagram", in.name}};
        const bool refusal = is_refusal(e);
        const std::string where = refusal ? in.name : in.where;
        r.report["error"] = {{"type", error_name(e)}, {"message", refusal ? std::string(e.what()) : where + ": " + e.what()}};
        r.exit = refusal ? refused : bad_input;
        r.summary = where + ": " + error_name(e) + ": " + e.what();
    }
    return r;
}

inline std::vector<Input> gather(const Options& opt) {
    std::vector<Input> inputs;
    if (!opt.catalog.empty()) {
        const auto cat = load_catalog(std::filesystem::path(opt.catalog));
        std::size_t e = 0, g = 0;
        // Merge entries and diagnostics back into file order.
        while (e < cat.entries.size() || g < cat.diagnostics.size()) {
            if (g == cat.diagnostics.size() || (e < cat.entries.size() && cat.entries[e].line < cat.diagnostics[g].line)) {
                const auto& entry = cat.entries[e++];
                inputs.push_back({entry.name, opt.catalog + ":" + std::to_string(entry.line), entry.code, {}, {}});
            } else {
                const auto& diag = cat.diagnostics[g++];
                inputs.push_back({"line " + std::to_string(diag.line), opt.catalog + ":" + std::to_string(diag.line),
                                  std::nullopt, diag.message, "ParseError"});
            }
        }
    } else {
        Input in{"pd", "--pd", std::nullopt, {}, {}};
        try {
            in.code = parse_pd(opt.pd);
        } catch (const Error& e) {
            in.error = e.what();
            in.error_type = error_name(e);
        }
        inputs.push_back(std::move(in));
    }
    if (opt.max_crossings >= 0)
        std::erase_if(inputs, [&](const Input& in) { return in.code && static_cast<int>(in.code->size()) > opt.max_crossings; });
    return inputs;
}

/// Runs `work(i)` for i in [0, count) on up to `jobs` threads; results land in
/// their own slots so the merged output does not depend on scheduling.
template <class T, class Work>
std::vector<T> parallel_map(std::size_t count, int jobs, Work work) {
    std::vector<T> out(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++)
            out[i] = work(i);
    };
    const auto threads = static_cast<std::size_t>(std::clamp(jobs, 1, 64));
    if (threads == 1 || count <= 1) {
        worker();
        return out;
    }
    std::vector<std::future<void>> pool;
    for (std::size_t t = 0; t < std::min(threads, count); ++t)
        pool.push_back(std::async(std::launch::async, worker));
    for (auto& f : pool)
        f.get();
    return out;
}

inline int run_verify(const std::vector<Input>& inputs, const Options& opt, std::ostream& out, std::ostream& err) {
    struct Row {
        std::string suite, diagram, detail;
        bool passed = true, skipped = false;
    };
    const auto per_input = parallel_map<std::vector<Row>>(inputs.size(), opt.jobs, [&](std::size_t i) {
        const auto& in = inputs[i];
        std::vector<Row> rows;
        if (!in.code) {
            rows.push_back({"load", in.name, in.where + ": " + in.error, false, false});
            return rows;
        }
        std::optional<Diagram> d;
        try {
            d = build_diagram(*in.code);
        } catch (const Error& e) {
            rows.push_back({"load", in.name, in.where + ": " + e.what(), false, false});
            return rows;
        }
        for (const auto& suite : suites::all()) {
            Row row{suite.name, in.name, {}, true, false};
            try {
                const auto o = suite.run(*d, *in.code, in.name);
                row.passed = o.passed;
                row.skipped = o.skipped;
                row.detail = o.skipped ? "skipped: " + o.detail : o.detail;
            } catch (const std::exception& e) {
                row.passed = false;
                row.detail = std::string("threw ") + e.what();
            }
            rows.push_back(std::move(row));
        }
        return rows;
    });

    json table = json::array();
    int failed = 0, passed = 0, skipped = 0;
    bool load_error = false;
    for (const auto& rows : per_input)
        for (const auto& row : rows) {
            table.push_back({{"suite", row.suite}, {"diagram", row.diagram}, {"passed", row.passed}, {"detail", row.detail}});
            if (!row.passed) {
                ++failed;
                load_error = load_error || row.suite == "load";
                err << "FAIL " << row.suite << ' ' << row.diagram << ": " << row.detail << '\n';
            } else if (row.skipped) {
                ++skipped;
            } else {
                ++passed;
            }
        }
    out << table.dump(2) << '\n';
    err << passed << " passed, " << failed << " failed, " << skipped << " skipped over " << inputs.size() << " diagram(s)\n";
    if (load_error)
        return bad_input;
    return failed ? refused : ok;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Region crossing changes on link diagrams", "rcc"};
    app.require_subcommand(1);
    Options opt;
    auto add_input = [&](CLI::App* sub) {
        auto* pd = sub->add_option("--pd", opt.pd, "diagram code, X(a,b,c,d) terms");
        auto* cat = sub->add_option("--catalog", opt.catalog, "JSONL catalog of {\"name\", \"pd\"} records");
        pd->excludes(cat);
        cat->excludes(pd);
        sub->add_option("--max-crossings", opt.max_crossings, "skip catalog diagrams with more crossings");
        sub->add_option("--jobs", opt.jobs, "worker threads")->check(CLI::Range(1, 64));
    };
    auto* info = app.add_subcommand("info", "crossings, components, faces, rank, linking numbers");
    auto* solve = app.add_subcommand("solve", "regions whose crossing changes are exactly --q");
    auto* unknot = app.add_subcommand("unknot", "regions that make a proper diagram descending");
    auto* arf = app.add_subcommand("arf", "Arf invariant from region signs and from the determinant");
    auto* verify = app.add_subcommand("verify", "run every property suite");
    for (auto* sub : {info, solve, unknot, arf, verify})
        add_input(sub);
    solve->add_option("--q", opt.q, "comma-separated crossing ids (0-based)")->required();
    for (auto* sub : {solve, unknot, arf})
        sub->add_flag("--minimal", opt.minimal, "smallest region set in the solution coset");
    for (auto* sub : {unknot, arf})
        sub->add_option("--ordering", opt.ordering, "comp[:arcLabel][+|-],... base points, components 0-based");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : bad_input;
    }
    const auto* sub = app.get_subcommands().front();
    if (opt.pd.empty() && opt.catalog.empty() && sub->count("--pd") == 0) {
        err << "rcc: one of --pd or --catalog is required\n";
        return bad_input;
    }

    std::vector<Input> inputs;
    try {
        inputs = gather(opt);
    } catch (const Error& e) {
        out << json{{"error", {{"type", error_name(e)}, {"message", e.what()}}}}.dump(2) << '\n';
        err << "rcc: " << e.what() << '\n';
        return bad_input;
    }

    const std::string command = sub->get_name();
    if (command == "verify")
        return run_verify(inputs, opt, out, err);

    const auto results = parallel_map<Result>(inputs.size(), opt.jobs, [&](std::size_t i) { return run_one(command, inputs[i], opt); });
    int code = ok;
    for (const auto& r : results) {
        err << r.summary << '\n';
        code = std::max(code, r.exit);
    }
    if (opt.catalog.empty()) {
        out << results.front().report.dump(2) << '\n';
    } else {
        json reports = json::array();
        for (const auto& r : results)
            reports.push_back(r.report);
        out << json{{"catalog", opt.catalog}, {"reports", reports}}.dump(2) << '\n';
    }
    return code;
}

} // namespace rcc::cli
