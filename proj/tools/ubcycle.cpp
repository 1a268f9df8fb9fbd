#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ubcycle/atlas.hpp"
#include "ubcycle/bounds.hpp"
#include "ubcycle/code.hpp"
#include "ubcycle/decoder.hpp"
#include "ubcycle/distance.hpp"
#include "ubcycle/logical.hpp"

using namespace ubcycle;
using nlohmann::json;

namespace {

/// Bad user input: reported with exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GlobalOptions {
    std::string out;
    std::string format;
    unsigned threads = 0;
    std::uint64_t seed = 1;
};

struct CodeOptions {
    std::optional<long long> n;
    std::string a;
    unsigned l = 1;
    std::string code_file;
    int row = 0;

    void attach(CLI::App *sub) {
        sub->add_option("-n", n, "Ring size n");
        sub->add_option("-a,--poly", a, "Polynomial a(x), e.g. \"1+x+x^3\" or \"0,1,3\"");
        sub->add_option("-l", l, "Frobenius exponent l (b = a^(2^l))");
        sub->add_option("--code-file", code_file, "File with one \"n=.. a=.. l=..\" spec per line");
        sub->add_option("--row", row, "Use row 1..11 of the built-in code table");
    }

    std::vector<UBCodeSpec> specs() const {
        int sources = (n ? 1 : 0) + (code_file.empty() ? 0 : 1) + (row ? 1 : 0);
        if (sources != 1) throw UsageError("give exactly one of -n/-a/-l, --code-file or --row");
        try {
            if (row) {
                const auto &rows = published_codes();
                if (row < 1 || row > static_cast<int>(rows.size()))
                    throw UsageError("--row must be between 1 and " + std::to_string(rows.size()));
                return {spec_of(rows[static_cast<std::size_t>(row - 1)])};
            }
            if (!code_file.empty()) {
                std::ifstream in(code_file);
                if (!in) throw UsageError("cannot open code file '" + code_file + "'");
                auto all = parse_spec_file(in);
                if (all.empty()) throw UsageError("code file '" + code_file + "' holds no specs");
                return all;
            }
            if (a.empty()) throw UsageError("-a is required with -n");
            return {UBCodeSpec{static_cast<std::size_t>(*n), parse_poly(a, *n), l}};
        } catch (const UsageError &) {
            throw;
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
    }

    UBCodeSpec single() const {
        auto all = specs();
        if (all.size() != 1) throw UsageError("this command takes a single code");
        return all.front();
    }
};

CssCode build_or_usage(const UBCodeSpec &spec) {
    try {
        return build_ub(spec);
    } catch (const std::invalid_argument &e) {
        throw UsageError(std::string("invalid code spec: ") + e.what());
    }
}

class Output {
  public:
    explicit Output(const std::string &path) {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw std::runtime_error("cannot open output file '" + path + "'");
        }
    }
    std::ostream &stream() { return file_ ? *file_ : std::cout; }

  private:
    std::unique_ptr<std::ofstream> file_;
};

unsigned resolve_threads(unsigned flag) {
    if (flag) return flag;
    if (const char *env = std::getenv("UBCYCLE_THREADS")) {
        char *end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
        throw UsageError(std::string("UBCYCLE_THREADS is not a positive integer: '") + env + "'");
    }
    return 1;
}

std::string format_or(const GlobalOptions &g, const char *fallback, std::initializer_list<const char *> allowed) {
    std::string f = g.format.empty() ? fallback : g.format;
    for (const char *a : allowed)
        if (f == a) return f;
    throw UsageError("format '" + f + "' is not supported by this command");
}

/// "a" or "a:b" into an inclusive range.
template <class T>
std::pair<T, T> parse_range(const std::string &text, const char *name) {
    auto to_num = [&](const std::string &s) {
        try {
            std::size_t pos = 0;
            long long v = std::stoll(s, &pos);
            if (pos != s.size() || v < 0) throw std::invalid_argument(s);
            return static_cast<T>(v);
        } catch (const std::exception &) {
            throw UsageError(std::string("bad value for ") + name + ": '" + s + "'");
        }
    };
    auto colon = text.find(':');
    if (colon == std::string::npos) return {to_num(text), to_num(text)};
    return {to_num(text.substr(0, colon)), to_num(text.substr(colon + 1))};
}

/// "start:stop:step" (inclusive, tolerant to rounding) into a list of p values.
std::vector<double> parse_p_range(const std::string &text) {
    double v[3];
    std::istringstream in(text);
    char c1 = 0, c2 = 0;
    if (!(in >> v[0] >> c1 >> v[1] >> c2 >> v[2]) || c1 != ':' || c2 != ':' || v[2] <= 0 || v[1] < v[0] || !in.eof())
        throw UsageError("bad --p-range '" + text + "', expected start:stop:step");
    std::vector<double> out;
    for (int i = 0;; ++i) {
        double p = v[0] + i * v[2];
        if (p > v[1] + 1e-9) break;
        // round away accumulated binary noise so keys and output stay stable
        out.push_back(std::round(p * 1e9) / 1e9);
    }
    return out;
}

void params_text(std::ostream &out, const CssCode &code) {
    out << "n=" << code.n() << " N=" << code.num_qubits() << " k=" << code.k() << " r=" << code.r()
        << " w=" << code.w() << " R=" << format_rate(code.k(), code.num_qubits())
        << " divisor_case=" << (code.divisor_case() ? "true" : "false") << '\n'
        << "a(x) = " << code.a().to_string() << '\n'
        << "b(x) = " << code.b().to_string() << '\n'
        << "h(x) = " << (code.h() ? code.h()->to_string() : std::string("-")) << '\n';
}

int cmd_params(const GlobalOptions &g, const CodeOptions &co) {
    const std::string fmt = format_or(g, "json", {"json", "text"});
    Output out(g.out);
    for (const UBCodeSpec &spec : co.specs()) {
        const CssCode code = build_or_usage(spec);
        if (fmt == "json") {
            json j = to_json(code);
            j["R"] = format_rate(code.k(), code.num_qubits());
            out.stream() << j.dump() << '\n';
        } else {
            params_text(out.stream(), code);
        }
    }
    return 0;
}

int cmd_atlas(const GlobalOptions &g, bool with_bounds) {
    const std::string fmt = format_or(g, "text", {"text", "csv", "json"});
    const auto entries = build_atlas(with_bounds);
    Output out(g.out);
    if (fmt == "text") {
        write_atlas_text(out.stream(), entries);
    } else if (fmt == "csv") {
        write_atlas_csv(out.stream(), entries);
    } else {
        json arr = json::array();
        for (const auto &e : entries) {
            json j{{"n", e.spec.n}, {"a", e.spec.a.to_string()}, {"l", e.spec.l}, {"N", e.N},
                   {"k", e.k},      {"w", e.w},                  {"R", e.rate},   {"mismatches", e.mismatches}};
            j["d_reported"] = e.d_reported ? json(*e.d_reported) : json(nullptr);
            j["d_upper"] = e.d_upper ? json(*e.d_upper) : json(nullptr);
            arr.push_back(j);
        }
        out.stream() << arr.dump(2) << '\n';
    }
    std::size_t bad = 0;
    for (const auto &e : entries) bad += e.mismatches.empty() ? 0 : 1;
    if (bad) std::cerr << bad << " row(s) differ from the printed table\n";
    return 0;
}

int cmd_basis(const GlobalOptions &g, const CodeOptions &co) {
    format_or(g, "json", {"json"});
    const CssCode code = build_or_usage(co.single());
    Output out(g.out);
    out.stream() << to_json(logical_basis(code)).dump(2) << '\n';
    return 0;
}

int cmd_bounds(const GlobalOptions &g, const CodeOptions &co) {
    format_or(g, "json", {"json"});
    const CssCode code = build_or_usage(co.single());
    const LogicalBasis basis = logical_basis(code);
    Output out(g.out);
    out.stream() << to_json(b_bounds(code, basis)).dump(2) << '\n';
    return 0;
}

struct DistanceOptions {
    bool exact = false;
    bool search = false;
    std::size_t capped = 0;
    std::size_t dim_limit = 26;
    double budget_secs = 60;
    std::size_t target = 0;
};

int cmd_distance(const GlobalOptions &g, const CodeOptions &co, const DistanceOptions &d) {
    format_or(g, "json", {"json"});
    if (int(d.exact) + int(d.search) + int(d.capped > 0) > 1)
        throw UsageError("--exact, --search and --capped are mutually exclusive");
    const CssCode code = build_or_usage(co.single());
    Output out(g.out);
    json j;
    if (d.capped > 0) {
        auto res = capped_exact_distance(code, d.capped);
        if (res) {
            j = to_json(*res);
        } else {
            j = {{"method", to_string(DistanceMethod::CappedExact)}, {"d_found", nullptr},
                 {"d_greater_than", d.capped}};
        }
    } else if (d.exact) {
        try {
            j = to_json(exact_distance(code, d.dim_limit));
        } catch (const std::invalid_argument &e) {
            throw UsageError(e.what());
        }
    } else {
        SearchBudget budget;
        budget.max_seconds = d.budget_secs;
        budget.seed = g.seed;
        budget.target_weight = d.target;
        std::optional<LogicalBasis> basis;
        if (code.divisor_case()) basis = logical_basis(code);
        DistanceResult res = low_weight_search(code, basis ? &*basis : nullptr, budget);
        j = to_json(res);
        if (basis) j["d_upper_bound"] = b_bounds(code, *basis).d_upper;
    }
    out.stream() << j.dump() << '\n';
    return 0;
}

struct SearchOptions {
    std::string n;
    std::string l = "1";
    std::size_t w = 8;
    std::size_t min_weight_a = 2;
    bool divisor = false;
    std::size_t min_k = 0;
    std::optional<std::size_t> min_dupper;
    std::optional<std::size_t> max_dupper;
};

int cmd_search(const GlobalOptions &g, const SearchOptions &s) {
    format_or(g, "json", {"json"});
    SearchConfig cfg;
    std::tie(cfg.n_min, cfg.n_max) = parse_range<std::size_t>(s.n, "--n");
    std::tie(cfg.l_min, cfg.l_max) = parse_range<unsigned>(s.l, "--l");
    cfg.w = s.w;
    cfg.min_weight_a = s.min_weight_a;
    cfg.require_divisor = s.divisor;
    cfg.min_k = s.min_k;
    cfg.min_dupper = s.min_dupper;
    cfg.max_dupper = s.max_dupper;
    cfg.threads = resolve_threads(g.threads);
    try {
        cfg.validate();
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    Output out(g.out);
    SearchStats stats = code_search(cfg, [&](const SearchHit &hit) { out.stream() << to_json(hit).dump() << '\n'; });
    std::cerr << "searched " << stats.candidates << " candidates, emitted " << stats.emitted << '\n';
    return 0;
}

struct SimulateOptions {
    std::vector<double> p;
    std::string p_range;
    double alpha = 0.875;
    std::size_t max_iters = 1000;
    std::size_t target_errors = 150;
    std::size_t max_trials = 10'000'000;
};

int cmd_simulate(const GlobalOptions &g, const CodeOptions &co, const SimulateOptions &s) {
    const std::string fmt = format_or(g, "csv", {"csv", "json"});
    SimConfig cfg;
    cfg.p_list = s.p;
    if (!s.p_range.empty()) {
        auto extra = parse_p_range(s.p_range);
        cfg.p_list.insert(cfg.p_list.end(), extra.begin(), extra.end());
    }
    cfg.alpha = s.alpha;
    cfg.max_iters = s.max_iters;
    cfg.target_logical_errors = s.target_errors;
    cfg.max_trials = s.max_trials;
    cfg.seed = g.seed;
    cfg.threads = resolve_threads(g.threads);
    try {
        cfg.validate();
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    const CssCode code = build_or_usage(co.single());
    const auto points = run_simulation(code, cfg);
    Output out(g.out);
    if (fmt == "csv") {
        write_sim_csv(out.stream(), points);
    } else {
        json arr = json::array();
        for (const auto &pt : points) arr.push_back(to_json(pt));
        out.stream() << arr.dump(2) << '\n';
    }
    return 0;
}

int cmd_plotdata(const GlobalOptions &g, const std::string &sim_path, const std::string &label, bool no_reference) {
    format_or(g, "csv", {"csv"});
    std::vector<SimPoint> sim;
    if (!sim_path.empty()) {
        std::ifstream in(sim_path);
        if (!in) throw UsageError("cannot open simulation file '" + sim_path + "'");
        try {
            sim = read_sim_csv(in);
        } catch (const std::runtime_error &e) {
            throw UsageError(sim_path + ": " + e.what());
        }
    }
    Output out(g.out);
    write_plot_data(out.stream(), label, sim, !no_reference);
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Univariate bicycle quantum LDPC codes: construction, bounds, search and decoding"};
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--out", g.out, "Output file (default: stdout)")->capture_default_str();
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--threads", g.threads, "Worker threads (default: $UBCYCLE_THREADS or 1)");
    app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
    app.fallthrough();

    CodeOptions co;

    auto *params = app.add_subcommand("params", "Code parameters N, k, r, w, R, h(x)");
    co.attach(params);

    bool atlas_bounds = false;
    auto *atlas = app.add_subcommand("atlas", "Rebuild the table of selected codes");
    atlas->add_flag("--bounds", atlas_bounds, "Also compute the distance upper bound per row");

    auto *basis = app.add_subcommand("basis", "Explicit logical basis (divisor case)");
    co.attach(basis);

    auto *bounds = app.add_subcommand("bounds", "Distance upper bounds U_q, B_q with witnesses");
    co.attach(bounds);

    DistanceOptions dopt;
    auto *distance = app.add_subcommand("distance", "Exact distance or low-weight logical search");
    co.attach(distance);
    distance->add_flag("--exact", dopt.exact, "Enumerate the whole kernel");
    distance->add_flag("--search", dopt.search, "Low-weight search (default)");
    distance->add_option("--capped", dopt.capped, "Exhaust all supports up to this weight");
    distance->add_option("--dim-limit", dopt.dim_limit, "Largest kernel dimension for --exact")->capture_default_str();
    distance->add_option("--budget-secs", dopt.budget_secs, "Time budget for --search")->capture_default_str();
    distance->add_option("--target", dopt.target, "Stop the search once this weight is reached");

    SearchOptions sopt;
    auto *search = app.add_subcommand("search", "Enumerate UB codes, JSON lines");
    search->add_option("--n", sopt.n, "n or nmin:nmax")->required();
    search->add_option("--l", sopt.l, "l or lmin:lmax")->capture_default_str();
    search->add_option("--w", sopt.w, "Stabilizer weight budget")->capture_default_str();
    search->add_option("--min-weight-a", sopt.min_weight_a, "Smallest wt(a)")->capture_default_str();
    search->add_flag("--divisor", sopt.divisor, "Only codes with a | x^n - 1");
    search->add_option("--min-k", sopt.min_k, "Smallest k");
    search->add_option("--min-dupper", sopt.min_dupper, "Keep codes whose distance upper bound is at least this");
    search->add_option("--max-dupper", sopt.max_dupper, "Keep codes whose distance upper bound is at most this");

    SimulateOptions simopt;
    auto *simulate = app.add_subcommand("simulate", "BP-OSD-0 logical error rate under X noise");
    co.attach(simulate);
    simulate->add_option("--p", simopt.p, "Physical error rate (repeatable)");
    simulate->add_option("--p-range", simopt.p_range, "start:stop:step");
    simulate->add_option("--alpha", simopt.alpha, "Min-sum normalization")->capture_default_str();
    simulate->add_option("--max-iters", simopt.max_iters, "BP iteration cap")->capture_default_str();
    simulate->add_option("--target-errors", simopt.target_errors, "Logical errors per point")->capture_default_str();
    simulate->add_option("--max-trials", simopt.max_trials, "Trial cap per point")->capture_default_str();

    std::string sim_path;
    std::string sim_label = "simulated";
    bool no_reference = false;
    auto *plotdata = app.add_subcommand("plotdata", "Merge simulation CSV with the reference curves");
    plotdata->add_option("--sim", sim_path, "CSV written by 'simulate'");
    plotdata->add_option("--label", sim_label, "Curve name for the simulated points")->capture_default_str();
    plotdata->add_flag("--no-reference", no_reference, "Omit the reference curves");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (params->parsed()) return cmd_params(g, co);
        if (atlas->parsed()) return cmd_atlas(g, atlas_bounds);
        if (basis->parsed()) return cmd_basis(g, co);
        if (bounds->parsed()) return cmd_bounds(g, co);
        if (distance->parsed()) return cmd_distance(g, co, dopt);
        if (search->parsed()) return cmd_search(g, sopt);
        if (simulate->parsed()) return cmd_simulate(g, co, simopt);
        if (plotdata->parsed()) return cmd_plotdata(g, sim_path, sim_label, no_reference);
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const UnsupportedCodeError &e) {
        std::cerr << "error: " << e.what() << " (r=" << e.r() << ", gcd=" << e.gcd() << ")\n";
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
