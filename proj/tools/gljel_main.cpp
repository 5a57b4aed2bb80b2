// Command-line front end: equality tests on income data, curve tables for
// plotting, and Monte Carlo rejection-rate studies.
//
// Exit codes: 0 success, 1 data error (unreadable/unusable input),
// 2 usage error (bad flags or flag values).

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gljel/curves.hpp"
#include "gljel/distributions.hpp"
#include "gljel/el.hpp"
#include "gljel/ingest.hpp"
#include "gljel/io.hpp"
#include "gljel/montecarlo.hpp"
#include "gljel/sample.hpp"
#include "gljel/version.hpp"

namespace {

using namespace gljel;

// Thrown while interpreting flag values; mapped to exit code 2. Anything a
// command throws after its configuration is settled counts as a data error
// and maps to exit code 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

double parse_number(const std::string& tok, const std::string& what) {
    try {
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    }
    catch (const std::exception&) {
        throw UsageError("invalid " + what + ": '" + tok + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string::npos ? pos : pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

TGrid parse_t_list(const std::string& csv) {
    std::vector<double> pts;
    for (const std::string& tok : split(csv, ',')) {
        if (tok.empty()) throw UsageError("empty entry in t list '" + csv + "'");
        pts.push_back(parse_number(tok, "t value"));
    }
    try {
        return TGrid(std::move(pts));
    }
    catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

// --grid accepts either a point count ("5" -> 0.2,0.4,...,1.0) or an explicit
// list of t values ("0.5" or "0.1,0.5,0.9").
TGrid parse_grid(const std::string& tok) {
    if (!tok.empty() && tok.find_first_not_of("0123456789") == std::string::npos) {
        try {
            return TGrid::uniform(std::stoul(tok));
        }
        catch (const std::exception& e) {
            throw UsageError(e.what());
        }
    }
    return parse_t_list(tok);
}

Family parse_family(const std::string& name) {
    const std::string n = lower(name);
    if (n == "exponential" || n == "exp") return Family::exponential;
    if (n == "chisq" || n == "chi2" || n == "chisquare" || n == "chi-square" ||
        n == "chi_square") {
        return Family::chi_square;
    }
    if (n == "halfnormal" || n == "half-normal" || n == "half_normal" || n == "hn") {
        return Family::half_normal;
    }
    throw UsageError("unknown distribution family: '" + name + "'");
}

// FAMILY:PARAM token. Exponential parameters are means by default; with
// exp_rate the number is read as a rate and inverted.
DistSpec parse_dist(const std::string& tok, bool exp_rate) {
    std::size_t pos = tok.find(':');
    if (pos == std::string::npos || pos == 0 || pos + 1 == tok.size()) {
        throw UsageError("expected FAMILY:PARAM (e.g. exponential:4), got '" + tok + "'");
    }
    Family fam = parse_family(tok.substr(0, pos));
    double param = parse_number(tok.substr(pos + 1), "distribution parameter");
    if (fam == Family::exponential && exp_rate) {
        if (!(param > 0.0)) throw UsageError("rate must be positive: '" + tok + "'");
        param = 1.0 / param;
    }
    try {
        return DistSpec(fam, param);
    }
    catch (const std::exception& e) {
        throw UsageError(std::string(e.what()) + ": '" + tok + "'");
    }
}

QuantileMode parse_quantile_mode(const std::string& name, bool allow_true_quantile) {
    if (name == "per_sample") return QuantileMode::per_sample;
    if (name == "pooled") return QuantileMode::pooled;
    if (name == "true_quantile") {
        if (allow_true_quantile) return QuantileMode::true_quantile;
        throw UsageError("quantile mode 'true_quantile' applies only to simulations");
    }
    throw UsageError("unknown quantile mode: '" + name + "'");
}

struct MethodSet {
    bool jel = true;
    bool ajel = true;

    std::vector<Method> list() const {
        std::vector<Method> out;
        if (jel) out.push_back(Method::jel);
        if (ajel) out.push_back(Method::ajel);
        return out;
    }
};

MethodSet parse_methods(const std::string& name) {
    if (name == "jel") return {true, false};
    if (name == "ajel") return {false, true};
    if (name == "both") return {true, true};
    throw UsageError("unknown method: '" + name + "' (expected jel, ajel, or both)");
}

Study parse_table(const std::string& name) {
    const std::string n = lower(name);
    if (n == "t1") return Study::t1;
    if (n == "t2") return Study::t2;
    if (n == "t3") return Study::t3;
    if (n == "t4") return Study::t4;
    if (n == "t5") return Study::t5;
    if (n == "t6") return Study::t6;
    throw UsageError("unknown table: '" + name + "' (expected T1..T6)");
}

char parse_delimiter(const std::string& tok) {
    if (tok == "\\t" || tok == "tab") return '\t';
    if (tok.size() != 1) throw UsageError("delimiter must be a single character: '" + tok + "'");
    return tok[0];
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("alpha must lie in (0,1)");
}

void warn_endpoints(const TGrid& grid) {
    for (double t : grid.points()) {
        if (t == 0.0 || t == 1.0) {
            std::cerr << "note: the chi-square calibration is asymptotic for interior t;"
                         " t = 0 and t = 1 rows are reported as computed\n";
            return;
        }
    }
}

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + output_path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + output_path);
}

// Flags shared by every command that reads a CSV column.
struct IngestFlags {
    std::string column = "0";
    std::string delimiter = ",";
    bool header = false;
    std::optional<double> min_value;
    bool log_transform = false;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--column", column,
                       "Column to read: 0-based index, or a name when --header is set");
        cmd.add_option("--delimiter", delimiter, "Field delimiter (single character, or \\t)");
        cmd.add_flag("--header", header, "Treat the first row as a header");
        cmd.add_option("--min-value", min_value,
                       "Drop rows below this value before any transform");
        cmd.add_flag("--log-transform", log_transform,
                     "Test on log incomes (requires positive values)");
    }

    IngestSpec spec(const std::string& path) const {
        IngestSpec s;
        s.path = path;
        s.column = column;
        s.delimiter = parse_delimiter(delimiter);
        s.has_header = header;
        s.min_value = min_value;
        s.log_transform = log_transform;
        return s;
    }
};

std::string fmt_num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string grid_echo(const TGrid& grid) {
    std::string out;
    for (double t : grid.points()) {
        if (!out.empty()) out += ",";
        out += fmt_num(t);
    }
    return out;
}

// ---------------------------------------------------------------------------
// test

struct TestArgs {
    std::string x_path;
    std::string y_path;
    std::string t_csv;
    std::string method = "both";
    double alpha = 0.05;
    std::string quantile_mode = "per_sample";
    std::uint64_t subsample_n = 0;
    std::uint64_t seed = 0;
    std::string format = "csv";
    std::string output;
    IngestFlags ingest;
};

int run_test_cmd(const TestArgs& a) {
    TGrid grid = a.t_csv.empty() ? TGrid({0.0, 0.2, 0.4, 0.6, 0.8, 1.0})
                                 : parse_t_list(a.t_csv);
    check_alpha(a.alpha);
    MethodSet methods = parse_methods(a.method);
    QuantileMode mode = parse_quantile_mode(a.quantile_mode, false);
    warn_endpoints(grid);

    LoadResult lx = load_sample(a.ingest.spec(a.x_path));
    LoadResult ly = load_sample(a.ingest.spec(a.y_path));
    Sample x = lx.sample;
    Sample y = ly.sample;
    if (a.subsample_n > 0) {
        x = subsample(x, a.subsample_n, {a.seed, 1});
        y = subsample(y, a.subsample_n, {a.seed, 2});
    }
    TwoSamples s(std::move(x), std::move(y));

    std::vector<TestResult> rows;
    for (double t : grid.points()) {
        for (Method m : methods.list()) {
            rows.push_back(run_test(s, t, m, a.alpha, mode));
        }
    }

    Meta meta = {
        {"version", GLJEL_VERSION},
        {"command", "test"},
        {"x", a.x_path},
        {"y", a.y_path},
        {"n1", std::to_string(s.x.size())},
        {"n2", std::to_string(s.y.size())},
        {"t", grid_echo(grid)},
        {"method", a.method},
        {"alpha", fmt_num(a.alpha)},
        {"quantile_mode", quantile_mode_name(mode)},
        {"log_transform", a.ingest.log_transform ? "true" : "false"},
        {"seed", std::to_string(a.seed)},
    };

    if (a.format == "json") emit(test_results_json(rows, meta), a.output);
    else if (a.format == "plain") emit(test_results_plain(rows, meta), a.output);
    else emit(test_results_csv(rows, meta), a.output);
    return 0;
}

// ---------------------------------------------------------------------------
// curve

struct CurveArgs {
    std::string input;
    std::string grid = "10";
    std::string analytic;
    std::string exp_param = "mean";
    std::string format = "csv";
    std::string output;
    IngestFlags ingest;
};

int run_curve_cmd(const CurveArgs& a) {
    TGrid grid = parse_grid(a.grid);
    std::optional<DistSpec> overlay;
    if (!a.analytic.empty()) overlay = parse_dist(a.analytic, a.exp_param == "rate");

    LoadResult lr = load_sample(a.ingest.spec(a.input));
    std::vector<CurveRow> rows = curve_table(lr.sample, grid);
    std::vector<double> analytic;
    if (overlay) {
        analytic.reserve(grid.size());
        for (double t : grid.points()) analytic.push_back(analytic_gl(*overlay, t));
    }

    Meta meta = {
        {"version", GLJEL_VERSION},
        {"command", "curve"},
        {"input", a.input},
        {"n", std::to_string(lr.sample.size())},
        {"analytic", overlay ? overlay->label() : "none"},
        {"log_transform", a.ingest.log_transform ? "true" : "false"},
    };

    if (a.format == "json") emit(curve_json(rows, analytic, meta), a.output);
    else if (a.format == "plain") emit(curve_plain(rows, analytic, meta), a.output);
    else emit(curve_csv(rows, analytic, meta), a.output);
    return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct SimArgs {
    std::string table;
    std::string dist_x;
    std::string dist_y;
    std::uint64_t n1 = 0;
    std::uint64_t n2 = 0;
    std::string t_csv;
    std::uint64_t reps = 1000;
    std::uint64_t seed = 0;
    double alpha = 0.05;
    unsigned workers = 1;
    std::string method = "both";
    std::string quantile_mode = "true_quantile";
    std::string exp_param = "mean";
    std::string format = "csv";
    std::string output;
};

int run_simulate_cmd(const SimArgs& a) {
    if (a.reps == 0) throw UsageError("reps must be positive");
    if (a.workers == 0) throw UsageError("workers must be positive");
    check_alpha(a.alpha);
    MethodSet methods = parse_methods(a.method);
    QuantileMode mode = parse_quantile_mode(a.quantile_mode, true);

    const bool explicit_cfg =
        !a.dist_x.empty() || !a.dist_y.empty() || a.n1 != 0 || a.n2 != 0;
    if (!a.table.empty() && explicit_cfg) {
        throw UsageError("--table and an explicit configuration are mutually exclusive");
    }
    if (a.table.empty() && !explicit_cfg) {
        throw UsageError("provide --table T1..T6 or --dist-x/--dist-y/--n1/--n2");
    }

    SimTable table;
    Meta meta = {{"version", GLJEL_VERSION}, {"command", "simulate"}};

    if (!a.table.empty()) {
        if (!a.t_csv.empty()) {
            throw UsageError("--t applies only to explicit configurations;"
                             " the table suites run the decile grid");
        }
        Study study = parse_table(a.table);
        table = table_suite(study, a.reps, a.seed, a.workers, a.alpha, mode);
        if (!methods.jel || !methods.ajel) {
            std::vector<SimRow> kept;
            for (const SimRow& r : table.rows) {
                if ((r.method == Method::jel && methods.jel) ||
                    (r.method == Method::ajel && methods.ajel)) {
                    kept.push_back(r);
                }
            }
            table.rows = std::move(kept);
        }
        meta.emplace_back("table", study_name(study));
    }
    else {
        if (a.dist_x.empty() || a.dist_y.empty() || a.n1 == 0 || a.n2 == 0) {
            throw UsageError("explicit configurations need all of --dist-x --dist-y --n1 --n2");
        }
        const bool rate = a.exp_param == "rate";
        SimConfig cfg{parse_dist(a.dist_x, rate),
                      parse_dist(a.dist_y, rate),
                      a.n1,
                      a.n2,
                      a.t_csv.empty() ? decile_grid() : parse_t_list(a.t_csv),
                      a.reps,
                      a.alpha,
                      methods.jel,
                      methods.ajel,
                      a.seed,
                      mode};

        table = run_simulation(cfg, a.workers);
        meta.emplace_back("dist_x", cfg.dist_x.label());
        meta.emplace_back("dist_y", cfg.dist_y.label());
        meta.emplace_back("n1", std::to_string(a.n1));
        meta.emplace_back("n2", std::to_string(a.n2));
        meta.emplace_back("t", grid_echo(cfg.t_grid));
    }

    // No worker count here: output must be byte-identical for any --workers.
    meta.emplace_back("reps", std::to_string(a.reps));
    meta.emplace_back("alpha", fmt_num(a.alpha));
    meta.emplace_back("method", a.method);
    meta.emplace_back("quantile_mode", quantile_mode_name(mode));
    meta.emplace_back("seed", std::to_string(a.seed));

    if (a.format == "json") emit(simtable_json(table, meta), a.output);
    else if (a.format == "plain") emit(simtable_plain(table, meta), a.output);
    else emit(simtable_csv(table, meta), a.output);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized Lorenz curve toolkit: jackknife empirical likelihood"
                 " equality tests, curve tables, and Monte Carlo rejection studies"};
    app.set_version_flag("--version", GLJEL_VERSION);
    app.require_subcommand(1);

    const std::vector<std::string> formats = {"csv", "json", "plain"};

    TestArgs ta;
    CLI::App* test_cmd =
        app.add_subcommand("test", "Test equality of two generalized Lorenz curves");
    test_cmd->add_option("--x", ta.x_path, "First sample (CSV)")->required();
    test_cmd->add_option("--y", ta.y_path, "Second sample (CSV)")->required();
    test_cmd->add_option("--t", ta.t_csv,
                         "Comma-separated t values in [0,1] (default 0.0,0.2,...,1.0)");
    test_cmd->add_option("--method", ta.method, "jel, ajel, or both");
    test_cmd->add_option("--alpha", ta.alpha, "Significance level in (0,1)");
    test_cmd->add_option("--quantile-mode", ta.quantile_mode, "per_sample or pooled");
    test_cmd->add_option("--subsample", ta.subsample_n,
                         "Test on a seeded random subsample of this size from each file");
    test_cmd->add_option("--seed", ta.seed, "Seed for --subsample")
        ->envname("LORENZ_JEL_SEED");
    test_cmd->add_option("--format", ta.format, "Output format")
        ->check(CLI::IsMember(formats));
    test_cmd->add_option("--output", ta.output, "Write to this file instead of stdout");
    ta.ingest.add_to(*test_cmd);

    CurveArgs ca;
    CLI::App* curve_cmd =
        app.add_subcommand("curve", "Tabulate empirical Lorenz and generalized Lorenz curves");
    curve_cmd->add_option("--input", ca.input, "Sample file (CSV)")->required();
    curve_cmd->add_option("--grid", ca.grid,
                          "Point count N (grid i/N) or comma-separated t values");
    curve_cmd->add_option("--analytic", ca.analytic,
                          "Overlay population curve, FAMILY:PARAM (e.g. exponential:1)");
    curve_cmd->add_option("--exp-param", ca.exp_param,
                          "Read exponential parameters as 'mean' or 'rate'")
        ->check(CLI::IsMember({"mean", "rate"}));
    curve_cmd->add_option("--format", ca.format, "Output format")
        ->check(CLI::IsMember(formats));
    curve_cmd->add_option("--output", ca.output, "Write to this file instead of stdout");
    ca.ingest.add_to(*curve_cmd);

    SimArgs sa;
    CLI::App* sim_cmd =
        app.add_subcommand("simulate", "Monte Carlo rejection-rate studies");
    sim_cmd->add_option("--table", sa.table, "Built-in study suite, T1..T6");
    sim_cmd->add_option("--dist-x", sa.dist_x, "First population, FAMILY:PARAM");
    sim_cmd->add_option("--dist-y", sa.dist_y, "Second population, FAMILY:PARAM");
    sim_cmd->add_option("--n1", sa.n1, "First sample size");
    sim_cmd->add_option("--n2", sa.n2, "Second sample size");
    sim_cmd->add_option("--t", sa.t_csv,
                        "Comma-separated t values (explicit configurations only;"
                        " default 0.1,...,0.9)");
    sim_cmd->add_option("--reps", sa.reps, "Monte Carlo replications");
    sim_cmd->add_option("--seed", sa.seed, "Base seed")->envname("LORENZ_JEL_SEED");
    sim_cmd->add_option("--alpha", sa.alpha, "Nominal level in (0,1)");
    sim_cmd->add_option("--workers", sa.workers,
                        "Worker threads (results identical for any count)");
    sim_cmd->add_option("--method", sa.method, "jel, ajel, or both");
    sim_cmd->add_option("--quantile-mode", sa.quantile_mode,
                        "true_quantile (default), per_sample, or pooled");
    sim_cmd->add_option("--exp-param", sa.exp_param,
                        "Read exponential parameters as 'mean' or 'rate'")
        ->check(CLI::IsMember({"mean", "rate"}));
    sim_cmd->add_option("--format", sa.format, "Output format")
        ->check(CLI::IsMember(formats));
    sim_cmd->add_option("--output", sa.output, "Write to this file instead of stdout");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        int rc = app.exit(e); // prints the message (or the requested help text)
        return rc == 0 ? 0 : 2;
    }

    try {
        if (test_cmd->parsed()) return run_test_cmd(ta);
        if (curve_cmd->parsed()) return run_curve_cmd(ca);
        return run_simulate_cmd(sa);
    }
    catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
