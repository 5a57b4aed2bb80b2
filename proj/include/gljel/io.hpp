#pragma once

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gljel/curves.hpp"
#include "gljel/el.hpp"
#include "gljel/montecarlo.hpp"

namespace gljel {

// key/value pairs echoed into every output so a result file identifies the
// run that produced it (version, seed, statistical configuration).
using Meta = std::vector<std::pair<std::string, std::string>>;

inline const char* quantile_mode_name(QuantileMode m) {
    switch (m) {
        case QuantileMode::per_sample: return "per_sample";
        case QuantileMode::pooled: return "pooled";
        case QuantileMode::true_quantile: return "true_quantile";
    }
    return "?";
}

namespace detail {

inline std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

inline std::string num(double v) { return fmt("%.10g", v); }
inline std::string rate6(double v) { return fmt("%.6f", v); }
inline const char* yn(bool b) { return b ? "true" : "false"; }

inline std::string meta_comment(const Meta& meta) {
    std::string out;
    for (const auto& [k, v] : meta) {
        out += "# " + k + "=" + v + "\n";
    }
    return out;
}

inline nlohmann::ordered_json meta_json(const Meta& meta) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, v] : meta) j[k] = v;
    return j;
}

} // namespace detail

// --- hypothesis test results ------------------------------------------------

inline std::string test_results_csv(const std::vector<TestResult>& rows, const Meta& meta) {
    std::string out = detail::meta_comment(meta);
    out += "method,t,n1,n2,statistic,p_value,reject,alpha,hull_ok,degenerate\n";
    for (const auto& r : rows) {
        out += std::string(method_name(r.method)) + "," + detail::num(r.t) + "," +
               std::to_string(r.n1) + "," + std::to_string(r.n2) + "," +
               detail::num(r.statistic) + "," + detail::num(r.p_value) + "," +
               detail::yn(r.reject) + "," + detail::num(r.alpha) + "," +
               detail::yn(r.hull_ok) + "," + detail::yn(r.degenerate) + "\n";
    }
    return out;
}

inline std::string test_results_json(const std::vector<TestResult>& rows, const Meta& meta) {
    nlohmann::ordered_json j;
    j["provenance"] = detail::meta_json(meta);
    j["results"] = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json row;
        row["method"] = method_name(r.method);
        row["t"] = r.t;
        row["n1"] = r.n1;
        row["n2"] = r.n2;
        row["statistic"] = r.statistic; // +inf serializes as null (no hull point)
        row["p_value"] = r.p_value;
        row["reject"] = r.reject;
        row["alpha"] = r.alpha;
        row["hull_ok"] = r.hull_ok;
        row["degenerate"] = r.degenerate;
        j["results"].push_back(std::move(row));
    }
    return j.dump(2) + "\n";
}

inline std::string test_results_plain(const std::vector<TestResult>& rows, const Meta& meta) {
    std::string out;
    for (const auto& [k, v] : meta) out += k + " = " + v + "\n";
    if (!meta.empty()) out += "\n";
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-6s %8s %12s %12s %8s %9s\n",
                  "method", "t", "statistic", "p_value", "reject", "hull_ok");
    out += buf;
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%-6s %8.4f %12.6g %12.6g %8s %9s\n",
                      method_name(r.method), r.t, r.statistic, r.p_value,
                      detail::yn(r.reject), detail::yn(r.hull_ok));
        out += buf;
    }
    return out;
}

// --- curve tables -------------------------------------------------------------

// analytic: per-row population ordinates, empty when no reference family given.
inline std::string curve_csv(const std::vector<CurveRow>& rows,
                             const std::vector<double>& analytic, const Meta& meta) {
    std::string out = detail::meta_comment(meta);
    out += analytic.empty() ? "t,lorenz,gl\n" : "t,lorenz,gl,analytic_gl\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out += detail::num(rows[i].t) + "," + detail::num(rows[i].lorenz) + "," +
               detail::num(rows[i].gl);
        if (!analytic.empty()) out += "," + detail::num(analytic[i]);
        out += "\n";
    }
    return out;
}

inline std::string curve_json(const std::vector<CurveRow>& rows,
                              const std::vector<double>& analytic, const Meta& meta) {
    nlohmann::ordered_json j;
    j["provenance"] = detail::meta_json(meta);
    j["curve"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        nlohmann::ordered_json row;
        row["t"] = rows[i].t;
        row["lorenz"] = rows[i].lorenz;
        row["gl"] = rows[i].gl;
        if (!analytic.empty()) row["analytic_gl"] = analytic[i];
        j["curve"].push_back(std::move(row));
    }
    return j.dump(2) + "\n";
}

inline std::string curve_plain(const std::vector<CurveRow>& rows,
                               const std::vector<double>& analytic, const Meta& meta) {
    std::string out;
    for (const auto& [k, v] : meta) out += k + " = " + v + "\n";
    if (!meta.empty()) out += "\n";
    char buf[160];
    if (analytic.empty()) {
        std::snprintf(buf, sizeof(buf), "%8s %12s %12s\n", "t", "lorenz", "gl");
        out += buf;
        for (const auto& r : rows) {
            std::snprintf(buf, sizeof(buf), "%8.4f %12.6g %12.6g\n", r.t, r.lorenz, r.gl);
            out += buf;
        }
    }
    else {
        std::snprintf(buf, sizeof(buf), "%8s %12s %12s %12s\n", "t", "lorenz", "gl", "analytic_gl");
        out += buf;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%8.4f %12.6g %12.6g %12.6g\n",
                          rows[i].t, rows[i].lorenz, rows[i].gl, analytic[i]);
            out += buf;
        }
    }
    return out;
}

// --- simulation tables ----------------------------------------------------------

inline std::string simtable_csv(const SimTable& table, const Meta& meta) {
    std::string out = detail::meta_comment(meta);
    out += "method,t,n1,n2,rate,se,hull_fail_rate\n";
    for (const auto& r : table.rows) {
        out += std::string(method_name(r.method)) + "," + detail::num(r.t) + "," +
               std::to_string(r.n1) + "," + std::to_string(r.n2) + "," +
               detail::rate6(r.rate) + "," + detail::rate6(r.se) + "," +
               detail::rate6(r.hull_fail_rate) + "\n";
    }
    return out;
}

inline std::string simtable_json(const SimTable& table, const Meta& meta) {
    nlohmann::ordered_json j;
    j["provenance"] = detail::meta_json(meta);
    j["failures"] = table.failures;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : table.rows) {
        nlohmann::ordered_json row;
        row["method"] = method_name(r.method);
        row["t"] = r.t;
        row["n1"] = r.n1;
        row["n2"] = r.n2;
        row["rate"] = r.rate;
        row["se"] = r.se;
        row["hull_fail_rate"] = r.hull_fail_rate;
        j["rows"].push_back(std::move(row));
    }
    return j.dump(2) + "\n";
}

inline std::string simtable_plain(const SimTable& table, const Meta& meta) {
    std::string out;
    for (const auto& [k, v] : meta) out += k + " = " + v + "\n";
    if (!meta.empty()) out += "\n";
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-6s %8s %5s %5s %10s %10s %15s\n",
                  "method", "t", "n1", "n2", "rate", "se", "hull_fail_rate");
    out += buf;
    for (const auto& r : table.rows) {
        std::snprintf(buf, sizeof(buf), "%-6s %8.4f %5zu %5zu %10.6f %10.6f %15.6f\n",
                      method_name(r.method), r.t, r.n1, r.n2, r.rate, r.se, r.hull_fail_rate);
        out += buf;
    }
    if (table.failures > 0) {
        out += "solver non-convergences: " + std::to_string(table.failures) + "\n";
    }
    return out;
}

} // namespace gljel
