#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "gljel/distributions.hpp"
#include "gljel/el.hpp"
#include "gljel/sample.hpp"

namespace gljel {

struct SimConfig {
    DistSpec dist_x;
    DistSpec dist_y;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    TGrid t_grid;
    std::size_t reps = 1000;
    double alpha = 0.05;
    bool run_jel = true;
    bool run_ajel = true;
    std::uint64_t seed = 0;
    // Simulations know the generating populations, so thresholds default to
    // the exact population quantiles: that is the regime in which the
    // chi-square(1) limit holds and null rejection sits at the nominal level.
    // Estimated thresholds (per_sample, pooled) stay available as sensitivity
    // modes; per_sample freezes its threshold into the pseudo-values and
    // over-rejects because the quantile-estimation variance goes unaccounted.
    QuantileMode quantile_mode = QuantileMode::true_quantile;
};

struct SimRow {
    Method method = Method::jel;
    double t = 0.0;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    double rate = 0.0;
    double se = 0.0;
    double hull_fail_rate = 0.0;
};

struct SimTable {
    std::vector<SimRow> rows;
    std::size_t reps = 0;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    QuantileMode quantile_mode = QuantileMode::true_quantile;
    std::string label;
    std::size_t failures = 0; // solver non-convergences across all cells
};

/// Binomial standard error sqrt(r*(1-r)/reps) of an estimated rate.
inline double standard_error(double rate, std::size_t reps) {
    if (reps == 0) throw std::invalid_argument("reps must be positive");
    if (!(rate >= 0.0 && rate <= 1.0)) throw std::domain_error("rate must lie in [0,1]");
    return std::sqrt(rate * (1.0 - rate) / static_cast<double>(reps));
}

namespace detail {

struct CellCounts {
    std::vector<std::uint64_t> rejections; // per (method-slot, t-index)
    std::vector<std::uint64_t> hull_fails;
    std::uint64_t failures = 0;

    explicit CellCounts(std::size_t cells) : rejections(cells, 0), hull_fails(cells, 0) {}

    void merge(const CellCounts& o) {
        for (std::size_t i = 0; i < rejections.size(); ++i) {
            rejections[i] += o.rejections[i];
            hull_fails[i] += o.hull_fails[i];
        }
        failures += o.failures;
    }
};

} // namespace detail

// Runs config.reps replications; replication r (1-based) owns stream
// (seed, r) and draws the x sample followed by the y sample from it, so the
// result is a pure function of the config no matter how replications are
// scheduled across workers. Hull failures reject by construction (the
// statistic is +infinity) and are also tallied separately per cell.
inline SimTable run_simulation(const SimConfig& cfg, unsigned workers = 1) {
    if (cfg.reps == 0) throw std::invalid_argument("reps must be positive");
    if (cfg.n1 < 2 || cfg.n2 < 2) throw std::invalid_argument("each sample needs at least two observations");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw std::domain_error("alpha must lie in (0,1)");
    if (!cfg.run_jel && !cfg.run_ajel) throw std::invalid_argument("no method selected");
    if (workers == 0) workers = 1;

    std::vector<Method> methods;
    if (cfg.run_jel) methods.push_back(Method::jel);
    if (cfg.run_ajel) methods.push_back(Method::ajel);
    const std::size_t nt = cfg.t_grid.size();
    const std::size_t cells = methods.size() * nt;

    auto run_range = [&](std::uint64_t first_rep, std::uint64_t stride, detail::CellCounts& counts) {
        for (std::uint64_t r = first_rep; r <= cfg.reps; r += stride) {
            Rng rng({cfg.seed, r});
            std::vector<double> xv(cfg.n1), yv(cfg.n2);
            for (double& v : xv) v = rng.draw(cfg.dist_x);
            for (double& v : yv) v = rng.draw(cfg.dist_y);
            TwoSamples s(Sample(std::move(xv)), Sample(std::move(yv)));
            for (std::size_t ti = 0; ti < nt; ++ti) {
                const double t = cfg.t_grid.points()[ti];
                TruncatedPair tp = cfg.quantile_mode == QuantileMode::true_quantile
                    ? truncate_at(s, t, cfg.dist_x.quantile(t), cfg.dist_y.quantile(t))
                    : truncate(s, t, cfg.quantile_mode);
                PseudoValueSet pv = pseudo_values(tp);
                for (std::size_t mi = 0; mi < methods.size(); ++mi) {
                    ELSolution sol = methods[mi] == Method::jel ? jel_solve(pv) : ajel_solve(pv);
                    const std::size_t cell = mi * nt + ti;
                    if (chi2_1_p_value(sol.log_lr) < cfg.alpha) counts.rejections[cell]++;
                    if (!sol.hull_ok) counts.hull_fails[cell]++;
                    if (sol.hull_ok && !sol.converged) counts.failures++;
                }
            }
        }
    };

    detail::CellCounts total(cells);
    if (workers == 1) {
        run_range(1, 1, total);
    }
    else {
        std::vector<detail::CellCounts> local(workers, detail::CellCounts(cells));
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] { run_range(w + 1, workers, local[w]); });
        }
        for (auto& th : pool) th.join();
        for (const auto& lc : local) total.merge(lc);
    }

    SimTable table;
    table.reps = cfg.reps;
    table.alpha = cfg.alpha;
    table.seed = cfg.seed;
    table.quantile_mode = cfg.quantile_mode;
    table.failures = total.failures;
    const double reps = static_cast<double>(cfg.reps);
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
        for (std::size_t ti = 0; ti < nt; ++ti) {
            const std::size_t cell = mi * nt + ti;
            SimRow row;
            row.method = methods[mi];
            row.t = cfg.t_grid.points()[ti];
            row.n1 = cfg.n1;
            row.n2 = cfg.n2;
            row.rate = static_cast<double>(total.rejections[cell]) / reps;
            row.se = standard_error(row.rate, cfg.reps);
            row.hull_fail_rate = static_cast<double>(total.hull_fails[cell]) / reps;
            table.rows.push_back(row);
        }
    }
    return table;
}

// The six built-in studies: three null pairs (equal chi-square, exponential,
// half-normal populations) and three alternative pairs, each swept over the
// size pairs (20,30), (40,50), (75,75), (100,100) on the decile grid.
enum class Study { t1, t2, t3, t4, t5, t6 };

inline const char* study_name(Study s) {
    switch (s) {
        case Study::t1: return "T1";
        case Study::t2: return "T2";
        case Study::t3: return "T3";
        case Study::t4: return "T4";
        case Study::t5: return "T5";
        case Study::t6: return "T6";
    }
    return "?";
}

inline std::pair<DistSpec, DistSpec> study_populations(Study s) {
    switch (s) {
        case Study::t1: return {DistSpec(Family::chi_square, 4.0), DistSpec(Family::chi_square, 4.0)};
        case Study::t2: return {DistSpec(Family::exponential, 4.0), DistSpec(Family::exponential, 4.0)};
        case Study::t3: return {DistSpec(Family::half_normal, 1.0), DistSpec(Family::half_normal, 1.0)};
        case Study::t4: return {DistSpec(Family::chi_square, 4.0), DistSpec(Family::chi_square, 5.5)};
        case Study::t5: return {DistSpec(Family::exponential, 4.0), DistSpec(Family::exponential, 2.0)};
        case Study::t6: return {DistSpec(Family::half_normal, 1.0), DistSpec(Family::half_normal, 1.5)};
    }
    throw std::invalid_argument("unknown study");
}

inline const std::vector<std::pair<std::size_t, std::size_t>>& study_sizes() {
    static const std::vector<std::pair<std::size_t, std::size_t>> sizes = {
        {20, 30}, {40, 50}, {75, 75}, {100, 100}};
    return sizes;
}

inline TGrid decile_grid() {
    std::vector<double> pts(9);
    for (int i = 1; i <= 9; ++i) pts[i - 1] = static_cast<double>(i) / 10.0;
    return TGrid(std::move(pts));
}

/// All four size pairs of one study, concatenated. Size pair p runs with
/// seed + p so the pairs use disjoint stream families.
inline SimTable table_suite(Study study, std::size_t reps, std::uint64_t seed,
                            unsigned workers = 1, double alpha = 0.05,
                            QuantileMode mode = QuantileMode::true_quantile) {
    auto [dx, dy] = study_populations(study);
    SimTable combined;
    combined.reps = reps;
    combined.alpha = alpha;
    combined.seed = seed;
    combined.quantile_mode = mode;
    combined.label = study_name(study);
    std::uint64_t pair_index = 0;
    for (auto [n1, n2] : study_sizes()) {
        SimConfig cfg{dx, dy, n1, n2, decile_grid(), reps, alpha,
                      true, true, seed + pair_index, mode};
        SimTable part = run_simulation(cfg, workers);
        combined.rows.insert(combined.rows.end(), part.rows.begin(), part.rows.end());
        combined.failures += part.failures;
        ++pair_index;
    }
    return combined;
}

} // namespace gljel
