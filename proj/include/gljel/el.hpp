#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "gljel/jackknife.hpp"
#include "gljel/special.hpp"

namespace gljel {

struct ELSolution {
    double lambda = 0.0;
    std::vector<double> weights;
    double log_lr = 0.0;
    bool converged = false;
    bool hull_ok = false;    // zero lies strictly inside the hull of the constraints
    bool degenerate = false; // every constraint value is exactly zero
    int iterations = 0;
};

namespace detail {

constexpr double el_residual_tol = 1e-10;
constexpr double el_polish_tol = 1e-14;
constexpr int el_max_iterations = 100;

inline double el_dual(std::span<const double> g, double lambda) {
    double s = 0.0;
    for (double gi : g) s += gi / (1.0 + lambda * gi);
    return s / static_cast<double>(g.size());
}

inline double el_dual_deriv(std::span<const double> g, double lambda) {
    double s = 0.0;
    for (double gi : g) {
        double r = gi / (1.0 + lambda * gi);
        s += r * r;
    }
    return -s / static_cast<double>(g.size());
}

} // namespace detail

// Profile the empirical likelihood for a zero mean: find the multiplier
// lambda with (1/m) sum g_k/(1 + lambda g_k) = 0. The dual is strictly
// decreasing on (-1/max g, -1/min g) and blows up to +/-inf at the ends, so a
// Newton iteration safeguarded by bisection inside that bracket always lands
// on the unique root.
inline ELSolution solve_lambda(std::span<const double> g) {
    if (g.empty()) {
        throw std::invalid_argument("empty constraint vector");
    }
    const std::size_t m = g.size();
    double gmin = g[0], gmax = g[0];
    for (double gi : g) {
        if (!std::isfinite(gi)) throw std::invalid_argument("non-finite constraint value");
        gmin = std::min(gmin, gi);
        gmax = std::max(gmax, gi);
    }

    ELSolution sol;
    if (gmin == 0.0 && gmax == 0.0) {
        sol.lambda = 0.0;
        sol.weights.assign(m, 1.0 / static_cast<double>(m));
        sol.log_lr = 0.0;
        sol.converged = true;
        sol.hull_ok = true;
        sol.degenerate = true;
        return sol;
    }
    if (!(gmin < 0.0 && gmax > 0.0)) {
        // No weight vector with sum p*g = 0 exists: the likelihood ratio is 0.
        sol.lambda = std::numeric_limits<double>::quiet_NaN();
        sol.log_lr = std::numeric_limits<double>::infinity();
        sol.converged = false;
        sol.hull_ok = false;
        return sol;
    }
    sol.hull_ok = true;

    // All reductions run over an ascending copy: one accumulation order per
    // multiset, making the solution exactly permutation invariant.
    std::vector<double> gs(g.begin(), g.end());
    std::sort(gs.begin(), gs.end());

    double lo = -1.0 / gmax;
    double hi = -1.0 / gmin;
    const double pad = 1e-12 * (hi - lo);
    lo += pad;
    hi -= pad;

    // Iterate past the convergence threshold down to el_polish_tol (or a
    // double-precision fixed point): sum(p) - 1 equals -lambda * residual, so
    // the extra Newton steps buy the weight identities near machine accuracy.
    double lambda = 0.0; // always interior: lo < 0 < hi
    double prev = std::numeric_limits<double>::quiet_NaN();
    double f = 0.0;
    int it = 0;
    for (; it < detail::el_max_iterations; ++it) {
        f = detail::el_dual(gs, lambda);
        if (std::abs(f) < detail::el_polish_tol) break;
        if (f > 0.0) lo = lambda; else hi = lambda;
        double step = lambda - f / detail::el_dual_deriv(gs, lambda);
        double next = (step > lo && step < hi) ? step : 0.5 * (lo + hi);
        if (next == lambda || next == prev) break; // stalled at the precision floor
        prev = lambda;
        lambda = next;
    }
    f = detail::el_dual(gs, lambda);
    sol.converged = std::abs(f) < detail::el_residual_tol;

    sol.lambda = lambda;
    sol.iterations = it;
    sol.weights.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        sol.weights[k] = 1.0 / (static_cast<double>(m) * (1.0 + lambda * g[k]));
    }
    double ll = 0.0;
    for (double gi : gs) ll += std::log1p(lambda * gi);
    sol.log_lr = std::max(0.0, 2.0 * ll);
    return sol;
}

/// -2 log empirical likelihood ratio for mean(pseudo-values) = 0.
inline ELSolution jel_solve(const PseudoValueSet& pv) {
    return solve_lambda(pv.values);
}

inline double jel_statistic(const PseudoValueSet& pv) {
    return jel_solve(pv).log_lr;
}

/// Adjustment factor for the augmented likelihood: max{1, log(n)/2}.
inline double adjustment_factor(std::size_t n) {
    return std::max(1.0, 0.5 * std::log(static_cast<double>(n)));
}

// Adjusted variant: append the pseudo-constraint g_{n+1} = -a_n * mean(g)
// before profiling. Zero then always lies inside the hull, so the statistic
// is finite for every data set.
inline ELSolution ajel_solve(const PseudoValueSet& pv) {
    std::vector<double> g = pv.values;
    const std::size_t n = g.size();
    const double gbar = detail::canonical_sum(g) / static_cast<double>(n);
    g.push_back(-adjustment_factor(n) * gbar);
    return solve_lambda(g);
}

inline double ajel_statistic(const PseudoValueSet& pv) {
    return ajel_solve(pv).log_lr;
}

/// Upper-tail p-value against the chi-square(1) reference distribution.
inline double chi2_1_p_value(double statistic) {
    return chi2_1_sf(statistic);
}

enum class Method { jel, ajel };

inline const char* method_name(Method m) {
    return m == Method::jel ? "JEL" : "AJEL";
}

struct TestResult {
    Method method = Method::jel;
    double t = 0.0;
    double statistic = 0.0;
    double p_value = 1.0;
    bool reject = false;
    double alpha = 0.05;
    bool hull_ok = true;
    bool degenerate = false;
    bool converged = true;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
};

inline TestResult run_test_at(const TwoSamples& s, double t, double psi_x, double psi_y,
                              Method method, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::domain_error("alpha must lie in (0,1)");
    }
    TruncatedPair tp = truncate_at(s, t, psi_x, psi_y);
    PseudoValueSet pv = pseudo_values(tp);
    ELSolution sol = method == Method::jel ? jel_solve(pv) : ajel_solve(pv);

    TestResult r;
    r.method = method;
    r.t = t;
    r.statistic = sol.log_lr;
    r.p_value = chi2_1_p_value(sol.log_lr);
    r.alpha = alpha;
    r.reject = r.p_value < alpha;
    r.hull_ok = sol.hull_ok;
    r.degenerate = sol.degenerate;
    r.converged = sol.converged;
    r.n1 = s.x.size();
    r.n2 = s.y.size();
    return r;
}

inline TestResult run_test(const TwoSamples& s, double t, Method method, double alpha = 0.05,
                           QuantileMode mode = QuantileMode::per_sample) {
    TruncatedPair tp = truncate(s, t, mode); // rejects true_quantile mode
    return run_test_at(s, t, tp.psi_x, tp.psi_y, method, alpha);
}

} // namespace gljel
