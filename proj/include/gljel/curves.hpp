#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gljel/sample.hpp"

namespace gljel {

namespace detail {

// Index m of the order statistic realizing the left-continuous inverse of the
// empirical CDF: m = ceil(n*t), clamped to [1,n]. The small relative guard
// keeps n*t values that are integers up to floating-point noise (e.g.
// 100*0.07) from being bumped to the next order statistic.
inline std::size_t quantile_index(std::size_t n, double t) {
    double nt = static_cast<double>(n) * t;
    double guarded = nt - 1e-9 * std::max(1.0, nt);
    double m = std::ceil(guarded);
    if (m < 1.0) return 1;
    if (m > static_cast<double>(n)) return n;
    return static_cast<std::size_t>(m);
}

inline void check_t(double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw std::domain_error("t must lie in [0,1]");
    }
}

} // namespace detail

/// Empirical quantile inf{x : F_n(x) >= t}; t = 0 yields the sample minimum.
inline double empirical_quantile(const Sample& s, double t) {
    detail::check_t(t);
    return s.sorted()[detail::quantile_index(s.size(), t) - 1];
}

/// Generalized Lorenz ordinate (1/n) * sum of observations <= the empirical
/// t-quantile. Ties with the quantile are all included.
inline double gl_ordinate(const Sample& s, double t) {
    detail::check_t(t);
    double psi = empirical_quantile(s, t);
    return s.sum_below(psi) / static_cast<double>(s.size());
}

/// Lorenz ordinate: generalized Lorenz ordinate scaled by the sample mean.
inline double lorenz_ordinate(const Sample& s, double t) {
    double mu = s.mean();
    if (!(mu > 0.0)) {
        throw std::domain_error("nonpositive mean");
    }
    return gl_ordinate(s, t) / mu;
}

struct CurveRow {
    double t;
    double lorenz;
    double gl;
};

inline std::vector<CurveRow> curve_table(const Sample& s, const TGrid& grid) {
    double mu = s.mean();
    if (!(mu > 0.0)) {
        throw std::domain_error("nonpositive mean");
    }
    std::vector<CurveRow> rows;
    rows.reserve(grid.size());
    for (double t : grid.points()) {
        double gl = gl_ordinate(s, t);
        rows.push_back({t, gl / mu, gl});
    }
    return rows;
}

} // namespace gljel
