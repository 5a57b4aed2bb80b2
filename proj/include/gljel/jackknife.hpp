#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gljel/curves.hpp"
#include "gljel/sample.hpp"

namespace gljel {

namespace detail {

/// Sum in ascending value order: one fixed accumulation order for every
/// permutation of the input, so results are exactly permutation invariant.
inline double canonical_sum(const std::vector<double>& v) {
    std::vector<double> s(v);
    std::sort(s.begin(), s.end());
    double total = 0.0;
    for (double x : s) total += x;
    return total;
}

} // namespace detail

// How the truncation thresholds psi_x, psi_y are chosen for a given t:
// from each sample's own empirical quantile, from the pooled sample's
// empirical quantile, or supplied externally (simulation studies where the
// generating distribution's quantile is known).
enum class QuantileMode { per_sample, pooled, true_quantile };

struct TwoSamples {
    Sample x;
    Sample y;

    TwoSamples(Sample x_, Sample y_) : x(std::move(x_)), y(std::move(y_)) {
        if (x.size() < 2 || y.size() < 2) {
            throw std::invalid_argument("each sample needs at least two observations");
        }
    }
};

/// Two-sample kernel h(x, y) = x*I(x <= psi_x) - y*I(y <= psi_y).
inline double kernel(double x, double y, double psi_x, double psi_y) {
    return (x <= psi_x ? x : 0.0) - (y <= psi_y ? y : 0.0);
}

// Both samples truncated at their thresholds: entries are x_i*I(x_i <= psi_x)
// and y_j*I(y_j <= psi_y), in the original observation order.
struct TruncatedPair {
    std::vector<double> x_trunc;
    std::vector<double> y_trunc;
    double psi_x = 0.0;
    double psi_y = 0.0;
    double t = 0.0;
};

inline TruncatedPair truncate_at(const TwoSamples& s, double t, double psi_x, double psi_y) {
    detail::check_t(t);
    TruncatedPair out;
    out.psi_x = psi_x;
    out.psi_y = psi_y;
    out.t = t;
    out.x_trunc.reserve(s.x.size());
    out.y_trunc.reserve(s.y.size());
    for (double v : s.x.values()) out.x_trunc.push_back(v <= psi_x ? v : 0.0);
    for (double v : s.y.values()) out.y_trunc.push_back(v <= psi_y ? v : 0.0);
    return out;
}

inline TruncatedPair truncate(const TwoSamples& s, double t, QuantileMode mode = QuantileMode::per_sample) {
    detail::check_t(t);
    double psi_x = 0.0;
    double psi_y = 0.0;
    switch (mode) {
        case QuantileMode::per_sample:
            psi_x = empirical_quantile(s.x, t);
            psi_y = empirical_quantile(s.y, t);
            break;
        case QuantileMode::pooled: {
            std::vector<double> pooled = s.x.values();
            pooled.insert(pooled.end(), s.y.values().begin(), s.y.values().end());
            double psi = empirical_quantile(Sample(std::move(pooled)), t);
            psi_x = psi_y = psi;
            break;
        }
        case QuantileMode::true_quantile:
            throw std::invalid_argument("true-quantile truncation needs explicit thresholds; use truncate_at");
    }
    return truncate_at(s, t, psi_x, psi_y);
}

/// Two-sample U-statistic of the truncated data: mean(x_trunc) - mean(y_trunc).
inline double u_statistic(const TruncatedPair& p) {
    if (p.x_trunc.empty() || p.y_trunc.empty()) {
        throw std::invalid_argument("empty sample");
    }
    double sx = 0.0, sy = 0.0;
    for (double v : p.x_trunc) sx += v;
    for (double v : p.y_trunc) sy += v;
    return sx / static_cast<double>(p.x_trunc.size()) - sy / static_cast<double>(p.y_trunc.size());
}

// Jackknife pseudo-values V_k = n*U - (n-1)*U^(-k), k = 1..n over the merged
// sample (x block first), where U^(-k) re-evaluates the U-statistic with
// observation k deleted. Their mean equals U exactly.
struct PseudoValueSet {
    std::vector<double> values;
    double u_stat = 0.0;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    double t = 0.0;
};

inline PseudoValueSet pseudo_values(const TruncatedPair& p) {
    const std::size_t n1 = p.x_trunc.size();
    const std::size_t n2 = p.y_trunc.size();
    if (n1 < 2 || n2 < 2) {
        throw std::invalid_argument("jackknife undefined: each sample needs at least two observations");
    }
    const double n = static_cast<double>(n1 + n2);
    // Accumulate in ascending order so the sums -- and hence every statistic
    // downstream -- are bit-identical under any shuffle of the observations.
    const double sx = detail::canonical_sum(p.x_trunc);
    const double sy = detail::canonical_sum(p.y_trunc);
    const double u = sx / static_cast<double>(n1) - sy / static_cast<double>(n2);
    const double mean_y = sy / static_cast<double>(n2);
    const double mean_x = sx / static_cast<double>(n1);

    PseudoValueSet out;
    out.values.reserve(n1 + n2);
    out.u_stat = u;
    out.n1 = n1;
    out.n2 = n2;
    out.t = p.t;
    for (std::size_t k = 0; k < n1; ++k) {
        double u_minus = (sx - p.x_trunc[k]) / static_cast<double>(n1 - 1) - mean_y;
        out.values.push_back(n * u - (n - 1.0) * u_minus);
    }
    for (std::size_t k = 0; k < n2; ++k) {
        double u_minus = mean_x - (sy - p.y_trunc[k]) / static_cast<double>(n2 - 1);
        out.values.push_back(n * u - (n - 1.0) * u_minus);
    }
    return out;
}

/// Expectation of the k-th pseudo-value (k 1-based, x block first) when the
/// truncated-mean difference has expectation theta:
/// (n*theta/(n-2)) * ((n2-1)/n1) for k <= n1, and symmetrically otherwise.
inline double expected_pseudo_value(double theta, std::size_t n1, std::size_t n2, std::size_t k) {
    if (n1 < 2 || n2 < 2) {
        throw std::invalid_argument("jackknife undefined: each sample needs at least two observations");
    }
    const std::size_t n = n1 + n2;
    if (k < 1 || k > n) {
        throw std::out_of_range("pseudo-value index out of range");
    }
    const double front = static_cast<double>(n) * theta / static_cast<double>(n - 2);
    if (k <= n1) {
        return front * (static_cast<double>(n2 - 1) / static_cast<double>(n1));
    }
    return front * (static_cast<double>(n1 - 1) / static_cast<double>(n2));
}

} // namespace gljel
