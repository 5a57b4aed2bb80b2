#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace gljel {

inline double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

inline double normal_quantile(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error("probability must lie in [0,1]");
    }
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p);
}

inline double chisq_cdf(double x, double df) {
    if (df <= 0.0) throw std::domain_error("degrees of freedom must be positive");
    if (x <= 0.0) return 0.0;
    return boost::math::gamma_p(df / 2.0, x / 2.0);
}

inline double chisq_quantile(double p, double df) {
    if (df <= 0.0) throw std::domain_error("degrees of freedom must be positive");
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error("probability must lie in [0,1]");
    }
    if (p == 0.0) return 0.0;
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    return 2.0 * boost::math::gamma_p_inv(df / 2.0, p);
}

/// Upper tail P(chi^2_1 > x) = 2*(1 - Phi(sqrt(x))) = erfc(sqrt(x/2)).
inline double chi2_1_sf(double x) {
    if (std::isnan(x) || x < 0.0) {
        throw std::domain_error("chi-square statistic must be nonnegative");
    }
    if (std::isinf(x)) return 0.0;
    return std::erfc(std::sqrt(x / 2.0));
}

} // namespace gljel
