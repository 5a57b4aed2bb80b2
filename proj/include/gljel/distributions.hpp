#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "gljel/sample.hpp"
#include "gljel/special.hpp"

namespace gljel {

enum class Family { chi_square, exponential, half_normal };

// A generating distribution for the simulation studies. The exponential
// family is parameterized by its MEAN (callers working in rates convert
// before constructing the spec).
struct DistSpec {
    Family family;
    double param;

    DistSpec(Family f, double p) : family(f), param(p) {
        if (!(param > 0.0) || !std::isfinite(param)) {
            throw std::invalid_argument("distribution parameter must be positive and finite");
        }
    }

    double mean() const {
        switch (family) {
            case Family::chi_square: return param;
            case Family::exponential: return param;
            case Family::half_normal: return param * std::sqrt(2.0 / M_PI);
        }
        return 0.0;
    }

    double quantile(double t) const {
        if (!(t >= 0.0 && t <= 1.0)) {
            throw std::domain_error("t must lie in [0,1]");
        }
        switch (family) {
            case Family::chi_square:
                return chisq_quantile(t, param);
            case Family::exponential:
                return t == 1.0 ? std::numeric_limits<double>::infinity()
                                : -param * std::log1p(-t);
            case Family::half_normal:
                return param * normal_quantile(0.5 * (1.0 + t));
        }
        return 0.0;
    }

    std::string label() const {
        const char* name = family == Family::chi_square ? "chisq"
                         : family == Family::exponential ? "exp"
                                                         : "halfnormal";
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%s:%.10g", name, param);
        return buf;
    }
};

// Identifies one reproducible draw sequence. Distinct (seed, stream_id)
// pairs give independent streams; the same pair always replays the same
// sequence, which is what makes the simulation harness scheduling-agnostic.
struct SeededStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

class Rng {
public:
    explicit Rng(SeededStream s) {
        std::seed_seq seq{static_cast<std::uint32_t>(s.seed),
                          static_cast<std::uint32_t>(s.seed >> 32),
                          static_cast<std::uint32_t>(s.stream_id),
                          static_cast<std::uint32_t>(s.stream_id >> 32)};
        eng_.seed(seq);
    }

    std::uint64_t raw() { return eng_(); }

    /// Uniform draw strictly inside (0,1); never returns an endpoint.
    double uniform01() {
        return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform integer on [0, m), bias-free via rejection.
    std::uint64_t bounded(std::uint64_t m) {
        if (m == 0) throw std::invalid_argument("bounded(0)");
        std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % m;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % m;
    }

    double normal() { return normal_quantile(uniform01()); }

    double exponential(double mean) { return -mean * std::log(uniform01()); }

    // Marsaglia-Tsang squeeze method; handles shape < 1 by boosting.
    double gamma(double shape, double scale) {
        if (shape < 1.0) {
            double u = uniform01();
            return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double z = normal();
            double v = 1.0 + c * z;
            if (v <= 0.0) continue;
            v = v * v * v;
            double u = uniform01();
            if (u < 1.0 - 0.0331 * z * z * z * z) return scale * d * v;
            if (std::log(u) < 0.5 * z * z + d * (1.0 - v + std::log(v))) return scale * d * v;
        }
    }

    double chi_square(double df) { return gamma(0.5 * df, 2.0); }

    double half_normal(double sigma) { return sigma * std::abs(normal()); }

    double draw(const DistSpec& spec) {
        switch (spec.family) {
            case Family::chi_square: return chi_square(spec.param);
            case Family::exponential: return exponential(spec.param);
            case Family::half_normal: return half_normal(spec.param);
        }
        return 0.0;
    }

private:
    std::mt19937_64 eng_;
};

inline Sample sample(const DistSpec& spec, std::size_t n, SeededStream stream) {
    if (n == 0) throw std::invalid_argument("empty sample");
    Rng rng(stream);
    std::vector<double> v(n);
    for (double& vi : v) vi = rng.draw(spec);
    return Sample(std::move(v));
}

/// Population generalized Lorenz ordinate: integral of x dF(x) over x up to
/// the t-quantile. Closed forms: exponential mu*(t + (1-t)log(1-t)); half
/// normal sigma*sqrt(2/pi)*(1 - exp(-q^2/2)) with q the standard normal
/// (1+t)/2 quantile; chi-square df * F_{df+2}(F_df^{-1}(t)).
inline double analytic_gl(const DistSpec& spec, double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw std::domain_error("t must lie in [0,1]");
    }
    switch (spec.family) {
        case Family::chi_square:
            if (t == 1.0) return spec.param;
            return spec.param * chisq_cdf(chisq_quantile(t, spec.param), spec.param + 2.0);
        case Family::exponential:
            if (t == 1.0) return spec.param;
            return spec.param * (t + (1.0 - t) * std::log1p(-t));
        case Family::half_normal: {
            if (t == 1.0) return spec.mean();
            double q = normal_quantile(0.5 * (1.0 + t));
            return spec.param * std::sqrt(2.0 / M_PI) * (1.0 - std::exp(-0.5 * q * q));
        }
    }
    return 0.0;
}

inline double analytic_quantile(const DistSpec& spec, double t) { return spec.quantile(t); }

} // namespace gljel
