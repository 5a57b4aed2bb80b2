#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "gljel/special.hpp"
#include "oracles.hpp"

using namespace gljel;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

// Reference constants frozen from a 50-digit evaluation before the build.

TEST_CASE("normal cdf") {
    REQUIRE(normal_cdf(0.0) == 0.5);
    REQUIRE_THAT(normal_cdf(1.0), WithinRel(0.84134474606854294859, 1e-14));
    REQUIRE_THAT(normal_cdf(-2.5), WithinRel(0.006209665325776135167, 1e-14));
    REQUIRE_THAT(normal_cdf(1.2) + normal_cdf(-1.2), WithinAbs(1.0, 1e-15));
}

TEST_CASE("normal quantile") {
    REQUIRE(normal_quantile(0.5) == 0.0);
    REQUIRE_THAT(normal_quantile(0.975), WithinRel(1.9599639845400542355, 1e-13));
    REQUIRE_THAT(normal_quantile(0.1), WithinRel(-1.281551565544600467, 1e-13));
    REQUIRE(normal_quantile(0.0) == -std::numeric_limits<double>::infinity());
    REQUIRE(normal_quantile(1.0) == std::numeric_limits<double>::infinity());
    REQUIRE_THROWS_WITH(normal_quantile(-0.1), "probability must lie in [0,1]");
    REQUIRE_THROWS_WITH(normal_quantile(1.1), "probability must lie in [0,1]");
    for (double p = 1e-8; p < 1.0; p = p * 2.0 + 0.013) {
        REQUIRE_THAT(normal_cdf(normal_quantile(p)), WithinAbs(p, 1e-9));
    }
}

TEST_CASE("chi-square cdf") {
    REQUIRE(chisq_cdf(0.0, 4.0) == 0.0);
    REQUIRE(chisq_cdf(-1.0, 4.0) == 0.0);
    REQUIRE_THAT(chisq_cdf(4.0, 4.0), WithinRel(0.59399415029016192432, 1e-13));
    REQUIRE_THAT(chisq_cdf(2.3, 5.5), WithinRel(0.14706054320100197306, 1e-13));
    REQUIRE_THAT(chisq_cdf(3.8414588206941236, 1.0), WithinRel(0.95, 1e-14));
    REQUIRE_THROWS_WITH(chisq_cdf(1.0, 0.0), "degrees of freedom must be positive");
}

TEST_CASE("chi-square cdf matches elementary-density quadrature") {
    for (double df : {1.0, 1.5, 4.0, 5.5}) {
        for (double x : {0.5, 2.0, 4.0, 9.0}) {
            REQUIRE_THAT(chisq_cdf(x, df), WithinAbs(oracle::chisq_cdf_quad(x, df), 1e-9));
        }
    }
}

TEST_CASE("chi-square quantile") {
    REQUIRE(chisq_quantile(0.0, 4.0) == 0.0);
    REQUIRE(chisq_quantile(1.0, 4.0) == std::numeric_limits<double>::infinity());
    REQUIRE_THAT(chisq_quantile(0.6, 4.0), WithinRel(4.0446264906493138319, 1e-13));
    REQUIRE_THAT(chisq_quantile(0.3, 5.5), WithinRel(3.4113983776250806166, 1e-13));
    REQUIRE_THROWS_WITH(chisq_quantile(0.5, -2.0), "degrees of freedom must be positive");
    REQUIRE_THROWS_WITH(chisq_quantile(1.5, 2.0), "probability must lie in [0,1]");
    for (double df : {1.0, 4.0, 5.5}) {
        for (double p = 1e-8; p < 1.0; p = p * 3.0 + 0.04) {
            REQUIRE_THAT(chisq_cdf(chisq_quantile(p, df), df), WithinAbs(p, 1e-9));
        }
    }
}

TEST_CASE("chi-square(1) tail probability") {
    REQUIRE(chi2_1_sf(0.0) == 1.0);
    REQUIRE_THAT(chi2_1_sf(3.841459), WithinAbs(0.05, 1e-5));
    REQUIRE_THAT(chi2_1_sf(3.841459), WithinRel(0.049999994653195765111, 1e-14));
    REQUIRE(chi2_1_sf(std::numeric_limits<double>::infinity()) == 0.0);
    REQUIRE_THROWS_WITH(chi2_1_sf(-0.5), "chi-square statistic must be nonnegative");
    REQUIRE_THROWS_WITH(chi2_1_sf(std::numeric_limits<double>::quiet_NaN()),
                        "chi-square statistic must be nonnegative");
    // Same quantity through the chi-square CDF route.
    for (double x : {0.1, 1.0, 2.7, 6.6}) {
        REQUIRE_THAT(chi2_1_sf(x), WithinAbs(1.0 - chisq_cdf(x, 1.0), 1e-12));
    }
}
