#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "transmin/errors.hpp"
#include "transmin/quadrature.hpp"
#include "transmin/random.hpp"

using namespace transmin;

TEST(Simpson, Examples) {
    EXPECT_NEAR(integrate_simpson([](double) { return 3.0; }, 0.0, 2.0).value, 6.0, 1e-14);
    EXPECT_NEAR(integrate_simpson([](double x) { return std::cos(x); }, 0.0, std::numbers::pi / 2).value, 1.0, 1e-10);
}

TEST(Simpson, PolynomialsUpToDegreeFive) {
    SplitMix64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        double c[6];
        for (double& x : c) x = rng.uniform(-3, 3);
        const double a = rng.uniform(-2, 0), b = rng.uniform(0, 2);
        auto p = [&](double x) { return c[0] + x * (c[1] + x * (c[2] + x * (c[3] + x * (c[4] + x * c[5])))); };
        auto P = [&](double x) {
            return x * (c[0] + x * (c[1] / 2 + x * (c[2] / 3 + x * (c[3] / 4 + x * (c[4] / 5 + x * c[5] / 6)))));
        };
        const QuadratureResult r = integrate_simpson(p, a, b);
        EXPECT_NEAR(r.value, P(b) - P(a), 1e-10);
        EXPECT_LE(r.error_estimate, 1e-10);
    }
}

TEST(Simpson, ReversedLimitsFlipSign) {
    auto f = [](double x) { return std::exp(-x * x); };
    const double fwd = integrate_simpson(f, -0.3, 1.1).value;
    const double rev = integrate_simpson(f, 1.1, -0.3).value;
    EXPECT_NEAR(fwd, -rev, 1e-14);
    EXPECT_EQ(integrate_simpson(f, 0.4, 0.4).value, 0.0);
}

TEST(Simpson, ErrorEstimateBoundedByTolerance) {
    for (double tol : {1e-6, 1e-9, 1e-12}) {
        QuadratureSpec spec;
        spec.abs_tol = tol;
        const QuadratureResult r = integrate_simpson([](double x) { return 1.0 / (1.0 + 25.0 * x * x); }, -1.0, 1.0, spec);
        EXPECT_LE(r.error_estimate, tol);
        EXPECT_NEAR(r.value, 2.0 / 5.0 * std::atan(5.0), 10 * tol);
    }
}

TEST(Simpson, Failures) {
    QuadratureSpec shallow;
    shallow.max_depth = 2;
    shallow.abs_tol = 1e-14;
    EXPECT_THROW(integrate_simpson([](double x) { return std::sin(50 * x); }, 0.0, 3.0, shallow), QuadratureFailure);
    EXPECT_THROW(integrate_simpson([](double x) { return 1.0 / std::sqrt(x - 0.5); }, 0.0, 1.0), DomainError);
    QuadratureSpec budget;
    budget.max_evaluations = 10;
    EXPECT_THROW(integrate_simpson([](double x) { return std::sin(50 * x); }, 0.0, 3.0, budget), QuadratureFailure);
}
