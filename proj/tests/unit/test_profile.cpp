#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "transmin/errors.hpp"
#include "transmin/profile.hpp"
#include "transmin/random.hpp"

using namespace transmin;

TEST(ProfileClosed, Examples) {
    // -(k/2) ln|cos(q u - a)| with k = 1, q = 2, a = 0 at u = 0
    const Jet2 j = profile_closed(ClosedTemplate::ScaledLogAbsCos, {-0.5, 2.0, 0.0, 0.0})(0.0);
    EXPECT_NEAR(j.v, 0.0, 1e-15);
    EXPECT_NEAR(j.d1, 0.0, 1e-15);
    EXPECT_NEAR(j.d2, 2.0, 1e-15);

    const Jet2 a = affine_profile(3.0, 1.0)(2.0);
    EXPECT_EQ(a, (Jet2{7.0, 3.0, 0.0}));

    // (1/c) ln|e^{cu} - c^ e^{-cu}| with c = 1, c^ = -1 at u = 0
    const Jet2 e = profile_closed(ClosedTemplate::ScaledLogAbsExpDiff, {1.0, 1.0, -1.0, 0.0})(0.0);
    EXPECT_NEAR(e.v, std::log(2.0), 1e-15);
    EXPECT_NEAR(e.d1, 0.0, 1e-15);
    EXPECT_NEAR(e.d2, 1.0, 1e-15);
}

TEST(ProfileClosed, DerivativesMatchClosedForms) {
    SplitMix64 rng(8);
    for (int i = 0; i < 200; ++i) {
        const double u = rng.uniform(-0.7, 0.7);
        const Jet2 c = profile_closed(ClosedTemplate::ScaledLogAbsCos, {-0.5, 2.0, 0.0, 0.0})(u);
        EXPECT_NEAR(c.d1, std::tan(2 * u), 1e-12 * (1 + std::abs(c.d1)));
        EXPECT_NEAR(c.d2, 2.0 / std::pow(std::cos(2 * u), 2), 1e-12 * (1 + c.d2));
        const Jet2 e = profile_closed(ClosedTemplate::ScaledLogAbsExpDiff, {1.0, 1.0, -1.0, 0.0})(u);
        EXPECT_NEAR(e.d1, std::tanh(u), 1e-14);
        EXPECT_NEAR(e.d2, 1.0 - std::tanh(u) * std::tanh(u), 1e-14);
    }
}

TEST(ProfileClosed, SingularPointsRaise) {
    const Profile p = profile_closed(ClosedTemplate::ScaledLogAbsCos, {1.0, 1.0, 0.0, 0.0});
    EXPECT_THROW(p(std::numbers::pi / 2), DomainError);
    const Profile q = profile_closed(ClosedTemplate::ScaledLogAbsExpDiff, {1.0, 1.0, 1.0, 0.0});
    EXPECT_THROW(q(0.0), DomainError);
    EXPECT_THROW(profile_closed(ClosedTemplate::Affine, {1.0}), DomainError);
    EXPECT_THROW(profile_closed(ClosedTemplate::Affine, {1.0, NAN}), DomainError);
}

TEST(ProfileDomain, OutsideIsAnErrorNotNaN) {
    const Profile p = affine_profile(1.0, 0.0).restricted({-1.0, 1.0});
    EXPECT_NO_THROW(p(0.5));
    EXPECT_THROW(p(1.5), DomainError);
    EXPECT_THROW(p(1.0), DomainError);
    EXPECT_THROW(Profile()(0.0), DomainError);
}

TEST(ProfileQuadrature, Examples) {
    const Profile lin = profile_quadrature([](double) { return 3.0; }, [](double) { return 0.0; }, 0.0);
    const Jet2 j = lin(2.0);
    EXPECT_NEAR(j.v, 6.0, 1e-14);
    EXPECT_EQ(j.d1, 3.0);
    EXPECT_EQ(j.d2, 0.0);
    EXPECT_TRUE(lin.quadrature_backed());

    // 1/sqrt(a e^{4x} - 1/(c^2+1)) with a = 1, c = 0: radicand 0 at x = 0
    const Profile rad = profile_quadrature(
        [](double x) { return 1.0 / std::sqrt(std::exp(4 * x) - 1.0); },
        [](double x) { return -2.0 * std::exp(4 * x) / std::pow(std::exp(4 * x) - 1.0, 1.5); }, 0.0);
    EXPECT_THROW(rad(0.0), DomainError);

    const Profile c = profile_quadrature([](double x) { return std::cos(x); }, [](double x) { return -std::sin(x); }, 0.0);
    EXPECT_NEAR(c(std::numbers::pi / 2).v, 1.0, 1e-10);
}

TEST(ProfileQuadrature, ValueWithinToleranceOfAntiderivative) {
    QuadratureSpec spec;
    spec.abs_tol = 1e-12;
    const Profile p = profile_quadrature([](double x) { return std::exp(x); }, [](double x) { return std::exp(x); }, 2.0, spec);
    SplitMix64 rng(12);
    for (int i = 0; i < 100; ++i) {
        const double u = rng.uniform(-2, 2);
        const Jet2 j = p(u);
        EXPECT_NEAR(j.v, 2.0 + std::exp(u) - 1.0, 1e-11);
        EXPECT_DOUBLE_EQ(j.d1, std::exp(u));
    }
}

TEST(ProfileSum, AddsJetsAndIntersectsDomains) {
    const Profile a = affine_profile(2.0, 1.0).restricted({-1.0, 2.0});
    const Profile b = quadratic_profile(0.0, 0.0, 4.0).restricted({0.0, 5.0});
    const Profile s = a + b;
    EXPECT_EQ(s.domain(), (Interval{0.0, 2.0}));
    const Jet2 j = s(1.0);
    EXPECT_NEAR(j.v, 3.0 + 2.0, 1e-15);
    EXPECT_NEAR(j.d1, 2.0 + 4.0, 1e-15);
    EXPECT_NEAR(j.d2, 4.0, 1e-15);
}

TEST(IntervalOps, Basics) {
    const Interval i{-1.0, 2.0};
    EXPECT_TRUE(i.contains(0.0));
    EXPECT_FALSE(i.contains(2.0));
    EXPECT_TRUE(i.covers({-1.0, 2.0}));
    EXPECT_FALSE(i.covers({-1.5, 0.0}));
    EXPECT_DOUBLE_EQ(i.width(), 3.0);
    EXPECT_DOUBLE_EQ(i.mid(), 0.5);
    EXPECT_TRUE(i.intersect({3.0, 4.0}).empty());
    EXPECT_FALSE(Interval{}.bounded());
}
