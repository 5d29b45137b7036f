#include <gtest/gtest.h>

#include "oracles.hpp"
#include "transmin/ambient.hpp"
#include "transmin/random.hpp"

using namespace transmin;

namespace {

constexpr AmbientSpace E_M{Signature::Euclidean, ConnectionKind::SemiSymmetricMetric};
constexpr AmbientSpace E_NM{Signature::Euclidean, ConnectionKind::SemiSymmetricNonMetric};
constexpr AmbientSpace L_M{Signature::Lorentzian, ConnectionKind::SemiSymmetricMetric};
constexpr AmbientSpace L_NM{Signature::Lorentzian, ConnectionKind::SemiSymmetricNonMetric};

Vec3 random_vec(SplitMix64& rng, double r = 3.0) {
    return {rng.uniform(-r, r), rng.uniform(-r, r), rng.uniform(-r, r)};
}

} // namespace

TEST(MetricInner, Examples) {
    EXPECT_EQ(metric_inner(Signature::Euclidean, X1, X1), 1.0);
    EXPECT_EQ(metric_inner(Signature::Lorentzian, X3, X3), -1.0);
    EXPECT_EQ(metric_inner(Signature::Lorentzian, Vec3{1, 1, 1}, Vec3{1, 1, 1}), 1.0);
}

TEST(MetricInner, SymmetricBilinear) {
    SplitMix64 rng(11);
    for (int i = 0; i < 500; ++i) {
        const Vec3 a = random_vec(rng), b = random_vec(rng), c = random_vec(rng);
        const double t = rng.uniform(-2, 2);
        for (Signature s : {Signature::Euclidean, Signature::Lorentzian}) {
            EXPECT_DOUBLE_EQ(metric_inner(s, a, b), metric_inner(s, b, a));
            EXPECT_NEAR(metric_inner(s, a + t * c, b), metric_inner(s, a, b) + t * metric_inner(s, c, b), 1e-12);
        }
    }
}

TEST(CovariantDerivative, Examples) {
    EXPECT_EQ(covariant_derivative(E_M, X1, X1, {}), (Vec3{0, 0, -1}));
    EXPECT_EQ(covariant_derivative(L_M, X1, X3, {}), (Vec3{-1, 0, 0}));
    EXPECT_EQ(covariant_derivative(E_NM, X3, X3, {}), (Vec3{0, 0, 1}));
    const Vec3 d{0.3, -2.0, 5.5};
    for (Signature s : {Signature::Euclidean, Signature::Lorentzian}) {
        EXPECT_EQ(covariant_derivative({s, ConnectionKind::LeviCivita}, X2, X3, d), d);
    }
}

TEST(CovariantDerivative, ReproducesReferenceTables) {
    const auto tables = oracle::printed_tables();
    ASSERT_EQ(tables.size(), 36u);
    for (const auto& e : tables) {
        const AmbientSpace sp{e.sig, e.kind};
        EXPECT_EQ(covariant_derivative(sp, basis(e.i), basis(e.j), {}), e.value)
            << to_string(e.sig) << " " << to_string(e.kind) << " X" << e.i + 1 << " X" << e.j + 1;
    }
}

TEST(CovariantDerivative, LeviCivitaFrameIsParallel) {
    for (Signature s : {Signature::Euclidean, Signature::Lorentzian}) {
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                EXPECT_EQ(covariant_derivative({s, ConnectionKind::LeviCivita}, basis(i), basis(j), {}), Vec3{});
            }
        }
    }
}

TEST(Torsion, Examples) {
    EXPECT_EQ(torsion(E_M, X1, X3), X1);
    for (const AmbientSpace& sp : {E_M, E_NM, L_M, L_NM}) {
        EXPECT_EQ(torsion(sp, X2, X2), Vec3{});
    }
    SplitMix64 rng(3);
    for (int i = 0; i < 100; ++i) {
        const Vec3 x = random_vec(rng), y = random_vec(rng);
        for (Signature s : {Signature::Euclidean, Signature::Lorentzian}) {
            EXPECT_EQ(torsion({s, ConnectionKind::LeviCivita}, x, y), Vec3{});
        }
    }
}

TEST(Torsion, AntisymmetricAndClosedForm) {
    SplitMix64 rng(5);
    for (int i = 0; i < 1000; ++i) {
        const Vec3 x = random_vec(rng), y = random_vec(rng);
        for (const AmbientSpace& sp : {E_M, E_NM, L_M, L_NM}) {
            const Vec3 t = torsion(sp, x, y);
            const Vec3 t2 = torsion(sp, y, x);
            const Vec3 expect = sp.inner(y, X3) * x - sp.inner(x, X3) * y;
            for (int k = 0; k < 3; ++k) {
                const double a[3] = {t.c1, t.c2, t.c3}, b[3] = {t2.c1, t2.c2, t2.c3};
                const double c[3] = {expect.c1, expect.c2, expect.c3};
                EXPECT_NEAR(a[k], -b[k], 1e-12);
                EXPECT_NEAR(a[k], c[k], 1e-12);
            }
        }
    }
}

TEST(Torsion, TangentialToTheSpannedPlane) {
    SplitMix64 rng(6);
    for (int i = 0; i < 1000; ++i) {
        const Vec3 x = random_vec(rng, 1.0), y = random_vec(rng, 1.0);
        for (const AmbientSpace& sp : {E_M, E_NM, L_M, L_NM}) {
            EXPECT_NEAR(determinant(torsion(sp, x, y), x, y), 0.0, 1e-12);
        }
    }
}

TEST(MetricCompatibility, CorrectionsCancelForMetricKind) {
    SplitMix64 rng(9);
    for (int i = 0; i < 1000; ++i) {
        const Vec3 x = random_vec(rng, 1.0), w = random_vec(rng, 1.0), v = random_vec(rng, 1.0);
        for (const AmbientSpace& sp : {E_M, L_M}) {
            const double lhs = sp.inner(connection_correction(sp, x, w), v) + sp.inner(w, connection_correction(sp, x, v));
            EXPECT_NEAR(lhs, 0.0, 1e-12);
        }
    }
}

TEST(MetricCompatibility, NonMetricWitness) {
    // X = W = V = X3: the two correction terms add up instead of cancelling.
    auto defect = [](const AmbientSpace& sp) {
        return sp.inner(connection_correction(sp, X3, X3), X3) + sp.inner(X3, connection_correction(sp, X3, X3));
    };
    EXPECT_EQ(defect(E_NM), 2.0);
    EXPECT_NE(defect(L_NM), 0.0);
    EXPECT_EQ(defect(E_M), 0.0);
}

TEST(Vec3Ops, CrossAndDeterminant) {
    EXPECT_EQ(cross(X1, X2), X3);
    EXPECT_EQ(cross(X2, X3), X1);
    EXPECT_EQ(determinant(X1, X2, X3), 1.0);
    EXPECT_TRUE((Vec3{1, 2, 3}).is_finite());
    EXPECT_FALSE((Vec3{1, std::nan(""), 3}).is_finite());
}
