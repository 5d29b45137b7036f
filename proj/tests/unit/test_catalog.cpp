#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "oracles.hpp"
#include "transmin/catalog.hpp"
#include "transmin/errors.hpp"
#include "transmin/random.hpp"

using namespace transmin;

namespace {

// Families with no spacelike point for any admissible parameter value.
const std::set<FamilyId> kTimelike = {FamilyId::F3_10, FamilyId::F3_13, FamilyId::F3_25};

} // namespace

TEST(Catalog, TableCoversEveryTheorem) {
    std::size_t total = 0;
    for (std::string_view th : theorems()) {
        const auto fams = families_of_theorem(th);
        EXPECT_FALSE(fams.empty()) << th;
        total += fams.size();
    }
    EXPECT_EQ(total, kAllFamilies.size());
    for (FamilyId id : kAllFamilies) {
        EXPECT_EQ(parse_family_id(to_string(id)), id);
        EXPECT_GE(parameter_settings(id).size(), 2u) << to_string(id);
    }
    EXPECT_THROW(parse_family_id("F9_99"), ParameterConstraintViolation);
    EXPECT_THROW(make_family(FamilyId::F2_23, {{"nope", 1.0}}), ParameterConstraintViolation);
}

TEST(Catalog, SpacelikeFamiliesAreMinimal) {
    for (FamilyId id : kAllFamilies) {
        if (kTimelike.contains(id) || id == FamilyId::F3_31) continue;
        for (const SolutionFamily& fam : parameter_settings(id)) {
            const FamilyVerification r = verify_family(fam, 200, 7);
            EXPECT_TRUE(r.pass) << to_string(id) << " numerator " << r.max_abs_numerator << " residual "
                                << r.max_abs_residual;
            EXPECT_EQ(r.numerator_samples, 200);
            EXPECT_EQ(r.tolerance, info(id).quadrature ? kQuadratureTolerance : kClosedFormTolerance);
        }
    }
}

TEST(Catalog, PerturbedFamiliesFail) {
    for (FamilyId id : kAllFamilies) {
        if (kTimelike.contains(id)) continue;
        for (const SolutionFamily& fam : parameter_settings(id)) {
            VerifyOptions opt;
            opt.perturb = 0.01;
            const FamilyVerification r = verify_family(fam, 200, 7, opt);
            EXPECT_GT(r.max_abs_residual, 1e-3) << to_string(id);
            EXPECT_FALSE(r.pass) << to_string(id);
        }
    }
}

TEST(Catalog, TimelikeFamiliesHaveEmptyDomains) {
    for (FamilyId id : kTimelike) {
        for (const SolutionFamily& fam : parameter_settings(id)) {
            EXPECT_THROW(build(fam), EmptyDomain) << to_string(id);
        }
    }
}

TEST(Catalog, ConstantSlopeLorentzianTypeTwo) {
    // The constraint c1'^2 = c0'^2 + 2 leaves 2 c1'(c1'^2 - c0'^2 - 1) = 2 c1' behind.
    const SolutionFamily fam = make_family(FamilyId::F3_31);
    const FamilyVerification r = verify_family(fam, 200, 7);
    EXPECT_NEAR(r.max_abs_residual, 2.0 * std::numbers::sqrt3, 1e-12);
    EXPECT_FALSE(r.pass);

    // The c1' = 0 branch solves the residual but sits in the timelike region.
    EXPECT_EQ(residual(CaseId::L_M_II_III, {0, 1.0, 0}, {0, 0.0, 0}), 0.0);
    EXPECT_THROW(build(make_family(FamilyId::F3_31, {{"c1-prime", 0.0}})), EmptyDomain);
}

TEST(Catalog, ScherkDefaultsAndDomain) {
    const BuiltFamily b = build(make_family(FamilyId::F2_23));
    EXPECT_EQ(b.surface.type, TranslationType::I);
    EXPECT_EQ(b.case_id, CaseId::E_M_I);
    EXPECT_NEAR(b.domain.u.lo, -std::numbers::pi / 4 + kSingularMargin, 1e-12);
    EXPECT_NEAR(b.domain.u.hi, std::numbers::pi / 4 - kSingularMargin, 1e-12);
    SplitMix64 rng(70);
    for (int i = 0; i < 50; ++i) {
        const double u = rng.uniform(b.domain.u.lo, b.domain.u.hi);
        EXPECT_NEAR(b.surface.f(u).v, -0.5 * std::log(std::cos(2 * u)), 1e-14);
    }
    EXPECT_EQ(b.domain.exclusions.size(), 2u);

    const FamilyVerification r = verify_family(make_family(FamilyId::F2_51), 200, 1);
    EXPECT_LE(r.max_abs_numerator, 1e-9);
}

TEST(Catalog, UAndVScherkFamiliesAreMirrors) {
    const SolutionFamily a = make_family(FamilyId::F2_23, {{"c3", 0.7}, {"a", 0.2}, {"c5", 0.4}});
    const SolutionFamily b = make_family(FamilyId::F2_24, {{"c3-bar", 0.7}, {"a1", 0.2}, {"c6", 0.4}});
    const BuiltFamily ba = build(a), bb = build(b);
    EXPECT_EQ(ba.domain.u, bb.domain.v);
    SplitMix64 rng(71);
    for (int i = 0; i < 100; ++i) {
        const double s = rng.uniform(ba.domain.u.lo, ba.domain.u.hi), t = rng.uniform(-1, 1);
        EXPECT_NEAR(ba.surface.immersion(s, t).c3, bb.surface.immersion(t, s).c3, 1e-13);
    }
}

TEST(Catalog, PlaneTypeTwo) {
    const BuiltFamily b = build(make_family(FamilyId::F2_40));
    EXPECT_EQ(b.surface.immersion(0.3, -0.2), (Vec3{0.3, 0.3, -0.2}));
    SplitMix64 rng(72);
    for (int i = 0; i < 50; ++i) {
        const double u = rng.uniform(b.domain.u.lo, b.domain.u.hi), v = rng.uniform(b.domain.v.lo, b.domain.v.hi);
        EXPECT_EQ(residual(CaseId::E_M_II_III, b.surface.f(u), b.surface.g(v)), 0.0);
    }
}

TEST(Catalog, QuadratureFamilyConverges) {
    const SolutionFamily fam = make_family(FamilyId::F2_39, {{"c0-hat", 1.0}, {"a-hat", 2.0}});
    const FamilyVerification r = verify_family(fam, 100, 3);
    EXPECT_LE(r.max_abs_numerator, 1e-7);
    EXPECT_THROW(build(make_family(FamilyId::F2_39, {{"a-hat", -1.0}})), ParameterConstraintViolation);
}

TEST(Catalog, HyperbolicNonMetricFamily) {
    const BuiltFamily b = build(make_family(FamilyId::F3_38));
    SplitMix64 rng(73);
    for (int i = 0; i < 100; ++i) {
        const double u = rng.uniform(b.domain.u.lo, b.domain.u.hi), v = rng.uniform(b.domain.v.lo, b.domain.v.hi);
        const Jet2 fj = b.surface.f(u);
        EXPECT_NEAR(fj.d1, std::tanh(u), 1e-14);
        EXPECT_NEAR(fj.d2 / (1 - fj.d1 * fj.d1), 1.0, 1e-10);
        EXPECT_NEAR(residual(CaseId::L_NM_I, fj, b.surface.g(v)), 0.0, 1e-13);
    }
}

TEST(Catalog, TypeRebindingFollowsTheCase) {
    EXPECT_THROW(build(make_family(FamilyId::F2_23, {}, Branch::Plus, TranslationType::II)), ParameterConstraintViolation);
    const BuiltFamily b = build(make_family(FamilyId::F2_35, {}, Branch::Plus, TranslationType::III));
    EXPECT_EQ(b.surface.type, TranslationType::III);
}

TEST(Catalog, ProfilesMatchFiniteDifferences) {
    for (FamilyId id : kAllFamilies) {
        for (const SolutionFamily& fam : parameter_settings(id)) {
            const FamilyProfiles fp = family_profiles(fam);
            for (const AxisProfile* ax : {&fp.u_axis, &fp.v_axis}) {
                SplitMix64 rng(74);
                const double h = 1e-4;
                for (int i = 0; i < 100; ++i) {
                    const double x = rng.uniform(ax->interval.lo + h, ax->interval.hi - h);
                    const Jet2 j = ax->profile(x);
                    const double d1 = oracle::fd1(ax->profile, x, h), d2 = oracle::fd2(ax->profile, x, h);
                    EXPECT_NEAR(j.d1, d1, 1e-6 * std::max(1.0, std::abs(d1))) << to_string(id) << " at " << x;
                    EXPECT_NEAR(j.d2, d2, 1e-4 * std::max(1.0, std::abs(d2))) << to_string(id) << " at " << x;
                }
            }
        }
    }
}

TEST(Catalog, SampleGridIsUMajor) {
    const BuiltFamily b = build(make_family(FamilyId::F2_50));
    const auto pts = sample_grid(b.surface, {0, 1}, {0, 2}, 3, 5);
    ASSERT_EQ(pts.size(), 15u);
    EXPECT_EQ(pts[0], b.surface.immersion(0, 0));
    EXPECT_EQ(pts[4], b.surface.immersion(0, 2));
    EXPECT_EQ(pts[5], b.surface.immersion(0.5, 0));
    EXPECT_THROW(sample_grid(b.surface, {0, 1}, {0, 1}, 1, 5), ParameterConstraintViolation);
}
