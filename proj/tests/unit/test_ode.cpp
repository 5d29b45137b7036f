#include <gtest/gtest.h>

#include <cmath>

#include "transmin/catalog.hpp"
#include "transmin/errors.hpp"
#include "transmin/ode.hpp"
#include "transmin/random.hpp"

using namespace transmin;

namespace {

double tan_error(double step) {
    const Trajectory tr = integrate({OdeId::O2_21, 0.0}, 0.0, {0.0, 0.6}, step);
    return std::abs(tr.nodes.back().h - std::tan(1.2));
}

} // namespace

TEST(Rk4, ClosedFormEndpoints) {
    const Trajectory a = integrate({OdeId::O2_21, 0.0}, 0.0, {0.0, 0.6}, 1e-4);
    EXPECT_DOUBLE_EQ(a.nodes.back().t, 0.6);
    EXPECT_NEAR(a.nodes.back().h, std::tan(1.2), 1e-8);
    // value' = h, so the value tracks -(1/2) ln|cos 2t|
    EXPECT_NEAR(a.nodes.back().value, -0.5 * std::log(std::cos(1.2)), 1e-8);

    const Trajectory b = integrate({OdeId::O3_37f, 1.0}, 0.0, {0.0, 1.0}, 1e-4);
    EXPECT_NEAR(b.nodes.back().h, std::tanh(1.0), 1e-8);
    EXPECT_NEAR(b.nodes.back().value, std::log(std::cosh(1.0)), 1e-8);
}

TEST(Rk4, EquilibriumStaysPut) {
    const Trajectory tr = integrate({OdeId::O3_37f, 1.0}, 1.0, {0.0, 3.0}, 1e-2);
    for (const OdeNode& n : tr.nodes) {
        EXPECT_EQ(n.h, 1.0);
    }
}

TEST(Rk4, FourthOrderConvergence) {
    const double e1 = tan_error(0.02), e2 = tan_error(0.01), e3 = tan_error(0.005);
    EXPECT_GE(std::log2(e1 / e2), 3.8);
    EXPECT_GE(std::log2(e2 / e3), 3.8);
}

TEST(Rk4, Errors) {
    EXPECT_THROW(integrate({OdeId::O2_21, 0.0}, 0.0, {0.0, 1.0}, 0.0), InvalidStep);
    EXPECT_THROW(integrate({OdeId::O2_21, 0.0}, 0.0, {1.0, 0.0}, 1e-3), InvalidStep);
    // tan(2t) has a pole at pi/4.
    EXPECT_THROW(integrate({OdeId::O2_21, 0.0}, 0.0, {0.0, 1.0}, 1e-3), BlowUp);
    EXPECT_THROW(OdeCase(OdeId::O3_8, 1.0), ParameterConstraintViolation);
    EXPECT_THROW(OdeCase(OdeId::O2_21, NAN), ParameterConstraintViolation);
}

TEST(Substitution, LinearisedCubicEquations) {
    const SubstitutionReport a = substitution_check({OdeId::O2_36, 1.0}, 1.0, {0.0, 0.5});
    EXPECT_LE(a.deviation, 1e-6);
    EXPECT_NEAR(a.fitted_intercept, 2.0, 1e-5);
    EXPECT_NEAR(a.fitted_slope, 4.0, 1e-5);

    const SubstitutionReport b = substitution_check({OdeId::O3_28, 0.0}, 0.5, {0.0, 1.0});
    EXPECT_LE(b.deviation, 1e-6);
    EXPECT_NEAR(b.fitted_intercept, 4.0, 1e-5);
    EXPECT_NEAR(b.fitted_slope, -4.0, 1e-5);

    EXPECT_THROW(substitution_check({OdeId::O3_28, 0.0}, 1.0, {0.0, 1.0}), IllConditionedFit);
    EXPECT_THROW(substitution_check({OdeId::O2_21, 0.0}, 1.0, {0.0, 1.0}), UnknownCase);
}

TEST(CompareProfile, ScherkProfileAgainstRk4) {
    const FamilyProfiles fp = family_profiles(make_family(FamilyId::F2_23));
    ASSERT_FALSE(fp.odes.empty());
    const OdeBinding& b = fp.odes.front();
    EXPECT_EQ(b.ode.id, OdeId::O2_21);
    const AxisProfile& ax = fp.u_axis;
    const Jet2 start = ax.profile(ax.interval.lo);
    const Trajectory tr = integrate(b.ode, start.d1, ax.interval, 1e-4, start.v);
    EXPECT_LE(compare_profile(tr, ax.profile), 1e-7);

    EXPECT_EQ(compare_profile(sample_profile(ax.profile, ax.interval, 1e-2), ax.profile), 0.0);

    const FamilyProfiles shifted = family_profiles(make_family(FamilyId::F2_23, {{"a", 0.1}}));
    Interval common = ax.interval.intersect(shifted.u_axis.interval);
    EXPECT_GT(compare_profile(sample_profile(ax.profile, common, 1e-2), shifted.u_axis.profile), 1e-2);
}

TEST(CompareProfile, OutsideDomainIsMismatch) {
    const Profile p = affine_profile(1.0, 0.0).restricted({0.0, 0.5});
    const Trajectory tr = integrate({OdeId::O3_37f, 0.0}, 1.0, {0.0, 1.0}, 0.1);
    EXPECT_THROW(compare_profile(tr, p), DomainMismatch);
}

TEST(CatalogOdes, EveryBoundProfileSolvesItsOde) {
    int bound = 0;
    for (FamilyId id : kAllFamilies) {
        for (const SolutionFamily& fam : parameter_settings(id)) {
            const FamilyProfiles fp = family_profiles(fam);
            for (const OdeBinding& b : fp.odes) {
                ++bound;
                const AxisProfile& ax = b.axis == Axis::U ? fp.u_axis : fp.v_axis;
                SplitMix64 rng(60);
                for (int i = 0; i < 200; ++i) {
                    const Jet2 j = ax.profile(rng.uniform(ax.interval.lo, ax.interval.hi));
                    EXPECT_NEAR(j.d2, b.ode.rhs(j.d1), 1e-9) << to_string(id) << " " << to_string(b.ode.id);
                }
                const Jet2 start = ax.profile(ax.interval.lo);
                const Trajectory tr = integrate(b.ode, start.d1, ax.interval, 1e-4, start.v);
                EXPECT_LE(compare_profile(tr, ax.profile), 1e-7) << to_string(id) << " " << to_string(b.ode.id);
            }
        }
    }
    EXPECT_GE(bound, 10);
}

TEST(OdeIds, RoundTrip) {
    for (OdeId id : kAllOdes) {
        EXPECT_EQ(parse_ode_id(to_string(id)), id);
    }
    EXPECT_THROW(parse_ode_id("O9_99"), UnknownCase);
}
