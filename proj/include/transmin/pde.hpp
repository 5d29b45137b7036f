#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "transmin/ambient.hpp"
#include "transmin/errors.hpp"
#include "transmin/jets.hpp"
#include "transmin/profile.hpp"
#include "transmin/surface.hpp"

namespace transmin {

/// Classified minimality cases: ambient signature, connection and admissible
/// surface types. E_* are Euclidean, L_* Minkowski; M metric, NM non-metric.
enum class CaseId { E_M_I, E_M_II_III, E_NM_ALL, L_M_I, L_M_II_III, L_NM_I, L_NM_II_III };

inline constexpr std::array<CaseId, 7> kAllCases = {
    CaseId::E_M_I, CaseId::E_M_II_III, CaseId::E_NM_ALL, CaseId::L_M_I,
    CaseId::L_M_II_III, CaseId::L_NM_I, CaseId::L_NM_II_III};

constexpr std::string_view to_string(CaseId c) {
    switch (c) {
    case CaseId::E_M_I: return "E_M_I";
    case CaseId::E_M_II_III: return "E_M_II_III";
    case CaseId::E_NM_ALL: return "E_NM_ALL";
    case CaseId::L_M_I: return "L_M_I";
    case CaseId::L_M_II_III: return "L_M_II_III";
    case CaseId::L_NM_I: return "L_NM_I";
    case CaseId::L_NM_II_III: return "L_NM_II_III";
    }
    return "?";
}

inline CaseId parse_case_id(std::string_view s) {
    for (CaseId c : kAllCases) {
        if (to_string(c) == s) {
            return c;
        }
    }
    throw UnknownCase("unknown case id '" + std::string(s) + "'");
}

struct CaseBinding {
    Signature signature;
    ConnectionKind connection;
    std::array<bool, 3> types; // I, II, III

    constexpr bool admits(TranslationType t) const { return types[static_cast<int>(t)]; }
};

inline CaseBinding binding(CaseId c) {
    using CK = ConnectionKind;
    constexpr auto E = Signature::Euclidean;
    constexpr auto L = Signature::Lorentzian;
    switch (c) {
    case CaseId::E_M_I: return {E, CK::SemiSymmetricMetric, {true, false, false}};
    case CaseId::E_M_II_III: return {E, CK::SemiSymmetricMetric, {false, true, true}};
    case CaseId::E_NM_ALL: return {E, CK::SemiSymmetricNonMetric, {true, true, true}};
    case CaseId::L_M_I: return {L, CK::SemiSymmetricMetric, {true, false, false}};
    case CaseId::L_M_II_III: return {L, CK::SemiSymmetricMetric, {false, true, true}};
    case CaseId::L_NM_I: return {L, CK::SemiSymmetricNonMetric, {true, false, false}};
    case CaseId::L_NM_II_III: return {L, CK::SemiSymmetricNonMetric, {false, true, true}};
    }
    throw UnknownCase("unknown case id");
}

/// Closed-form minimality residual in the derivatives of f at u and g at v.
/// Non-metric cases are stored product-cleared.
inline double residual(CaseId c, const Jet2& fj, const Jet2& gj) {
    const double f1 = fj.d1, f2 = fj.d2, g1 = gj.d1, g2 = gj.d2;
    const double ff = f1 * f1, gg = g1 * g1;
    switch (c) {
    case CaseId::E_M_I:
        return f2 * gg - 2.0 * ff - 2.0 * gg + ff * g2 + f2 + g2 - 2.0;
    case CaseId::E_M_II_III:
        return 2.0 * gg * g1 + 2.0 * ff * g1 + gg * f2 + ff * g2 + f2 + g2 + 2.0 * g1;
    case CaseId::E_NM_ALL:
        return (1.0 + gg) * f2 + (1.0 + ff) * g2;
    case CaseId::L_M_I:
        return f2 * gg - 2.0 * ff - 2.0 * gg + ff * g2 - f2 - g2 + 2.0;
    case CaseId::L_M_II_III:
        return 2.0 * gg * g1 - 2.0 * ff * g1 + gg * f2 + ff * g2 - f2 + g2 - 2.0 * g1;
    case CaseId::L_NM_I:
        return (1.0 - gg) * f2 + (1.0 - ff) * g2;
    case CaseId::L_NM_II_III:
        return (1.0 - gg) * f2 - (1.0 + ff) * g2;
    }
    throw UnknownCase("unknown case id");
}

// Smallest denominator accepted by the quotient form of the non-metric residuals.
inline constexpr double kQuotientGuard = 1e-6;

/// Quotient form of a non-metric residual, e.g. f''/(1+f'^2) + g''/(1+g'^2).
/// Equals the product-cleared residual divided by both denominators.
inline double residual_quotient(CaseId c, const Jet2& fj, const Jet2& gj) {
    const double ff = fj.d1 * fj.d1, gg = gj.d1 * gj.d1;
    double df = 0.0, dg = 0.0, sg = 1.0;
    switch (c) {
    case CaseId::E_NM_ALL: df = 1.0 + ff; dg = 1.0 + gg; break;
    case CaseId::L_NM_I: df = 1.0 - ff; dg = 1.0 - gg; break;
    case CaseId::L_NM_II_III: df = 1.0 + ff; dg = 1.0 - gg; sg = -1.0; break;
    default: throw UnknownCase(std::string(to_string(c)) + " has no quotient form");
    }
    if (std::abs(df) <= kQuotientGuard || std::abs(dg) <= kQuotientGuard) {
        throw DomainError("quotient residual: denominator within guard of zero");
    }
    return fj.d2 / df + sg * gj.d2 / dg;
}

/// Sign s with residual = s * normalizer * numerator. It flips between Types II
/// and III because the Type III frame is the Type II frame with the first two
/// ambient coordinates swapped, which reverses J (F_u x F_v).
inline double orientation_sign(CaseId c, TranslationType t) {
    const CaseBinding b = binding(c);
    if (!b.admits(t)) {
        throw UnknownCase(std::string(to_string(c)) + " does not cover Type " +
                          std::string(to_string(t)));
    }
    switch (c) {
    case CaseId::E_M_I: return 1.0;
    case CaseId::E_M_II_III: return t == TranslationType::II ? -1.0 : 1.0;
    case CaseId::E_NM_ALL: return t == TranslationType::II ? -1.0 : 1.0;
    case CaseId::L_M_I: return -1.0;
    case CaseId::L_M_II_III: return t == TranslationType::II ? -1.0 : 1.0;
    case CaseId::L_NM_I: return 1.0;
    case CaseId::L_NM_II_III: return t == TranslationType::II ? 1.0 : -1.0;
    }
    throw UnknownCase("unknown case id");
}

/// Factor lambda with lambda * numerator = residual at this frame point.
inline double equivalence_factor(CaseId c, TranslationType t, const FramePoint& p) {
    if (!(p.first.det() >= kDegeneracyMargin) || !(p.normalizer > 0.0)) {
        throw DegenerateSurface("equivalence_factor: degenerate frame");
    }
    return orientation_sign(c, t) * p.normalizer;
}

// ---------------------------------------------------------------------------
// Separation constants
// ---------------------------------------------------------------------------

struct SeparationConstants {
    std::optional<double> c0;
    std::optional<double> c1;
    std::optional<double> c2;
    double deviation = 0.0; // max |fitted - observed| over all sample equations
};

// Fits below this are taken to certify membership in the separated family.
inline constexpr double kSeparationCertify = 1e-8;

/// Least-squares fit of the separated second-order ODEs implied by the case:
///   E_M_I, L_M_I   f'' = (c0/2) f'^2 + c1,   g'' = -(c0/2) g'^2 + c2
///   E_M_II_III     f'' = (c0/2) f'^2 + c1,   g'' = -(c0/2) g'^2 - 2 g' + c2
///   L_M_II_III     f'' = (c0/2) f'^2 + c1,   g'' =  (c0/2) g'^2 + 2 g' + c2
///   E_NM_ALL       f'' = c0 (1 + f'^2),      g'' = -c0 (1 + g'^2)
///   L_NM_I         f'' = c0 (1 - f'^2),      g'' = -c0 (1 - g'^2)
///   L_NM_II_III    f'' = c0 (1 + f'^2),      g'' =  c0 (1 - g'^2)
/// The II/III forms are the once-integrated third-order relations, with the
/// integration constant reported as c2.
inline SeparationConstants separation_check(CaseId c, const Profile& f, const Profile& g,
                                            std::span<const double> u_samples,
                                            std::span<const double> v_samples) {
    if (u_samples.size() < 3 || v_samples.size() < 3) {
        throw IllConditionedFit("separation_check: need at least 3 samples per variable");
    }
    std::vector<Jet2> fj, gj;
    fj.reserve(u_samples.size());
    gj.reserve(v_samples.size());
    for (double u : u_samples) fj.push_back(f(u));
    for (double v : v_samples) gj.push_back(g(v));

    auto spread_sq = [](const std::vector<Jet2>& js) {
        double lo = js.front().d1 * js.front().d1, hi = lo;
        for (const Jet2& j : js) {
            lo = std::min(lo, j.d1 * j.d1);
            hi = std::max(hi, j.d1 * j.d1);
        }
        return std::pair{hi - lo, hi};
    };
    auto [fs, fmax] = spread_sq(fj);
    if (fs <= 1e-12 * (1.0 + fmax)) {
        throw IllConditionedFit("separation_check: f'^2 is constant across the u samples");
    }
    auto [gs, gmax] = spread_sq(gj);
    if (gs <= 1e-12 * (1.0 + gmax)) {
        throw IllConditionedFit("separation_check: g'^2 is constant across the v samples");
    }

    const bool nonmetric = binding(c).connection == ConnectionKind::SemiSymmetricNonMetric;
    const Eigen::Index nf = static_cast<Eigen::Index>(fj.size());
    const Eigen::Index ng = static_cast<Eigen::Index>(gj.size());
    const Eigen::Index unknowns = nonmetric ? 1 : 3;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(nf + ng, unknowns);
    Eigen::VectorXd b(nf + ng);

    for (Eigen::Index i = 0; i < nf; ++i) {
        const Jet2& j = fj[static_cast<std::size_t>(i)];
        const double ff = j.d1 * j.d1;
        b(i) = j.d2;
        if (nonmetric) {
            A(i, 0) = c == CaseId::L_NM_I ? 1.0 - ff : 1.0 + ff;
        } else {
            A(i, 0) = 0.5 * ff;
            A(i, 1) = 1.0;
        }
    }
    for (Eigen::Index k = 0; k < ng; ++k) {
        const Jet2& j = gj[static_cast<std::size_t>(k)];
        const double gg = j.d1 * j.d1;
        const Eigen::Index i = nf + k;
        switch (c) {
        case CaseId::E_M_I:
        case CaseId::L_M_I:
            A(i, 0) = -0.5 * gg; A(i, 2) = 1.0; b(i) = j.d2;
            break;
        case CaseId::E_M_II_III:
            A(i, 0) = -0.5 * gg; A(i, 2) = 1.0; b(i) = j.d2 + 2.0 * j.d1;
            break;
        case CaseId::L_M_II_III:
            A(i, 0) = 0.5 * gg; A(i, 2) = 1.0; b(i) = j.d2 - 2.0 * j.d1;
            break;
        case CaseId::E_NM_ALL: A(i, 0) = -(1.0 + gg); b(i) = j.d2; break;
        case CaseId::L_NM_I: A(i, 0) = -(1.0 - gg); b(i) = j.d2; break;
        case CaseId::L_NM_II_III: A(i, 0) = 1.0 - gg; b(i) = j.d2; break;
        }
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    if (qr.rank() < unknowns) {
        throw IllConditionedFit("separation_check: rank-deficient design matrix");
    }
    const Eigen::VectorXd x = qr.solve(b);
    SeparationConstants out;
    out.c0 = x(0);
    if (!nonmetric) {
        out.c1 = x(1);
        out.c2 = x(2);
    }
    out.deviation = (A * x - b).cwiseAbs().maxCoeff();
    return out;
}

} // namespace transmin
