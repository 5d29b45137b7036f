#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "transmin/ambient.hpp"
#include "transmin/curvature.hpp"
#include "transmin/errors.hpp"
#include "transmin/ode.hpp"
#include "transmin/pde.hpp"
#include "transmin/profile.hpp"
#include "transmin/random.hpp"
#include "transmin/surface.hpp"

namespace transmin {

// clang-format off
enum class FamilyId {
    F2_23, F2_24, F2_35, F2_39, F2_40, F2_50, F2_51,
    F3_10, F3_12, F3_13, F3_14, F3_25, F3_27, F3_30, F3_31, F3_36, F3_38, F3_41, F3_43
};

inline constexpr std::array<FamilyId, 19> kAllFamilies = {
    FamilyId::F2_23, FamilyId::F2_24, FamilyId::F2_35, FamilyId::F2_39, FamilyId::F2_40,
    FamilyId::F2_50, FamilyId::F2_51, FamilyId::F3_10, FamilyId::F3_12, FamilyId::F3_13,
    FamilyId::F3_14, FamilyId::F3_25, FamilyId::F3_27, FamilyId::F3_30, FamilyId::F3_31,
    FamilyId::F3_36, FamilyId::F3_38, FamilyId::F3_41, FamilyId::F3_43};
// clang-format on

enum class Branch { Plus, Minus };

constexpr std::string_view to_string(Branch b) { return b == Branch::Plus ? "plus" : "minus"; }

struct ParamSpec {
    std::string_view name;
    double default_value;
};

/// Static description of one classified family.
struct FamilyInfo {
    FamilyId id;
    std::string_view name;
    std::string_view theorem; // theorem the family belongs to, e.g. "2.2"
    TranslationType natural_type;
    CaseId case_id;
    bool quadrature;
    bool has_branch;
    std::vector<ParamSpec> params;
    std::string_view formula;
};

inline const std::vector<FamilyInfo>& family_table() {
    using T = TranslationType;
    using C = CaseId;
    static const std::vector<FamilyInfo> table = {
        {FamilyId::F2_23, "F2_23", "2.2", T::I, C::E_M_I, false, false,
         {{"c3", 0.0}, {"a", 0.0}, {"c5", 0.0}},
         "z = -(c3^2+1)/2 ln|cos(2u/sqrt(c3^2+1) - a)| + c3 v + c5"},
        {FamilyId::F2_24, "F2_24", "2.2", T::I, C::E_M_I, false, false,
         {{"c3-bar", 0.5}, {"a1", 0.0}, {"c6", 0.0}},
         "z = -(c3b^2+1)/2 ln|cos(2v/sqrt(c3b^2+1) - a1)| + c3b u + c6"},
        {FamilyId::F2_35, "F2_35", "2.3", T::II, C::E_M_II_III, false, false,
         {{"c0-tilde", 1.0}, {"a-tilde", 0.0}, {"b-bar", 0.0}},
         "y = (c^2+1)/(2c) ln|cos(2c u/sqrt(c^2+1) - a)| + c v + b"},
        {FamilyId::F2_39, "F2_39", "2.3", T::II, C::E_M_II_III, true, true,
         {{"c0-hat", 1.0}, {"a-hat", 2.0}, {"b0", 0.0}},
         "y = int_0^v +-1/sqrt(a exp(4x) - 1/(c^2+1)) dx + c u + b0"},
        {FamilyId::F2_40, "F2_40", "2.3", T::II, C::E_M_II_III, false, false,
         {{"c0-prime", 1.0}, {"b-prime", 0.0}},
         "y = c0' u + b'"},
        {FamilyId::F2_50, "F2_50", "2.4", T::I, C::E_NM_ALL, false, false,
         {{"c0", 0.3}, {"c1", -0.7}, {"c2", 0.0}},
         "z = c0 u + c1 v + c2"},
        {FamilyId::F2_51, "F2_51", "2.4", T::I, C::E_NM_ALL, false, false,
         {{"c", 1.0}, {"c3", 0.0}, {"c4", 0.0}, {"c5", 0.0}},
         "z = (1/c) ln(|cos(c u - c3)| / |cos(c v - c4)|) + c5"},
        {FamilyId::F3_10, "F3_10", "3.1", T::I, C::L_M_I, false, false,
         {{"c", 2.0}, {"a", 0.0}, {"b-bar", 0.0}},
         "z = -(c^2-1)/2 ln|cos(2u/sqrt(c^2-1) - a)| + c v + b"},
        {FamilyId::F3_12, "F3_12", "3.1", T::I, C::L_M_I, true, false,
         {{"c", 0.5}, {"c-tilde", -1.0}, {"b-tilde", 0.0}},
         "z = int_0^u sqrt(1-c^2)(1 + ct E)/(1 - ct E) dx + c v + b, E = exp(-4x/sqrt(1-c^2))"},
        {FamilyId::F3_13, "F3_13", "3.1", T::I, C::L_M_I, false, false,
         {{"c-hat", 2.0}, {"a1", 0.0}, {"b1-bar", 0.0}},
         "z = -(c^2-1)/2 ln|cos(2v/sqrt(c^2-1) - a1)| + c u + b"},
        {FamilyId::F3_14, "F3_14", "3.1", T::I, C::L_M_I, true, false,
         {{"c-hat", 0.5}, {"c1-tilde", -1.0}, {"b-tilde", 0.0}},
         "z = int_0^v sqrt(1-c^2)(1 + ct E)/(1 - ct E) dx + c u + b, E = exp(-4x/sqrt(1-c^2))"},
        {FamilyId::F3_25, "F3_25", "3.2", T::II, C::L_M_II_III, false, false,
         {{"c0-tilde", 0.5}, {"a-tilde", 0.0}, {"b-bar", 0.0}},
         "y = (1-c^2)/(2c) ln|cos(2c u/sqrt(1-c^2) - a)| + c v + b"},
        {FamilyId::F3_27, "F3_27", "3.2", T::II, C::L_M_II_III, true, false,
         {{"c0-tilde", 2.0}, {"c1", -1.0}, {"b1-bar", 0.0}},
         "y = int_0^u sqrt(c^2-1)(1 + c1 E)/(1 - c1 E) dx + c v + b, E = exp(4c x/sqrt(c^2-1))"},
        {FamilyId::F3_30, "F3_30", "3.2", T::II, C::L_M_II_III, true, true,
         {{"c0-hat", 0.0}, {"a-hat", -0.5}, {"b0", 0.0}},
         "y = int_0^v +-1/sqrt(a exp(-4x) + 1/(c^2+1)) dx + c u + b0"},
        {FamilyId::F3_31, "F3_31", "3.2", T::II, C::L_M_II_III, false, false,
         {{"c0-prime", 1.0}, {"c1-prime", std::numbers::sqrt3}, {"b-prime", 0.0}},
         "y = c0' u + c1' v + b'"},
        {FamilyId::F3_36, "F3_36", "3.3", T::I, C::L_NM_I, false, false,
         {{"c1", 0.3}, {"c2", -0.4}, {"c3", 0.0}},
         "z = c1 u + c2 v + c3"},
        {FamilyId::F3_38, "F3_38", "3.3", T::I, C::L_NM_I, false, false,
         {{"c0", 1.0}, {"c-hat", -1.0}, {"c1-hat", -1.0}, {"a", 0.0}},
         "z = (1/c0) ln(|exp(c0 u) - ch exp(-c0 u)| / |exp(-c0 v) - ch1 exp(c0 v)|) + a"},
        {FamilyId::F3_41, "F3_41", "3.4", T::II, C::L_NM_II_III, false, false,
         {{"c1", 0.5}, {"c2", 1.5}, {"c3", 0.0}},
         "y = c1 u + c2 v + c3"},
        {FamilyId::F3_43, "F3_43", "3.4", T::II, C::L_NM_II_III, false, false,
         {{"c0-bar", 1.0}, {"c3", 1.0}, {"c4", 0.0}, {"b", 0.0}},
         "y = (1/c) ln(|exp(c v) - c3 exp(-c v)| / |cos(c u + c4)|) + b"},
    };
    return table;
}

inline const FamilyInfo& info(FamilyId id) {
    return family_table()[static_cast<std::size_t>(id)];
}

constexpr std::string_view to_string(FamilyId id) {
    constexpr std::array<std::string_view, 19> names = {
        "F2_23", "F2_24", "F2_35", "F2_39", "F2_40", "F2_50", "F2_51", "F3_10", "F3_12", "F3_13",
        "F3_14", "F3_25", "F3_27", "F3_30", "F3_31", "F3_36", "F3_38", "F3_41", "F3_43"};
    return names[static_cast<std::size_t>(id)];
}

inline FamilyId parse_family_id(std::string_view s) {
    for (FamilyId id : kAllFamilies) {
        if (to_string(id) == s) {
            return id;
        }
    }
    throw ParameterConstraintViolation("unknown family id '" + std::string(s) + "'");
}

inline std::vector<std::string_view> theorems() {
    return {"2.2", "2.3", "2.4", "3.1", "3.2", "3.3", "3.4"};
}

inline std::vector<FamilyId> families_of_theorem(std::string_view theorem) {
    std::vector<FamilyId> out;
    for (const FamilyInfo& fi : family_table()) {
        if (fi.theorem == theorem) {
            out.push_back(fi.id);
        }
    }
    return out;
}

/// A family with concrete parameters. `type` rebinds families whose case also
/// covers another surface type (Type II -> III, or any type for E_NM_ALL).
struct SolutionFamily {
    FamilyId id = FamilyId::F2_23;
    std::map<std::string, double> params;
    Branch branch = Branch::Plus;
    std::optional<TranslationType> type;

    double param(std::string_view name) const {
        auto it = params.find(std::string(name));
        if (it == params.end()) {
            throw ParameterConstraintViolation("missing parameter '" + std::string(name) + "'");
        }
        return it->second;
    }

    TranslationType surface_type() const { return type.value_or(info(id).natural_type); }
};

/// Family with defaults filled in for every parameter not given in `overrides`.
inline SolutionFamily make_family(FamilyId id, const std::map<std::string, double>& overrides = {},
                                  Branch branch = Branch::Plus,
                                  std::optional<TranslationType> type = std::nullopt) {
    const FamilyInfo& fi = info(id);
    SolutionFamily f;
    f.id = id;
    f.branch = branch;
    f.type = type;
    for (const ParamSpec& p : fi.params) {
        f.params[std::string(p.name)] = p.default_value;
    }
    for (const auto& [k, v] : overrides) {
        if (!f.params.contains(k)) {
            throw ParameterConstraintViolation("family " + std::string(fi.name) +
                                               " has no parameter '" + k + "'");
        }
        f.params[k] = v;
    }
    return f;
}

/// Parameter settings exercised by the theorem suites: the defaults first, then
/// alternates covering other signs, both quadrature branches and Type III rebinding.
inline std::vector<SolutionFamily> parameter_settings(FamilyId id) {
    using T = TranslationType;
    std::vector<SolutionFamily> s{make_family(id)};
    auto add = [&](std::map<std::string, double> p, Branch b = Branch::Plus,
                   std::optional<T> t = std::nullopt) { s.push_back(make_family(id, p, b, t)); };
    switch (id) {
    case FamilyId::F2_23: add({{"c3", 1.0}, {"a", 0.3}, {"c5", -1.0}}); break;
    case FamilyId::F2_24: add({{"c3-bar", -2.0}, {"a1", 0.5}, {"c6", 1.0}}); break;
    case FamilyId::F2_35:
        add({{"c0-tilde", -0.5}, {"a-tilde", 0.2}, {"b-bar", 1.0}});
        add({}, Branch::Plus, T::III);
        break;
    case FamilyId::F2_39:
        add({}, Branch::Minus);
        add({{"c0-hat", 0.5}, {"a-hat", 1.5}, {"b0", -0.5}}, Branch::Plus, T::III);
        break;
    case FamilyId::F2_40: add({{"c0-prime", -2.0}, {"b-prime", 0.5}}, Branch::Plus, T::III); break;
    case FamilyId::F2_50:
        add({{"c0", -1.2}, {"c1", 2.0}, {"c2", 0.4}});
        add({}, Branch::Plus, T::II);
        break;
    case FamilyId::F2_51:
        add({{"c", 2.0}, {"c3", 0.5}, {"c4", -0.3}, {"c5", 0.25}});
        add({{"c", -1.0}}, Branch::Plus, T::III);
        break;
    case FamilyId::F3_10: add({{"c", -1.5}, {"a", 0.2}, {"b-bar", 1.0}}); break;
    case FamilyId::F3_12: add({{"c", -0.2}, {"c-tilde", -0.5}, {"b-tilde", 0.3}}); break;
    case FamilyId::F3_13: add({{"c-hat", -3.0}, {"a1", 0.1}}); break;
    case FamilyId::F3_14: add({{"c-hat", 0.0}, {"c1-tilde", -2.0}, {"b-tilde", -1.0}}); break;
    case FamilyId::F3_25: add({{"c0-tilde", -0.6}, {"a-tilde", 0.1}}); break;
    case FamilyId::F3_27:
        add({{"c0-tilde", -1.5}, {"c1", -0.5}, {"b1-bar", 0.2}});
        add({}, Branch::Plus, T::III);
        break;
    case FamilyId::F3_30:
        add({}, Branch::Minus);
        add({{"c0-hat", 0.5}, {"a-hat", -0.3}, {"b0", 0.1}}, Branch::Plus, T::III);
        break;
    case FamilyId::F3_31:
        add({{"c0-prime", 0.0}, {"c1-prime", -std::numbers::sqrt2}, {"b-prime", 0.4}});
        add({}, Branch::Plus, T::III);
        break;
    case FamilyId::F3_36: add({{"c1", -0.5}, {"c2", 0.5}, {"c3", 1.0}}); break;
    case FamilyId::F3_38: add({{"c0", 2.0}, {"c-hat", -0.5}, {"c1-hat", -2.0}, {"a", 0.3}}); break;
    case FamilyId::F3_41: add({{"c1", -1.0}, {"c2", -2.0}, {"c3", 0.5}}, Branch::Plus, T::III); break;
    case FamilyId::F3_43:
        add({{"c0-bar", 0.5}, {"c3", 2.0}, {"c4", 0.2}, {"b", -0.3}});
        add({}, Branch::Plus, T::III);
        break;
    }
    return s;
}

// ---------------------------------------------------------------------------
// Domains
// ---------------------------------------------------------------------------

enum class Axis { U, V };

struct Exclusion {
    Axis axis;
    double at;
    std::string reason;
};

struct AdmissibleDomain {
    Interval u;
    Interval v;
    std::vector<Exclusion> exclusions;
};

// Distance kept from every singular point of a profile or integrand.
inline constexpr double kSingularMargin = 0.08;
// Unbounded sides of an axis are clipped to this half-width around the reference point.
inline constexpr double kAxisWindow = 1.5;
// Minkowski domains keep EG - F^2 at least this large (spacelike with room to spare).
inline constexpr double kCausalMargin = 1e-3;
// Radicands and denominators of quadrature integrands must stay beyond these.
inline constexpr double kRadicandGuard = 1e-10;
inline constexpr double kDenominatorGuard = 1e-6;

inline constexpr QuadratureSpec kCatalogQuadrature{1e-14, 40};

struct OdeBinding {
    Axis axis;
    OdeCase ode;
};

/// One profile of a family along with the interval it was constructed on.
struct AxisProfile {
    Profile profile;
    Interval interval;
    std::vector<Exclusion> exclusions;
    // Closed-form derivative only; cheap for domain scans of quadrature profiles.
    std::function<double(double)> slope;
};

struct FamilyProfiles {
    SolutionFamily family;
    TranslationSurface surface;
    CaseId case_id;
    AxisProfile u_axis;
    AxisProfile v_axis;
    std::vector<OdeBinding> odes;
    bool quadrature = false;
};

struct BuiltFamily {
    TranslationSurface surface;
    CaseId case_id;
    AdmissibleDomain domain;
};

namespace detail {

inline void require(bool ok, const std::string& family, const std::string& what) {
    if (!ok) {
        throw ParameterConstraintViolation(family + ": requires " + what);
    }
}

inline AxisProfile affine_axis(double c, double b) {
    AxisProfile a;
    a.profile = affine_profile(c, b);
    a.interval = {-kAxisWindow, kAxisWindow};
    a.slope = [c](double) { return c; };
    return a;
}

/// s ln|cos(q u - a)| + b on the component centred at u = a/q.
inline AxisProfile log_cos_axis(Axis axis, double s, double q, double phase, double b) {
    AxisProfile a;
    a.profile = profile_closed(ClosedTemplate::ScaledLogAbsCos, {s, q, phase, b});
    const double centre = phase / q;
    const double half = std::numbers::pi / (2.0 * std::abs(q));
    if (half <= kSingularMargin) {
        throw EmptyDomain("cosine component narrower than the singular margin");
    }
    a.interval = {centre - std::min(half - kSingularMargin, kAxisWindow),
                  centre + std::min(half - kSingularMargin, kAxisWindow)};
    a.exclusions.push_back({axis, centre - half, "zero of cos, margin " + std::to_string(kSingularMargin)});
    a.exclusions.push_back({axis, centre + half, "zero of cos, margin " + std::to_string(kSingularMargin)});
    a.slope = [s, q, phase](double u) { return -s * q * std::tan(q * u - phase); };
    return a;
}

/// s ln|exp(p u) - w exp(-p u)| + b; for w > 0 the zero at ln(w)/(2p) is avoided by
/// taking the component containing 0 (or the right one when 0 is too close).
inline AxisProfile log_expdiff_axis(Axis axis, double s, double p, double w, double b) {
    AxisProfile a;
    a.profile = profile_closed(ClosedTemplate::ScaledLogAbsExpDiff, {s, p, w, b});
    a.interval = {-kAxisWindow, kAxisWindow};
    if (w > 0.0) {
        const double zero = std::log(w) / (2.0 * p);
        a.exclusions.push_back({axis, zero, "zero of exponential difference, margin " +
                                                std::to_string(kSingularMargin)});
        if (std::abs(zero) <= kSingularMargin) {
            a.interval = {zero + kSingularMargin, zero + kSingularMargin + 2.0 * kAxisWindow};
        } else if (zero < 0.0) {
            a.interval.lo = std::max(a.interval.lo, zero + kSingularMargin);
        } else {
            a.interval.hi = std::min(a.interval.hi, zero - kSingularMargin);
        }
    }
    a.slope = [s, p, w](double u) {
        const double ep = std::exp(p * u), em = std::exp(-p * u);
        return s * p * (ep + w * em) / (ep - w * em);
    };
    return a;
}

/// base + int_0^x integrand on an interval that must contain the origin.
inline AxisProfile quadrature_axis(Axis axis, std::function<double(double)> h,
                                   std::function<double(double)> dh, double base, Interval interval,
                                   std::vector<Exclusion> exclusions, const std::string& desc) {
    if (!interval.contains(0.0) || interval.empty()) {
        throw EmptyDomain("integrand undefined at the quadrature origin 0 (usable interval " +
                          to_string(interval) + ")");
    }
    AxisProfile a;
    a.profile = profile_quadrature(h, dh, base, kCatalogQuadrature, {}, desc);
    a.interval = interval;
    a.exclusions = std::move(exclusions);
    (void)axis;
    a.slope = std::move(h);
    return a;
}

inline double checked_inv_sqrt(double radicand) {
    if (!(radicand > kRadicandGuard)) {
        throw DomainError("integrand radicand " + std::to_string(radicand) + " not positive");
    }
    return 1.0 / std::sqrt(radicand);
}

inline double checked_denominator(double d) {
    if (!(std::abs(d) > kDenominatorGuard)) {
        throw DomainError("integrand denominator vanishes");
    }
    return d;
}

/// sigma / sqrt(A exp(r x) + B) and its derivative.
inline AxisProfile radical_axis(Axis axis, double sigma, double A, double r, double B, double base,
                                const std::string& desc) {
    auto h = [=](double x) { return sigma * checked_inv_sqrt(A * std::exp(r * x) + B); };
    auto dh = [=](double x) {
        const double R = A * std::exp(r * x) + B;
        const double inv = checked_inv_sqrt(R);
        return -0.5 * sigma * A * r * std::exp(r * x) * inv * inv * inv;
    };
    // Radicand positive for x beyond the root of A e^{rx} = -B, when one exists.
    Interval iv{-kAxisWindow, kAxisWindow};
    std::vector<Exclusion> ex;
    if (A * B < 0.0) {
        const double root = std::log(-B / A) / r;
        ex.push_back({axis, root, "radicand zero, margin " + std::to_string(kSingularMargin)});
        const bool positive_right = (A > 0.0) == (r > 0.0);
        if (positive_right) {
            iv.lo = std::max(iv.lo, root + kSingularMargin);
        } else {
            iv.hi = std::min(iv.hi, root - kSingularMargin);
        }
    } else if (A < 0.0 && B <= 0.0) {
        throw EmptyDomain("integrand radicand negative everywhere");
    }
    return quadrature_axis(axis, h, dh, base, iv, std::move(ex), desc);
}

/// m (1 + w E)/(1 - w E), E = exp(r x), and its derivative 2 m w r E / (1 - w E)^2.
inline AxisProfile mobius_exp_axis(Axis axis, double m, double w, double r, double base,
                                   const std::string& desc) {
    auto h = [=](double x) {
        const double E = std::exp(r * x);
        return m * (1.0 + w * E) / checked_denominator(1.0 - w * E);
    };
    auto dh = [=](double x) {
        const double E = std::exp(r * x);
        const double d = checked_denominator(1.0 - w * E);
        return 2.0 * m * w * r * E / (d * d);
    };
    Interval iv{-kAxisWindow, kAxisWindow};
    std::vector<Exclusion> ex;
    if (w > 0.0) {
        const double pole = -std::log(w) / r;
        ex.push_back({axis, pole, "integrand denominator zero, margin " + std::to_string(kSingularMargin)});
        if (pole < 0.0) {
            iv.lo = std::max(iv.lo, pole + kSingularMargin);
        } else {
            iv.hi = std::min(iv.hi, pole - kSingularMargin);
        }
    }
    return quadrature_axis(axis, h, dh, base, iv, std::move(ex), desc);
}

} // namespace detail

/// Validates parameters and constructs the two profiles with their per-axis
/// intervals. No causal-character check; see build().
inline FamilyProfiles family_profiles(const SolutionFamily& fam) {
    const FamilyInfo& fi = info(fam.id);
    const std::string name(fi.name);
    for (const auto& [k, val] : fam.params) {
        detail::require(std::isfinite(val), name, "finite parameter '" + k + "'");
    }
    for (const ParamSpec& ps : fi.params) {
        (void)fam.param(ps.name);
    }
    const TranslationType type = fam.surface_type();
    if (!binding(fi.case_id).admits(type)) {
        throw ParameterConstraintViolation(name + ": case " + std::string(to_string(fi.case_id)) +
                                           " does not cover Type " + std::string(to_string(type)));
    }
    const double sigma = fam.branch == Branch::Plus ? 1.0 : -1.0;
    auto P = [&](std::string_view n) { return fam.param(n); };
    using detail::require;

    FamilyProfiles out;
    out.family = fam;
    out.case_id = fi.case_id;
    out.quadrature = fi.quadrature;
    AxisProfile fu, gv;

    switch (fam.id) {
    case FamilyId::F2_23: {
        const double c3 = P("c3"), K = c3 * c3 + 1.0;
        fu = detail::log_cos_axis(Axis::U, -K / 2.0, 2.0 / std::sqrt(K), P("a"), 0.0);
        gv = detail::affine_axis(c3, P("c5"));
        out.odes = {{Axis::U, OdeCase(OdeId::O2_21, c3)}};
        break;
    }
    case FamilyId::F2_24: {
        const double c = P("c3-bar"), K = c * c + 1.0;
        fu = detail::affine_axis(c, P("c6"));
        gv = detail::log_cos_axis(Axis::V, -K / 2.0, 2.0 / std::sqrt(K), P("a1"), 0.0);
        out.odes = {{Axis::V, OdeCase(OdeId::O2_21, c)}};
        break;
    }
    case FamilyId::F2_35: {
        const double c = P("c0-tilde");
        require(c != 0.0, name, "c0-tilde != 0");
        const double K = c * c + 1.0;
        fu = detail::log_cos_axis(Axis::U, K / (2.0 * c), 2.0 * c / std::sqrt(K), P("a-tilde"), 0.0);
        gv = detail::affine_axis(c, P("b-bar"));
        out.odes = {{Axis::U, OdeCase(OdeId::O2_33, c)}};
        break;
    }
    case FamilyId::F2_39: {
        const double c = P("c0-hat"), ah = P("a-hat");
        require(ah > 0.0, name, "a-hat > 0");
        const double K = c * c + 1.0;
        fu = detail::affine_axis(c, P("b0"));
        gv = detail::radical_axis(Axis::V, sigma, ah, 4.0, -1.0 / K, 0.0,
                                  "int_0^v +-1/sqrt(a e^{4x} - 1/(c^2+1))");
        out.odes = {{Axis::V, OdeCase(OdeId::O2_36, c)}};
        break;
    }
    case FamilyId::F2_40:
        fu = detail::affine_axis(P("c0-prime"), P("b-prime"));
        gv = detail::affine_axis(0.0, 0.0);
        break;
    case FamilyId::F2_50:
        fu = detail::affine_axis(P("c0"), P("c2"));
        gv = detail::affine_axis(P("c1"), 0.0);
        break;
    case FamilyId::F2_51: {
        const double c = P("c");
        require(c != 0.0, name, "c != 0");
        fu = detail::log_cos_axis(Axis::U, 1.0 / c, c, P("c3"), P("c5"));
        gv = detail::log_cos_axis(Axis::V, -1.0 / c, c, P("c4"), 0.0);
        break;
    }
    case FamilyId::F3_10:
    case FamilyId::F3_13: {
        const bool on_u = fam.id == FamilyId::F3_10;
        const double c = on_u ? P("c") : P("c-hat");
        require(c * c > 1.0, name, on_u ? "c^2 > 1" : "c-hat^2 > 1");
        const double K = c * c - 1.0;
        AxisProfile lc = detail::log_cos_axis(on_u ? Axis::U : Axis::V, -K / 2.0, 2.0 / std::sqrt(K),
                                              on_u ? P("a") : P("a1"), 0.0);
        AxisProfile af = detail::affine_axis(c, on_u ? P("b-bar") : P("b1-bar"));
        fu = on_u ? lc : af;
        gv = on_u ? af : lc;
        out.odes = {{on_u ? Axis::U : Axis::V, OdeCase(OdeId::O3_8, c)}};
        break;
    }
    case FamilyId::F3_12:
    case FamilyId::F3_14: {
        const bool on_u = fam.id == FamilyId::F3_12;
        const double c = on_u ? P("c") : P("c-hat");
        const double ct = on_u ? P("c-tilde") : P("c1-tilde");
        require(c * c < 1.0, name, on_u ? "c^2 < 1" : "c-hat^2 < 1");
        require(ct != 0.0, name, on_u ? "c-tilde != 0" : "c1-tilde != 0");
        const double rk = std::sqrt(1.0 - c * c);
        AxisProfile q = detail::mobius_exp_axis(on_u ? Axis::U : Axis::V, rk, ct, -4.0 / rk, 0.0,
                                                "int_0 sqrt(1-c^2)(1+ct E)/(1-ct E)");
        AxisProfile af = detail::affine_axis(c, P("b-tilde"));
        fu = on_u ? q : af;
        gv = on_u ? af : q;
        out.odes = {{on_u ? Axis::U : Axis::V, OdeCase(OdeId::O3_8, c)}};
        break;
    }
    case FamilyId::F3_25: {
        const double c = P("c0-tilde");
        require(c != 0.0 && c * c < 1.0, name, "0 < c0-tilde^2 < 1");
        const double k = 1.0 - c * c;
        fu = detail::log_cos_axis(Axis::U, k / (2.0 * c), 2.0 * c / std::sqrt(k), P("a-tilde"), 0.0);
        gv = detail::affine_axis(c, P("b-bar"));
        out.odes = {{Axis::U, OdeCase(OdeId::O3_23, c)}};
        break;
    }
    case FamilyId::F3_27: {
        const double c = P("c0-tilde"), c1 = P("c1");
        require(c * c > 1.0, name, "c0-tilde^2 > 1");
        require(c1 != 0.0, name, "c1 != 0");
        const double rK = std::sqrt(c * c - 1.0);
        fu = detail::mobius_exp_axis(Axis::U, rK, c1, 4.0 * c / rK, 0.0,
                                     "int_0^u sqrt(c^2-1)(1+c1 E)/(1-c1 E)");
        gv = detail::affine_axis(c, P("b1-bar"));
        out.odes = {{Axis::U, OdeCase(OdeId::O3_23, c)}};
        break;
    }
    case FamilyId::F3_30: {
        const double c = P("c0-hat"), ah = P("a-hat");
        require(ah != 0.0, name, "a-hat != 0");
        const double K = c * c + 1.0;
        fu = detail::affine_axis(c, P("b0"));
        gv = detail::radical_axis(Axis::V, sigma, ah, -4.0, 1.0 / K, 0.0,
                                  "int_0^v +-1/sqrt(a e^{-4x} + 1/(c^2+1))");
        out.odes = {{Axis::V, OdeCase(OdeId::O3_28, c)}};
        break;
    }
    case FamilyId::F3_31: {
        const double c0 = P("c0-prime"), c1 = P("c1-prime");
        require(c1 == 0.0 || std::abs(c1 * c1 - c0 * c0 - 2.0) <= 1e-9, name,
                "c1-prime = 0 or c1-prime^2 - c0-prime^2 - 2 = 0");
        fu = detail::affine_axis(c0, P("b-prime"));
        gv = detail::affine_axis(c1, 0.0);
        break;
    }
    case FamilyId::F3_36:
        fu = detail::affine_axis(P("c1"), P("c3"));
        gv = detail::affine_axis(P("c2"), 0.0);
        break;
    case FamilyId::F3_38: {
        const double c0 = P("c0"), ch = P("c-hat"), ch1 = P("c1-hat");
        require(c0 != 0.0 && ch != 0.0 && ch1 != 0.0, name, "c0, c-hat, c1-hat != 0");
        fu = detail::log_expdiff_axis(Axis::U, 1.0 / c0, c0, ch, P("a"));
        gv = detail::log_expdiff_axis(Axis::V, -1.0 / c0, -c0, ch1, 0.0);
        out.odes = {{Axis::U, OdeCase(OdeId::O3_37f, c0)}, {Axis::V, OdeCase(OdeId::O3_37g, c0)}};
        break;
    }
    case FamilyId::F3_41:
        fu = detail::affine_axis(P("c1"), P("c3"));
        gv = detail::affine_axis(P("c2"), 0.0);
        break;
    case FamilyId::F3_43: {
        const double c = P("c0-bar"), c3 = P("c3");
        require(c != 0.0 && c3 != 0.0, name, "c0-bar, c3 != 0");
        fu = detail::log_cos_axis(Axis::U, -1.0 / c, c, -P("c4"), P("b"));
        gv = detail::log_expdiff_axis(Axis::V, 1.0 / c, c, c3, 0.0);
        out.odes = {{Axis::U, OdeCase(OdeId::O3_42f, c)}, {Axis::V, OdeCase(OdeId::O3_42g, c)}};
        break;
    }
    }

    const CaseBinding cb = binding(fi.case_id);
    out.surface = {type, fu.profile, gv.profile, AmbientSpace{cb.signature, cb.connection}};
    out.u_axis = std::move(fu);
    out.v_axis = std::move(gv);
    return out;
}

namespace detail {

// Number of points per axis used to scan the causal constraint.
inline constexpr int kCausalScan = 2001;

struct AxisScan {
    std::vector<double> x;
    std::vector<double> cost;
    std::size_t anchor = 0;
};

inline AxisScan scan_axis(const AxisProfile& a, bool maximise_slope_sq) {
    AxisScan s;
    s.x.resize(kCausalScan);
    s.cost.resize(kCausalScan);
    for (int i = 0; i < kCausalScan; ++i) {
        const double t = static_cast<double>(i) / (kCausalScan - 1);
        const double x = a.interval.lo + t * (a.interval.hi - a.interval.lo);
        const double d = a.slope(x);
        s.x[static_cast<std::size_t>(i)] = x;
        s.cost[static_cast<std::size_t>(i)] = maximise_slope_sq ? -d * d : d * d;
    }
    s.anchor = static_cast<std::size_t>(std::min_element(s.cost.begin(), s.cost.end()) - s.cost.begin());
    return s;
}

// Window [anchor - t (anchor - lo), anchor + t (hi - anchor)] on the scan grid.
inline std::pair<std::size_t, std::size_t> shrink(const AxisScan& s, double t) {
    const std::size_t last = s.x.size() - 1;
    const auto lo = static_cast<std::size_t>(std::floor(static_cast<double>(s.anchor) * (1.0 - t)));
    const auto hi = s.anchor + static_cast<std::size_t>(std::ceil(static_cast<double>(last - s.anchor) * t));
    return {lo, std::min(hi, last)};
}

inline double max_cost(const AxisScan& s, std::pair<std::size_t, std::size_t> w) {
    return *std::max_element(s.cost.begin() + static_cast<std::ptrdiff_t>(w.first),
                             s.cost.begin() + static_cast<std::ptrdiff_t>(w.second) + 1);
}

} // namespace detail

/// Profiles, case binding and a rectangular admissible domain. In Minkowski
/// space the rectangle is shrunk around the most spacelike point until
/// EG - F^2 >= kCausalMargin holds across it; EmptyDomain when no such point exists.
inline BuiltFamily build(const SolutionFamily& fam) {
    FamilyProfiles fp = family_profiles(fam);
    BuiltFamily out{fp.surface, fp.case_id, {fp.u_axis.interval, fp.v_axis.interval, {}}};
    for (const auto* a : {&fp.u_axis, &fp.v_axis}) {
        out.domain.exclusions.insert(out.domain.exclusions.end(), a->exclusions.begin(),
                                     a->exclusions.end());
        if (a->interval.empty()) {
            throw EmptyDomain(std::string(to_string(fam.id)) + ": empty axis interval");
        }
    }
    if (fp.surface.space.signature == Signature::Euclidean) {
        return out;
    }

    // Type I:      EG - F^2 = 1 - f'^2 - g'^2
    // Type II/III: EG - F^2 = g'^2 - 1 - f'^2
    const bool type_one = fp.surface.type == TranslationType::I;
    const detail::AxisScan su = detail::scan_axis(fp.u_axis, false);
    const detail::AxisScan sv = detail::scan_axis(fp.v_axis, !type_one);
    const double bound = (type_one ? 1.0 : -1.0) - kCausalMargin;
    auto fits = [&](double t) {
        return detail::max_cost(su, detail::shrink(su, t)) + detail::max_cost(sv, detail::shrink(sv, t)) <= bound;
    };
    if (!fits(0.0)) {
        const double best = (type_one ? 1.0 : -1.0) - su.cost[su.anchor] - sv.cost[sv.anchor];
        throw EmptyDomain(std::string(to_string(fam.id)) +
                          ": surface is not spacelike on the formula domain (best EG - F^2 = " +
                          std::to_string(best) + ")");
    }
    double t = 1.0;
    if (!fits(1.0)) {
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 50; ++it) {
            const double mid = 0.5 * (lo + hi);
            (fits(mid) ? lo : hi) = mid;
        }
        t = lo;
        out.domain.exclusions.push_back({Axis::U, su.x[su.anchor], "shrunk around anchor to keep EG - F^2 >= 1e-3"});
        out.domain.exclusions.push_back({Axis::V, sv.x[sv.anchor], "shrunk around anchor to keep EG - F^2 >= 1e-3"});
    }
    const auto wu = detail::shrink(su, t);
    const auto wv = detail::shrink(sv, t);
    out.domain.u = {su.x[wu.first], su.x[wu.second]};
    out.domain.v = {sv.x[wv.first], sv.x[wv.second]};
    if (out.domain.u.width() < 1e-3 || out.domain.v.width() < 1e-3) {
        throw EmptyDomain(std::string(to_string(fam.id)) + ": spacelike region too small to sample");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

inline constexpr double kClosedFormTolerance = 1e-8;
inline constexpr double kQuadratureTolerance = 1e-6;

struct VerifyOptions {
    // Adds perturb * u^2 to f (negative control).
    double perturb = 0.0;
    double closed_tolerance = kClosedFormTolerance;
    double quadrature_tolerance = kQuadratureTolerance;
};

struct SamplePoint {
    double u = 0.0;
    double v = 0.0;
};

struct FamilyVerification {
    SolutionFamily family;
    CaseId case_id = CaseId::E_M_I;
    AdmissibleDomain domain;
    int n_samples = 0;
    int numerator_samples = 0; // samples where the (perturbed) surface had a frame
    double max_abs_numerator = 0.0;
    double max_abs_residual = 0.0;
    SamplePoint worst_numerator;
    SamplePoint worst_residual;
    double tolerance = 0.0;
    bool pass = false;
};

/// Sample the admissible domain and report the worst minimality numerator and
/// closed-form residual. Samples are drawn from SplitMix64(rng_seed), u then v.
inline FamilyVerification verify_family(const SolutionFamily& fam, int n_samples,
                                        std::uint64_t rng_seed, const VerifyOptions& opt = {}) {
    if (n_samples <= 0) {
        throw ParameterConstraintViolation("verify_family: n_samples must be positive");
    }
    const BuiltFamily built = build(fam);
    TranslationSurface surf = built.surface;
    if (opt.perturb != 0.0) {
        surf.f = surf.f + quadratic_profile(0.0, 0.0, 2.0 * opt.perturb);
    }

    FamilyVerification r;
    r.family = fam;
    r.case_id = built.case_id;
    r.domain = built.domain;
    r.n_samples = n_samples;
    r.tolerance = info(fam.id).quadrature ? opt.quadrature_tolerance : opt.closed_tolerance;

    SplitMix64 rng(rng_seed);
    for (int i = 0; i < n_samples; ++i) {
        const double u = rng.uniform(built.domain.u.lo, built.domain.u.hi);
        const double v = rng.uniform(built.domain.v.lo, built.domain.v.hi);
        const Jet2 fj = surf.f(u);
        const Jet2 gj = surf.g(v);
        const double res = std::abs(residual(built.case_id, fj, gj));
        if (!(res <= r.max_abs_residual)) {
            r.max_abs_residual = res;
            r.worst_residual = {u, v};
        }
        try {
            const FramePoint p = frame_from_jets(surf.type, surf.space.signature, fj, gj);
            const double num = std::abs(mean_curvature(surf.space, p).numerator);
            ++r.numerator_samples;
            if (!(num <= r.max_abs_numerator)) {
                r.max_abs_numerator = num;
                r.worst_numerator = {u, v};
            }
        } catch (const DegenerateSurface&) {
            // Only reachable for perturbed surfaces leaving the spacelike region.
        }
    }
    r.pass = r.numerator_samples == n_samples && r.max_abs_numerator <= r.tolerance &&
             r.max_abs_residual <= r.tolerance;
    return r;
}

/// Immersion sampled on an nu x nv grid, u-major.
inline std::vector<Vec3> sample_grid(const TranslationSurface& s, Interval u, Interval v, int nu, int nv) {
    if (nu < 2 || nv < 2) {
        throw ParameterConstraintViolation("grid needs at least 2 x 2 points");
    }
    std::vector<Vec3> pts;
    pts.reserve(static_cast<std::size_t>(nu) * static_cast<std::size_t>(nv));
    for (int i = 0; i < nu; ++i) {
        const double uu = u.lo + (u.hi - u.lo) * i / (nu - 1);
        for (int j = 0; j < nv; ++j) {
            const double vv = v.lo + (v.hi - v.lo) * j / (nv - 1);
            pts.push_back(s.immersion(uu, vv));
        }
    }
    return pts;
}

} // namespace transmin
