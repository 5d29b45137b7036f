#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "transmin/errors.hpp"
#include "transmin/profile.hpp"

namespace transmin {

/// Reduced first-order equations h' = phi(h), h the derivative of a profile.
/// Each case carries one real parameter k.
enum class OdeId { O2_21, O2_33, O2_36, O3_8, O3_23, O3_28, O3_37f, O3_37g, O3_42f, O3_42g };

inline constexpr std::array<OdeId, 10> kAllOdes = {
    OdeId::O2_21, OdeId::O2_33, OdeId::O2_36, OdeId::O3_8,   OdeId::O3_23,
    OdeId::O3_28, OdeId::O3_37f, OdeId::O3_37g, OdeId::O3_42f, OdeId::O3_42g};

constexpr std::string_view to_string(OdeId id) {
    switch (id) {
    case OdeId::O2_21: return "O2_21";
    case OdeId::O2_33: return "O2_33";
    case OdeId::O2_36: return "O2_36";
    case OdeId::O3_8: return "O3_8";
    case OdeId::O3_23: return "O3_23";
    case OdeId::O3_28: return "O3_28";
    case OdeId::O3_37f: return "O3_37f";
    case OdeId::O3_37g: return "O3_37g";
    case OdeId::O3_42f: return "O3_42f";
    case OdeId::O3_42g: return "O3_42g";
    }
    return "?";
}

inline OdeId parse_ode_id(std::string_view s) {
    for (OdeId id : kAllOdes) {
        if (to_string(id) == s) {
            return id;
        }
    }
    throw UnknownCase("unknown ODE case '" + std::string(s) + "'");
}

struct OdeCase {
    OdeId id = OdeId::O2_21;
    double k = 0.0;

    OdeCase() = default;
    OdeCase(OdeId id_, double k_) : id(id_), k(k_) {
        if (!std::isfinite(k)) {
            throw ParameterConstraintViolation("ODE parameter must be finite");
        }
        if ((id == OdeId::O3_8 || id == OdeId::O3_23) && std::abs(k * k - 1.0) < 1e-12) {
            throw ParameterConstraintViolation(std::string(to_string(id)) + " requires k^2 != 1");
        }
    }

    double rhs(double h) const {
        const double hh = h * h;
        switch (id) {
        case OdeId::O2_21: return 2.0 / (k * k + 1.0) * hh + 2.0;
        case OdeId::O2_33: return -2.0 * k / (k * k + 1.0) * hh - 2.0 * k;
        case OdeId::O2_36: return -2.0 / (k * k + 1.0) * hh * h - 2.0 * h;
        case OdeId::O3_8: return 2.0 / (k * k - 1.0) * hh + 2.0;
        case OdeId::O3_23: return 2.0 * k / (k * k - 1.0) * hh - 2.0 * k;
        case OdeId::O3_28: return -2.0 / (k * k + 1.0) * hh * h + 2.0 * h;
        case OdeId::O3_37f: return k * (1.0 - hh);
        case OdeId::O3_37g: return k * (hh - 1.0);
        case OdeId::O3_42f: return k * (hh + 1.0);
        case OdeId::O3_42g: return k * (1.0 - hh);
        }
        return 0.0;
    }
};

struct OdeNode {
    double t = 0.0;
    double h = 0.0;     // profile derivative
    double value = 0.0; // profile value, integrated alongside h
};

struct Trajectory {
    std::vector<OdeNode> nodes;
    double step = 0.0;
    int method_order = 4;
};

inline constexpr double kBlowUpThreshold = 1e12;

/// Classic RK4 on (value, h)' = (h, phi(h)) over t_span with a uniform step
/// no larger than `step`; the last node lands exactly on t_span.hi.
inline Trajectory integrate(const OdeCase& ode, double h0, Interval t_span, double step,
                            double value0 = 0.0) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw InvalidStep("integrate: step must be positive and finite");
    }
    if (!(t_span.hi > t_span.lo) || !t_span.bounded()) {
        throw InvalidStep("integrate: t_span must be a bounded interval with hi > lo");
    }
    const double len = t_span.hi - t_span.lo;
    const auto n = static_cast<std::size_t>(std::ceil(len / step - 1e-9));
    const double dt = len / static_cast<double>(n);

    Trajectory tr;
    tr.step = dt;
    tr.nodes.reserve(n + 1);
    double h = h0, y = value0;
    tr.nodes.push_back({t_span.lo, h, y});
    for (std::size_t i = 0; i < n; ++i) {
        const double k1 = ode.rhs(h);
        const double k2 = ode.rhs(h + 0.5 * dt * k1);
        const double k3 = ode.rhs(h + 0.5 * dt * k2);
        const double k4 = ode.rhs(h + dt * k3);
        // value' = h, so its stages are the h stages.
        const double h2 = h + 0.5 * dt * k1;
        const double h3 = h + 0.5 * dt * k2;
        const double h4 = h + dt * k3;
        y += dt / 6.0 * (h + 2.0 * h2 + 2.0 * h3 + h4);
        h += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double t = i + 1 == n ? t_span.hi : t_span.lo + static_cast<double>(i + 1) * dt;
        if (!std::isfinite(h) || !std::isfinite(y) || std::abs(h) > kBlowUpThreshold ||
            std::abs(y) > kBlowUpThreshold) {
            throw BlowUp(std::string(to_string(ode.id)) + ": solution blew up near t = " +
                         std::to_string(t));
        }
        tr.nodes.push_back({t, h, y});
    }
    return tr;
}

/// Tabulate an analytic profile on the same node layout integrate() would use.
inline Trajectory sample_profile(const Profile& p, Interval t_span, double step) {
    if (!(step > 0.0) || !(t_span.hi > t_span.lo) || !t_span.bounded()) {
        throw InvalidStep("sample_profile: invalid span or step");
    }
    const double len = t_span.hi - t_span.lo;
    const auto n = static_cast<std::size_t>(std::ceil(len / step - 1e-9));
    const double dt = len / static_cast<double>(n);
    Trajectory tr;
    tr.step = dt;
    tr.method_order = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        const double t = i == n ? t_span.hi : t_span.lo + static_cast<double>(i) * dt;
        const Jet2 j = p(t);
        tr.nodes.push_back({t, j.d1, j.v});
    }
    return tr;
}

/// Sup-norm discrepancy between a trajectory and a profile over the trajectory
/// nodes, taking the worse of the derivative and value errors.
inline double compare_profile(const Trajectory& numeric, const Profile& analytic) {
    double worst = 0.0;
    for (const OdeNode& n : numeric.nodes) {
        Jet2 j;
        try {
            j = analytic(n.t);
        } catch (const DomainError& e) {
            throw DomainMismatch(std::string("compare_profile: ") + e.what());
        }
        worst = std::max({worst, std::abs(n.h - j.d1), std::abs(n.value - j.v)});
    }
    return worst;
}

// ---------------------------------------------------------------------------
// W = h^-2 linearization of the cubic equations
// ---------------------------------------------------------------------------

struct SubstitutionReport {
    double expected_intercept = 0.0; // W' = intercept + slope * W
    double expected_slope = 0.0;
    double fitted_intercept = 0.0;
    double fitted_slope = 0.0;
    double deviation = 0.0; // max |W'_num - (intercept + slope W)| / (1 + |W'_num|)
};

/// Checks that W = h^-2 along an RK4 trajectory of O2_36 or O3_28 obeys the
/// linear equation W' = 4/(k^2+1) + 4W (Euclidean) or W' = 4/(k^2+1) - 4W
/// (Minkowski). W' comes from fourth-order central differences of the nodes,
/// so the check is independent of the right-hand side being substituted.
inline SubstitutionReport substitution_check(const OdeCase& ode, double h0, Interval span,
                                             double step = 1e-3) {
    if (ode.id != OdeId::O2_36 && ode.id != OdeId::O3_28) {
        throw UnknownCase("substitution_check applies to O2_36 and O3_28 only");
    }
    const Trajectory tr = integrate(ode, h0, span, step);
    const std::size_t n = tr.nodes.size();
    if (n < 9) {
        throw InvalidStep("substitution_check: span too short for the step");
    }
    std::vector<double> W(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double h = tr.nodes[i].h;
        if (std::abs(h) < 1e-300 || (i > 0 && (h > 0) != (tr.nodes[0].h > 0))) {
            throw DomainError("substitution_check: h crosses zero");
        }
        W[i] = 1.0 / (h * h);
    }

    SubstitutionReport r;
    r.expected_intercept = 4.0 / (ode.k * ode.k + 1.0);
    r.expected_slope = ode.id == OdeId::O2_36 ? 4.0 : -4.0;

    const double dt = tr.step;
    const auto m = static_cast<Eigen::Index>(n - 4);
    Eigen::MatrixXd A(m, 2);
    Eigen::VectorXd b(m);
    double wlo = W[2], whi = W[2];
    for (std::size_t i = 2; i + 2 < n; ++i) {
        const double dW = (W[i - 2] - 8.0 * W[i - 1] + 8.0 * W[i + 1] - W[i + 2]) / (12.0 * dt);
        const auto row = static_cast<Eigen::Index>(i - 2);
        A(row, 0) = 1.0;
        A(row, 1) = W[i];
        b(row) = dW;
        wlo = std::min(wlo, W[i]);
        whi = std::max(whi, W[i]);
        const double model = r.expected_intercept + r.expected_slope * W[i];
        r.deviation = std::max(r.deviation, std::abs(dW - model) / (1.0 + std::abs(dW)));
    }
    if (whi - wlo <= 1e-12 * (1.0 + std::abs(whi))) {
        throw IllConditionedFit("substitution_check: W is constant (equilibrium trajectory)");
    }
    const Eigen::Vector2d x = A.colPivHouseholderQr().solve(b);
    r.fitted_intercept = x(0);
    r.fitted_slope = x(1);
    return r;
}

} // namespace transmin
