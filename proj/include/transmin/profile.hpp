#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <sstream>
#include <string>
#include <utility>

#include "transmin/errors.hpp"
#include "transmin/jets.hpp"
#include "transmin/quadrature.hpp"

namespace transmin {

/// Open interval (lo, hi); either end may be infinite.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    constexpr bool contains(double x) const { return lo < x && x < hi; }
    constexpr bool empty() const { return !(lo < hi); }
    constexpr bool bounded() const {
        return lo > -std::numeric_limits<double>::infinity() &&
               hi < std::numeric_limits<double>::infinity();
    }
    constexpr double width() const { return hi - lo; }
    constexpr double mid() const { return 0.5 * (lo + hi); }

    constexpr Interval intersect(const Interval& o) const {
        return {lo > o.lo ? lo : o.lo, hi < o.hi ? hi : o.hi};
    }

    // Closed-interval containment, used for user-supplied sampling ranges.
    constexpr bool covers(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }

    friend constexpr bool operator==(const Interval&, const Interval&) = default;
};

inline std::string to_string(const Interval& i) {
    std::ostringstream os;
    os.precision(17);
    os << "(" << i.lo << ", " << i.hi << ")";
    return os.str();
}

/// A one-variable profile function f(u) with its second-order jet. Immutable
/// and cheap to copy; evaluation is reentrant.
class Profile {
public:
    using Evaluator = std::function<Jet2(double)>;

    Profile() = default;
    Profile(Evaluator eval, Interval domain, std::string description, bool quadrature_backed = false)
        : eval_(std::make_shared<const Evaluator>(std::move(eval))), domain_(domain),
          description_(std::move(description)), quadrature_backed_(quadrature_backed) {}

    Jet2 operator()(double u) const {
        if (!eval_) {
            throw DomainError("empty profile");
        }
        if (!domain_.contains(u)) {
            throw DomainError("profile '" + description_ + "' evaluated at " + std::to_string(u) +
                              " outside its domain " + to_string(domain_));
        }
        const Jet2 j = (*eval_)(u);
        if (!j.is_finite()) {
            throw DomainError("profile '" + description_ + "' not finite at " + std::to_string(u));
        }
        return j;
    }

    const Interval& domain() const { return domain_; }
    const std::string& description() const { return description_; }
    bool quadrature_backed() const { return quadrature_backed_; }

    Profile restricted(const Interval& to) const {
        Profile p = *this;
        p.domain_ = domain_.intersect(to);
        return p;
    }

    friend Profile operator+(const Profile& a, const Profile& b) {
        auto ea = a.eval_;
        auto eb = b.eval_;
        return Profile([ea, eb](double u) { return (*ea)(u) + (*eb)(u); },
                       a.domain_.intersect(b.domain_), a.description_ + " + " + b.description_,
                       a.quadrature_backed_ || b.quadrature_backed_);
    }

private:
    std::shared_ptr<const Evaluator> eval_;
    Interval domain_;
    std::string description_;
    bool quadrature_backed_ = false;
};

enum class ClosedTemplate {
    Affine,              // c*u + b                              params {c, b}
    Quadratic,           // v0 + d1*(u-u0) + d2*(u-u0)^2/2       params {v0, d1, d2, u0}
    ScaledLogAbsCos,     // s*ln|cos(q*u - a)| + b               params {s, q, a, b}
    ScaledLogAbsExpDiff, // s*ln|exp(p*u) - w*exp(-p*u)| + b     params {s, p, w, b}
};

constexpr std::size_t parameter_count(ClosedTemplate t) {
    switch (t) {
    case ClosedTemplate::Affine: return 2;
    case ClosedTemplate::Quadratic: return 4;
    case ClosedTemplate::ScaledLogAbsCos: return 4;
    case ClosedTemplate::ScaledLogAbsExpDiff: return 4;
    }
    return 0;
}

namespace detail {

inline std::string describe(ClosedTemplate t, std::span<const double> p) {
    std::ostringstream os;
    os.precision(17);
    switch (t) {
    case ClosedTemplate::Affine:
        os << p[0] << "*u + " << p[1];
        break;
    case ClosedTemplate::Quadratic:
        os << p[0] << " + " << p[1] << "*(u-" << p[3] << ") + " << p[2] << "/2*(u-" << p[3] << ")^2";
        break;
    case ClosedTemplate::ScaledLogAbsCos:
        os << p[0] << "*ln|cos(" << p[1] << "*u - " << p[2] << ")| + " << p[3];
        break;
    case ClosedTemplate::ScaledLogAbsExpDiff:
        os << p[0] << "*ln|exp(" << p[1] << "*u) - " << p[2] << "*exp(-" << p[1] << "*u)| + " << p[3];
        break;
    }
    return os.str();
}

} // namespace detail

/// Profile from one of the closed-form templates. Singular points (zeros of
/// the cosine or of the exponential difference) raise DomainError on evaluation.
inline Profile profile_closed(ClosedTemplate t, std::span<const double> params,
                              Interval domain = {}) {
    if (params.size() != parameter_count(t)) {
        throw DomainError("profile_closed: wrong parameter count for template");
    }
    for (double x : params) {
        if (!std::isfinite(x)) {
            throw DomainError("profile_closed: non-finite parameter");
        }
    }
    std::string desc = detail::describe(t, params);
    switch (t) {
    case ClosedTemplate::Affine: {
        const double c = params[0], b = params[1];
        return Profile([c, b](double u) { return Jet2{c * u + b, c, 0.0}; }, domain, desc);
    }
    case ClosedTemplate::Quadratic: {
        const double v0 = params[0], d1 = params[1], d2 = params[2], u0 = params[3];
        return Profile(
            [=](double u) {
                const double x = u - u0;
                return Jet2{v0 + d1 * x + 0.5 * d2 * x * x, d1 + d2 * x, d2};
            },
            domain, desc);
    }
    case ClosedTemplate::ScaledLogAbsCos: {
        const double s = params[0], q = params[1], a = params[2], b = params[3];
        return Profile(
            [=](double u) {
                const Jet2 theta{q * u - a, q, 0.0};
                return s * log_abs_cos(theta) + b;
            },
            domain, desc);
    }
    case ClosedTemplate::ScaledLogAbsExpDiff: {
        const double s = params[0], p = params[1], w = params[2], b = params[3];
        return Profile(
            [=](double u) {
                const Jet2 x{u, 1.0, 0.0};
                return s * log_abs(exp(p * x) - w * exp(-p * x)) + b;
            },
            domain, desc);
    }
    }
    throw DomainError("profile_closed: unknown template");
}

inline Profile profile_closed(ClosedTemplate t, std::initializer_list<double> params,
                              Interval domain = {}) {
    return profile_closed(t, std::span<const double>(params.begin(), params.size()), domain);
}

inline Profile affine_profile(double c, double b) { return profile_closed(ClosedTemplate::Affine, {c, b}); }

// Local germ with prescribed jet at u0; used for jet-level sweeps and perturbations.
inline Profile quadratic_profile(double v0, double d1, double d2, double u0 = 0.0) {
    return profile_closed(ClosedTemplate::Quadratic, {v0, d1, d2, u0});
}

/// f(u) = base + integral_0^u integrand(x) dx, with f' = integrand(u) and
/// f'' = integrand_d1(u) in closed form. Only the value needs quadrature.
inline Profile profile_quadrature(std::function<double(double)> integrand,
                                  std::function<double(double)> integrand_d1, double base,
                                  QuadratureSpec spec = {}, Interval domain = {},
                                  std::string description = "quadrature profile") {
    auto fn = std::make_shared<const std::function<double(double)>>(std::move(integrand));
    auto dfn = std::make_shared<const std::function<double(double)>>(std::move(integrand_d1));
    return Profile(
        [fn, dfn, base, spec](double u) {
            const double d1 = (*fn)(u);
            const double d2 = (*dfn)(u);
            const QuadratureResult q = integrate_simpson(*fn, 0.0, u, spec);
            return Jet2{base + q.value, d1, d2};
        },
        domain, std::move(description), true);
}

} // namespace transmin
