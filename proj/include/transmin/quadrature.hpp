#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <type_traits>

#include "transmin/errors.hpp"

namespace transmin {

struct QuadratureSpec {
    double abs_tol = 1e-10;
    int max_depth = 40;
    // Hard cap on integrand evaluations so a hostile integrand fails instead of
    // recursing through 2^max_depth panels.
    std::size_t max_evaluations = 5'000'000;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
};

namespace detail {

template <class F>
class AdaptiveSimpson {
public:
    AdaptiveSimpson(F& f, const QuadratureSpec& spec) : f_(f), spec_(spec) {}

    QuadratureResult run(double a, double b) {
        const double fa = eval(a);
        const double fb = eval(b);
        const double m = 0.5 * (a + b);
        const double fm = eval(m);
        const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        QuadratureResult r;
        r.value = recurse(a, b, fa, fm, fb, whole, spec_.abs_tol, spec_.max_depth, r.error_estimate);
        r.evaluations = evaluations_;
        return r;
    }

private:
    double eval(double x) {
        if (++evaluations_ > spec_.max_evaluations) {
            throw QuadratureFailure("adaptive Simpson: evaluation budget exhausted");
        }
        const double y = f_(x);
        if (!std::isfinite(y)) {
            throw DomainError("integrand not finite at " + std::to_string(x));
        }
        return y;
    }

    double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol,
                   int depth, double& err) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = eval(lm);
        const double frm = eval(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double delta = left + right - whole;
        if (std::abs(delta) <= 15.0 * tol) {
            err += std::abs(delta) / 15.0;
            return left + right + delta / 15.0;
        }
        if (depth <= 0) {
            throw QuadratureFailure("adaptive Simpson: max depth exceeded near x = " +
                                    std::to_string(m));
        }
        return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, err) +
               recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, err);
    }

    F& f_;
    const QuadratureSpec& spec_;
    std::size_t evaluations_ = 0;
};

} // namespace detail

/// Integral of f over [a, b] (b < a allowed) by adaptive Simpson with
/// Richardson correction. The accumulated error estimate never exceeds
/// spec.abs_tol; otherwise QuadratureFailure is thrown.
template <class F>
QuadratureResult integrate_simpson(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
    if (a == b) {
        return {};
    }
    if (b < a) {
        QuadratureResult r = integrate_simpson(f, b, a, spec);
        r.value = -r.value;
        return r;
    }
    detail::AdaptiveSimpson<std::remove_reference_t<F>> s(f, spec);
    return s.run(a, b);
}

} // namespace transmin
