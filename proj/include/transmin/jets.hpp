#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "transmin/errors.hpp"

namespace transmin {

/// Second-order jet of a scalar function of one variable at a point:
/// value, first derivative and second derivative.
struct Jet2 {
    double v = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;

    static constexpr Jet2 constant(double c) { return {c, 0.0, 0.0}; }
    static constexpr Jet2 variable(double x) { return {x, 1.0, 0.0}; }

    bool is_finite() const { return std::isfinite(v) && std::isfinite(d1) && std::isfinite(d2); }

    constexpr Jet2& operator+=(const Jet2& o) {
        v += o.v; d1 += o.d1; d2 += o.d2;
        return *this;
    }
    constexpr Jet2& operator-=(const Jet2& o) {
        v -= o.v; d1 -= o.d1; d2 -= o.d2;
        return *this;
    }
    constexpr Jet2& operator*=(double s) {
        v *= s; d1 *= s; d2 *= s;
        return *this;
    }

    friend constexpr bool operator==(const Jet2&, const Jet2&) = default;
};

constexpr Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
constexpr Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
constexpr Jet2 operator-(const Jet2& a) { return {-a.v, -a.d1, -a.d2}; }
constexpr Jet2 operator+(Jet2 a, double c) { a.v += c; return a; }
constexpr Jet2 operator+(double c, Jet2 a) { a.v += c; return a; }
constexpr Jet2 operator-(Jet2 a, double c) { a.v -= c; return a; }
constexpr Jet2 operator-(double c, const Jet2& a) { return {c - a.v, -a.d1, -a.d2}; }
constexpr Jet2 operator*(Jet2 a, double s) { return a *= s; }
constexpr Jet2 operator*(double s, Jet2 a) { return a *= s; }

// Leibniz rule to second order.
constexpr Jet2 operator*(const Jet2& a, const Jet2& b) {
    return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}

/// Compose an outer scalar function, given its value and first two derivatives
/// at x.v, with the inner jet x.
constexpr Jet2 chain(double phi, double dphi, double d2phi, const Jet2& x) {
    return {phi, dphi * x.d1, d2phi * x.d1 * x.d1 + dphi * x.d2};
}

inline Jet2 reciprocal(const Jet2& b) {
    if (b.v == 0.0) {
        throw DomainError("jet reciprocal: division by zero");
    }
    const double r = 1.0 / b.v;
    return chain(r, -r * r, 2.0 * r * r * r, b);
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * reciprocal(b); }
inline Jet2 operator/(const Jet2& a, double s) {
    if (s == 0.0) {
        throw DomainError("jet division by zero");
    }
    return a * (1.0 / s);
}
inline Jet2 operator/(double c, const Jet2& b) { return c * reciprocal(b); }

// Zeros of the argument of ln|x| (and of cos in ln|cos|, tan) are excluded with
// this guard so evaluation never returns an infinity.
inline constexpr double kLogGuard = 1e-6;

enum class Elementary { Sin, Cos, Tan, Exp, Ln, Sqrt, LnAbs, LnAbsCos, Tanh };

constexpr std::string_view to_string(Elementary fn) {
    switch (fn) {
    case Elementary::Sin: return "sin";
    case Elementary::Cos: return "cos";
    case Elementary::Tan: return "tan";
    case Elementary::Exp: return "exp";
    case Elementary::Ln: return "ln";
    case Elementary::Sqrt: return "sqrt";
    case Elementary::LnAbs: return "ln_abs";
    case Elementary::LnAbsCos: return "ln_abs_cos";
    case Elementary::Tanh: return "tanh";
    }
    return "?";
}

inline Jet2 jet_elementary(Elementary fn, const Jet2& x) {
    const double a = x.v;
    auto fail = [&](const char* why) {
        throw DomainError(std::string(to_string(fn)) + ": " + why + " at " + std::to_string(a));
    };
    switch (fn) {
    case Elementary::Sin: {
        const double s = std::sin(a), c = std::cos(a);
        return chain(s, c, -s, x);
    }
    case Elementary::Cos: {
        const double s = std::sin(a), c = std::cos(a);
        return chain(c, -s, -c, x);
    }
    case Elementary::Tan: {
        const double c = std::cos(a);
        if (std::abs(c) <= kLogGuard) {
            fail("cos of argument vanishes");
        }
        const double t = std::tan(a);
        const double sec2 = 1.0 + t * t;
        return chain(t, sec2, 2.0 * t * sec2, x);
    }
    case Elementary::Exp: {
        const double e = std::exp(a);
        if (!std::isfinite(e)) {
            fail("overflow");
        }
        return chain(e, e, e, x);
    }
    case Elementary::Ln: {
        if (!(a > 0.0)) {
            fail("argument must be positive");
        }
        return chain(std::log(a), 1.0 / a, -1.0 / (a * a), x);
    }
    case Elementary::Sqrt: {
        if (!(a > 0.0)) {
            fail("argument must be positive");
        }
        const double r = std::sqrt(a);
        return chain(r, 0.5 / r, -0.25 / (r * a), x);
    }
    case Elementary::LnAbs: {
        if (!(std::abs(a) > kLogGuard)) {
            fail("argument within guard of zero");
        }
        return chain(std::log(std::abs(a)), 1.0 / a, -1.0 / (a * a), x);
    }
    case Elementary::LnAbsCos: {
        const double c = std::cos(a);
        if (!(std::abs(c) > kLogGuard)) {
            fail("cos of argument within guard of zero");
        }
        const double t = std::tan(a);
        return chain(std::log(std::abs(c)), -t, -(1.0 + t * t), x);
    }
    case Elementary::Tanh: {
        const double t = std::tanh(a);
        const double s2 = 1.0 - t * t;
        return chain(t, s2, -2.0 * t * s2, x);
    }
    }
    fail("unknown function");
    return {};
}

inline Jet2 sin(const Jet2& x) { return jet_elementary(Elementary::Sin, x); }
inline Jet2 cos(const Jet2& x) { return jet_elementary(Elementary::Cos, x); }
inline Jet2 tan(const Jet2& x) { return jet_elementary(Elementary::Tan, x); }
inline Jet2 exp(const Jet2& x) { return jet_elementary(Elementary::Exp, x); }
inline Jet2 log(const Jet2& x) { return jet_elementary(Elementary::Ln, x); }
inline Jet2 sqrt(const Jet2& x) { return jet_elementary(Elementary::Sqrt, x); }
inline Jet2 log_abs(const Jet2& x) { return jet_elementary(Elementary::LnAbs, x); }
inline Jet2 log_abs_cos(const Jet2& x) { return jet_elementary(Elementary::LnAbsCos, x); }
inline Jet2 tanh(const Jet2& x) { return jet_elementary(Elementary::Tanh, x); }

} // namespace transmin
