#pragma once

#include <array>
#include <cmath>
#include <string_view>

namespace transmin {

enum class Signature { Euclidean, Lorentzian };

enum class ConnectionKind { LeviCivita, SemiSymmetricMetric, SemiSymmetricNonMetric };

constexpr std::string_view to_string(Signature s) {
    return s == Signature::Euclidean ? "Euclidean" : "Lorentzian";
}

constexpr std::string_view to_string(ConnectionKind k) {
    switch (k) {
    case ConnectionKind::LeviCivita: return "LeviCivita";
    case ConnectionKind::SemiSymmetricMetric: return "SemiSymmetricMetric";
    case ConnectionKind::SemiSymmetricNonMetric: return "SemiSymmetricNonMetric";
    }
    return "?";
}

// Vector with coefficients in the global frame X1 = d/dx, X2 = d/dy, X3 = d/dz.
struct Vec3 {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;

    constexpr double operator[](int i) const { return i == 0 ? c1 : (i == 1 ? c2 : c3); }

    constexpr Vec3& operator+=(const Vec3& o) {
        c1 += o.c1; c2 += o.c2; c3 += o.c3;
        return *this;
    }
    constexpr Vec3& operator-=(const Vec3& o) {
        c1 -= o.c1; c2 -= o.c2; c3 -= o.c3;
        return *this;
    }
    constexpr Vec3& operator*=(double s) {
        c1 *= s; c2 *= s; c3 *= s;
        return *this;
    }

    friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
    friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
    friend constexpr Vec3 operator-(const Vec3& a) { return {-a.c1, -a.c2, -a.c3}; }
    friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
    friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
    friend constexpr bool operator==(const Vec3&, const Vec3&) = default;

    bool is_finite() const {
        return std::isfinite(c1) && std::isfinite(c2) && std::isfinite(c3);
    }
};

inline constexpr Vec3 X1{1.0, 0.0, 0.0};
inline constexpr Vec3 X2{0.0, 1.0, 0.0};
inline constexpr Vec3 X3{0.0, 0.0, 1.0};

constexpr Vec3 basis(int i) { return i == 0 ? X1 : (i == 1 ? X2 : X3); }

// Flat cross product in coordinates; no metric involved.
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.c2 * b.c3 - a.c3 * b.c2, a.c3 * b.c1 - a.c1 * b.c3, a.c1 * b.c2 - a.c2 * b.c1};
}

constexpr double determinant(const Vec3& a, const Vec3& b, const Vec3& c) {
    const Vec3 bc = cross(b, c);
    return a.c1 * bc.c1 + a.c2 * bc.c2 + a.c3 * bc.c3;
}

// diag(1, 1, +-1) coefficient of the X3 direction.
constexpr double x3_weight(Signature s) { return s == Signature::Euclidean ? 1.0 : -1.0; }

constexpr double metric_inner(Signature s, const Vec3& a, const Vec3& b) {
    return a.c1 * b.c1 + a.c2 * b.c2 + x3_weight(s) * a.c3 * b.c3;
}

// Index lowering by the ambient metric, J = diag(1, 1, +-1).
constexpr Vec3 lower(Signature s, const Vec3& a) { return {a.c1, a.c2, x3_weight(s) * a.c3}; }

/// Ambient geometry: metric signature plus one of the three connections.
/// The generator of the semi-symmetric connections is always X3.
struct AmbientSpace {
    Signature signature = Signature::Euclidean;
    ConnectionKind connection = ConnectionKind::LeviCivita;

    static constexpr Vec3 generator = X3;

    constexpr double inner(const Vec3& a, const Vec3& b) const {
        return metric_inner(signature, a, b);
    }

    constexpr AmbientSpace with(ConnectionKind k) const { return {signature, k}; }

    friend constexpr bool operator==(const AmbientSpace&, const AmbientSpace&) = default;
};

/// Connection correction nabla_X W - D_X W for the selected connection.
///   metric:     g(W,P) X - g(X,W) P
///   non-metric: g(W,P) X
constexpr Vec3 connection_correction(const AmbientSpace& space, const Vec3& x, const Vec3& w) {
    const Vec3& p = AmbientSpace::generator;
    switch (space.connection) {
    case ConnectionKind::LeviCivita:
        return {};
    case ConnectionKind::SemiSymmetricMetric:
        return space.inner(w, p) * x - space.inner(x, w) * p;
    case ConnectionKind::SemiSymmetricNonMetric:
        return space.inner(w, p) * x;
    }
    return {};
}

/// nabla_X W given the flat directional derivative D_X W.
constexpr Vec3 covariant_derivative(const AmbientSpace& space, const Vec3& x, const Vec3& w,
                                    const Vec3& dw_along_x) {
    return dw_along_x + connection_correction(space, x, w);
}

/// T(X,Y) = nabla_X Y - nabla_Y X - [X,Y] for constant-coefficient fields, where the
/// bracket and flat derivatives vanish. For both semi-symmetric kinds this equals
/// g(Y,P) X - g(X,P) Y.
constexpr Vec3 torsion(const AmbientSpace& space, const Vec3& x, const Vec3& y) {
    return connection_correction(space, x, y) - connection_correction(space, y, x);
}

} // namespace transmin
