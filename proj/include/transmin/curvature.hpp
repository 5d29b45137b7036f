#pragma once

#include "transmin/ambient.hpp"
#include "transmin/surface.hpp"

namespace transmin {

/// sigma(E_i, E_j) = g(nabla_{E_i} E_j, N) with E_1 = F_u, E_2 = F_v.
struct SigmaMatrix {
    double s11 = 0.0;
    double s12 = 0.0;
    double s21 = 0.0;
    double s22 = 0.0;
};

struct CurvatureReport {
    SigmaMatrix sigma;
    double H = 0.0;
    double numerator = 0.0;
    FirstFundamental first;
};

inline SigmaMatrix second_form(const AmbientSpace& space, const FramePoint& p) {
    auto proj = [&](const Vec3& x, const Vec3& w, const Vec3& dw) {
        return space.inner(covariant_derivative(space, x, w, dw), p.N);
    };
    return {proj(p.Fu, p.Fu, p.dFu_du), proj(p.Fu, p.Fv, p.dFv_du), proj(p.Fv, p.Fu, p.dFu_dv),
            proj(p.Fv, p.Fv, p.dFv_dv)};
}

inline SigmaMatrix second_form(const TranslationSurface& s, ConnectionKind kind, double u, double v) {
    return second_form(s.space.with(kind), frame(s, u, v));
}

// G s11 - F s12 - F s21 + E s22, applied verbatim in both signatures.
constexpr double minimality_numerator(const FirstFundamental& I, const SigmaMatrix& s) {
    return I.G * s.s11 - I.F * s.s12 - I.F * s.s21 + I.E * s.s22;
}

inline CurvatureReport mean_curvature(const AmbientSpace& space, const FramePoint& p) {
    CurvatureReport r;
    r.sigma = second_form(space, p);
    r.first = p.first;
    r.numerator = minimality_numerator(p.first, r.sigma);
    r.H = r.numerator / (2.0 * p.first.det());
    return r;
}

inline CurvatureReport mean_curvature(const TranslationSurface& s, ConnectionKind kind, double u,
                                      double v) {
    return mean_curvature(s.space.with(kind), frame(s, u, v));
}

inline CurvatureReport mean_curvature(const TranslationSurface& s, double u, double v) {
    return mean_curvature(s.space, frame(s, u, v));
}

} // namespace transmin
