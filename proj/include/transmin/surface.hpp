#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "transmin/ambient.hpp"
#include "transmin/errors.hpp"
#include "transmin/jets.hpp"
#include "transmin/profile.hpp"

namespace transmin {

/// Coordinate arrangement of the immersion:
///   I   (u, v, f(u) + g(v))
///   II  (u, f(u) + g(v), v)
///   III (f(u) + g(v), u, v)
enum class TranslationType { I, II, III };

constexpr std::string_view to_string(TranslationType t) {
    switch (t) {
    case TranslationType::I: return "I";
    case TranslationType::II: return "II";
    case TranslationType::III: return "III";
    }
    return "?";
}

// Smallest accepted EG - F^2.
inline constexpr double kDegeneracyMargin = 1e-10;

struct TranslationSurface {
    TranslationType type = TranslationType::I;
    Profile f;
    Profile g;
    AmbientSpace space;

    Vec3 immersion(double u, double v) const {
        const double h = f(u).v + g(v).v;
        switch (type) {
        case TranslationType::I: return {u, v, h};
        case TranslationType::II: return {u, h, v};
        case TranslationType::III: return {h, u, v};
        }
        return {};
    }
};

struct FirstFundamental {
    double E = 0.0;
    double F = 0.0;
    double G = 0.0;

    constexpr double det() const { return E * G - F * F; }
};

/// Tangent frame, flat second partials and unit normal at one point.
struct FramePoint {
    Vec3 Fu, Fv;
    Vec3 dFu_du, dFu_dv, dFv_du, dFv_dv;
    Vec3 N;
    double normalizer = 0.0; // sqrt(EG - F^2)
    FirstFundamental first;
};

/// Frame from the jets of f at u and g at v. The normal is J (Fu x Fv) / sqrt(EG - F^2)
/// with J = diag(1, 1, +-1); for each type this gives the reference orientation
/// in both ambient spaces, so g(N, N) = +1 (Euclidean) or -1 (spacelike, Minkowski).
inline FramePoint frame_from_jets(TranslationType type, Signature sig, const Jet2& fj,
                                  const Jet2& gj) {
    FramePoint p;
    switch (type) {
    case TranslationType::I:
        p.Fu = {1.0, 0.0, fj.d1};
        p.Fv = {0.0, 1.0, gj.d1};
        p.dFu_du = {0.0, 0.0, fj.d2};
        p.dFv_dv = {0.0, 0.0, gj.d2};
        break;
    case TranslationType::II:
        p.Fu = {1.0, fj.d1, 0.0};
        p.Fv = {0.0, gj.d1, 1.0};
        p.dFu_du = {0.0, fj.d2, 0.0};
        p.dFv_dv = {0.0, gj.d2, 0.0};
        break;
    case TranslationType::III:
        p.Fu = {fj.d1, 1.0, 0.0};
        p.Fv = {gj.d1, 0.0, 1.0};
        p.dFu_du = {fj.d2, 0.0, 0.0};
        p.dFv_dv = {gj.d2, 0.0, 0.0};
        break;
    }
    // Translation surfaces: mixed partials vanish.
    p.dFu_dv = {};
    p.dFv_du = {};

    p.first = {metric_inner(sig, p.Fu, p.Fu), metric_inner(sig, p.Fu, p.Fv),
               metric_inner(sig, p.Fv, p.Fv)};
    const double det = p.first.det();
    if (!(det >= kDegeneracyMargin)) {
        throw DegenerateSurface(std::string("EG - F^2 = ") + std::to_string(det) +
                                (sig == Signature::Lorentzian ? " (surface not spacelike here)"
                                                              : " (degenerate)"));
    }
    p.normalizer = std::sqrt(det);
    p.N = (1.0 / p.normalizer) * lower(sig, cross(p.Fu, p.Fv));
    return p;
}

inline FramePoint frame(const TranslationSurface& s, double u, double v) {
    return frame_from_jets(s.type, s.space.signature, s.f(u), s.g(v));
}

inline FirstFundamental first_fundamental(const TranslationSurface& s, double u, double v) {
    return frame(s, u, v).first;
}

} // namespace transmin
