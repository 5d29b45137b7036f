#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "transmin/curvature.hpp"
#include "transmin/pde.hpp"
#include "transmin/random.hpp"

namespace transmin {

struct EquivalenceSweep {
    CaseId case_id = CaseId::E_M_I;
    int accepted = 0;
    int attempts = 0;
    double max_rel_deviation = 0.0; // max |lambda num - res| / (1 + |res|)
    double acceptance_rate() const { return attempts == 0 ? 0.0 : static_cast<double>(accepted) / attempts; }
};

inline constexpr double kEquivalenceTolerance = 1e-10;

/// Random (f', f'', g', g'') with every component uniform in (-range, range).
/// Each accepted sample is checked on every surface type the case covers;
/// samples with a degenerate or non-spacelike frame are rejected and redrawn.
inline EquivalenceSweep equivalence_sweep(CaseId c, int samples, std::uint64_t seed, double range = 2.0) {
    const CaseBinding b = binding(c);
    const AmbientSpace space{b.signature, b.connection};
    SplitMix64 rng(seed);
    EquivalenceSweep out;
    out.case_id = c;
    const long max_attempts = 1000L * std::max(samples, 1);
    while (out.accepted < samples && out.attempts < max_attempts) {
        ++out.attempts;
        const Jet2 fj{0.0, rng.uniform(-range, range), rng.uniform(-range, range)};
        const Jet2 gj{0.0, rng.uniform(-range, range), rng.uniform(-range, range)};
        const double res = residual(c, fj, gj);
        bool ok = true;
        double worst = 0.0;
        for (TranslationType t : {TranslationType::I, TranslationType::II, TranslationType::III}) {
            if (!b.admits(t)) {
                continue;
            }
            try {
                const FramePoint p = frame_from_jets(t, b.signature, fj, gj);
                const double num = mean_curvature(space, p).numerator;
                const double lam = equivalence_factor(c, t, p);
                worst = std::max(worst, std::abs(lam * num - res) / (1.0 + std::abs(res)));
            } catch (const DegenerateSurface&) {
                ok = false;
                break;
            }
        }
        if (ok) {
            ++out.accepted;
            out.max_rel_deviation = std::max(out.max_rel_deviation, worst);
        }
    }
    return out;
}

} // namespace transmin
