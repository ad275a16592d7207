#pragma once

#include "cgp/rteval.hpp"

namespace cgp {

/// Evaluation of a framed Omega-colored circle around one V_alpha strand.
struct StabilizationProbe {
    Scalar raw;           // the scalar s with evaluation = s * id
    Scalar twist;         // theta of the probe strand
    Scalar coefficient;   // Delta_- = s / theta for framing -1, Delta_+ = s * theta for framing +1
    double scalar_deviation = 0.0;
};
/// framing must be -1 or +1; the circle's meridian degree follows from consistency.
StabilizationProbe stabilization_probe(const ScalarContext& ctx, Scalar alpha, int framing,
                                       const EvalOptions& opts = {});

/**
 * A 0-framed Omega_h circle around (+V_i)(-V_j).  For i = j the evaluation is
 * proportional to coev_left o ev_right and `coefficient` is the factor zeta with
 * evaluation = zeta d(V_i)^{-1} coev_left o ev_right.
 */
struct ModularityProbe {
    Matrix tangle;
    Scalar coefficient;
    double norm = 0.0;      // max entry of the evaluation
    double residual = 0.0;  // relative distance from the projector line
};
ModularityProbe modularity_probe(const ScalarContext& ctx, Scalar alpha_i, Scalar alpha_j, const Degree& h,
                                 const EvalOptions& opts = {});

/// Delta_-, Delta_+, zeta and the derived D, eta, delta from the given probes.
InvariantConstants compute_constants(const ScalarContext& ctx, const Degree& probe_g, Scalar probe_alpha,
                                     const EvalOptions& opts = {});
/// compute_constants with a fixed generic probe.
InvariantConstants default_constants(const ScalarContext& ctx, const EvalOptions& opts = {});

}  // namespace cgp
