#include "cgp/constants.hpp"

#include "cgp/builders.hpp"
#include "cgp/errors.hpp"

namespace cgp {

StabilizationProbe stabilization_probe(const ScalarContext& ctx, Scalar alpha, int framing,
                                       const EvalOptions& opts) {
    if (framing != 1 && framing != -1) throw Error(ErrorKind::ParseError, "stabilization framing must be +-1");
    DiagramBuilder b(Word{{+1, 0}}, {Color::typical(alpha)});
    // framing * x + lk * alpha = 0 with lk = -1
    const Scalar x = alpha / static_cast<double>(framing);
    add_meridian(b, 0, 1, kirby_color(ctx, Degree(x)), framing);
    const Matrix m = evaluate_formal(ctx, b.build(), opts);
    StabilizationProbe p;
    p.raw = m(0, 0);
    p.scalar_deviation = max_abs(m - p.raw * Matrix::Identity(m.rows(), m.cols())) /
                         std::max(1.0, std::abs(p.raw));
    p.twist = twist(ctx, typical_module(ctx, alpha))(0, 0);
    p.coefficient = framing < 0 ? p.raw / p.twist : p.raw * p.twist;
    return p;
}

ModularityProbe modularity_probe(const ScalarContext& ctx, Scalar alpha_i, Scalar alpha_j, const Degree& h,
                                 const EvalOptions& opts) {
    DiagramBuilder b(Word{{+1, 0}, {-1, 1}}, {Color::typical(alpha_i), Color::typical(alpha_j)});
    add_meridian(b, 0, 2, kirby_color(ctx, h), 0);
    ModularityProbe p;
    p.tangle = evaluate_formal(ctx, b.build(), opts);
    p.norm = max_abs(p.tangle);
    const WeightModule vi = typical_module(ctx, alpha_i);
    if (vi.dim * vi.dim != p.tangle.rows()) return p;
    const Matrix proj = duality_map(ctx, vi, Duality::CoevLeft) * duality_map(ctx, vi, Duality::EvRight);
    const Scalar num = (proj.adjoint() * p.tangle).trace();
    const Scalar den = (proj.adjoint() * proj).trace();
    const Scalar c = num / den;
    p.coefficient = c * modified_dimension(ctx, alpha_i);
    p.residual = max_abs(p.tangle - c * proj) / std::max(1e-300, p.norm);
    return p;
}

InvariantConstants compute_constants(const ScalarContext& ctx, const Degree& probe_g, Scalar probe_alpha,
                                     const EvalOptions& opts) {
    InvariantConstants k;
    k.delta_minus = stabilization_probe(ctx, probe_alpha, -1, opts).coefficient;
    k.delta_plus = stabilization_probe(ctx, probe_alpha, +1, opts).coefficient;
    k.zeta = modularity_probe(ctx, probe_alpha, probe_alpha, probe_g, opts).coefficient;
    k.z_mod_zplus = z_mod_zplus(ctx);
    k.D = std::sqrt(k.delta_minus * k.delta_plus);
    k.eta = static_cast<double>(k.z_mod_zplus) / k.D;
    k.delta = k.D / k.delta_minus;
    return k;
}

InvariantConstants default_constants(const ScalarContext& ctx, const EvalOptions& opts) {
    return compute_constants(ctx, Degree(Scalar(0.3183, 0.1271)), Scalar(0.4142, 0.1732), opts);
}

}  // namespace cgp
