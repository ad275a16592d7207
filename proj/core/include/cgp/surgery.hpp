#pragma once

#include <string>
#include <vector>

#include "cgp/constants.hpp"

namespace cgp {

/**
 * A closed diagram in which some edges are surgery knots.  Surgery edges are
 * colored by Kirby colors at evaluation time; every other edge is a graph edge
 * and carries a concrete color or a formal (Kirby) color.
 */
struct SurgeryPresentation {
    Diagram diagram;
    std::vector<int> surgery_components;  // edge ids
    std::vector<Degree> meridian_degrees; // aligned with surgery_components
    int signature_defect = 0;
};

struct LinkingData {
    std::vector<std::vector<long>> matrix;  // surgery components in list order
    int signature = 0;
    int positive = 0, negative = 0;
};

/// Signature of a symmetric integer matrix (exact for dimension <= 12).
LinkingData signature_of(const std::vector<std::vector<long>>& m);
LinkingData linking_data(const SurgeryPresentation& p);

/// Indices (into surgery_components) whose meridian degree is critical.
std::vector<int> check_computable(const ScalarContext& ctx, const SurgeryPresentation& p);

/**
 * Per-component value of  sum_j Lk_ij g_j + sum_e lk(L_i, e) deg(e), computed from
 * the crossings where L_i passes under another strand.  Consistent colorings give
 * values in 2Z.
 */
std::vector<Scalar> consistency_residuals(const SurgeryPresentation& p);
/// Throws InvalidDiagram naming the first inconsistent component.
void require_consistent(const ScalarContext& ctx, const SurgeryPresentation& p);

/// Structural checks: closed, surgery edges are coupon-free single knots, graph edges colored.
void require_well_formed(const ScalarContext& ctx, const SurgeryPresentation& p);

/// The diagram with each surgery edge labelled by its Kirby color.
Diagram kirby_colored(const ScalarContext& ctx, const SurgeryPresentation& p);

struct CgpResult {
    Scalar value;
    int ell = 0;
    int sigma = 0;
    int pieces = 0;
    InvariantConstants constants;
    std::vector<std::string> warnings;
};

/**
 * CGP invariant.  Split pieces of the diagram are separate connected manifolds;
 * each contributes eta D^{-l_p} delta^{-sigma_p} F'(piece) and the product is
 * multiplied by delta^n and the diagram prefactor.
 */
CgpResult cgp_full(const ScalarContext& ctx, const SurgeryPresentation& p, const InvariantConstants& k,
                   const EvalOptions& opts = {});
Scalar cgp(const ScalarContext& ctx, const SurgeryPresentation& p, const EvalOptions& opts = {});

/// Relative deviation |cgp(a) - cgp(b)| / max(|cgp(a)|, |cgp(b)|) for each curated pair.
struct KirbyPair {
    std::string name;
    SurgeryPresentation first, second;
};
struct KirbyReport {
    std::vector<std::pair<std::string, double>> deviations;
    bool pass = true;
};
KirbyReport kirby_equivalence_suite(const ScalarContext& ctx, const std::vector<KirbyPair>& pairs, double tol,
                                    const EvalOptions& opts = {});

}  // namespace cgp
