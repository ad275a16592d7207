#pragma once

#include <string>
#include <vector>

#include "cgp/stabilize.hpp"

namespace cgp {

/// Closed diagrams and surgery presentations used by the property suites and the CLI.
namespace fixtures {

/// 0-framed unknot colored V_alpha, no surgery (S^3).
SurgeryPresentation s3_unknot(Scalar alpha);

/**
 * S^3 again: a V_alpha unknot with one extra curl of sign `sign`, encircled once
 * by a surgery circle of framing `sign`.  Blowing down gives s3_unknot.
 */
SurgeryPresentation s3_blowup(Scalar alpha, int sign);

/// S^3 as 0-framed Hopf surgery with a V_alpha meridian; the first meridian degree is critical.
SurgeryPresentation s3_hopf_critical(Scalar alpha);

/// S^1 x S^2: 0-framed unknot with meridian circles colored V_alpha and V_alpha (reversed).
SurgeryPresentation s1s2_meridians(Scalar alpha, Scalar g);

/// L(5,1) as -5 surgery on the unknot; the meridian degree is g1 (a multiple of 2/5).
SurgeryPresentation lens51_unknot(Scalar g1);
/// L(5,1) as the Hopf link with framings (-4, +1).
SurgeryPresentation lens51_hopf(Scalar g1);
/// L(5,1) as T(2,4) with framings (-1, +1), a handle slide of lens51_hopf.
SurgeryPresentation lens51_slide(Scalar g1);
/// L(5,2) as the Hopf link with framings (-3, -2).
SurgeryPresentation lens52_hopf(Scalar g1);

/// 0-framed trefoil (closure of sigma_1^3) colored V_alpha.
Diagram trefoil(Scalar alpha);
/// 0-framed figure-eight (closure of sigma_1 sigma_2^{-1} sigma_1 sigma_2^{-1}).
Diagram figure_eight(Scalar alpha);
/// Hopf link with components colored V_alpha and V_beta.
Diagram hopf(Scalar alpha, Scalar beta);

/// Closure (right trace) of an endomorphism diagram of a single upward letter.
Diagram close_endomorphism(const Diagram& endo);
/// Connected sum of two closed graphs along typical edges of the same color.
Diagram edge_connected_sum(const ScalarContext& ctx, const Diagram& a, int edge_a, const Diagram& b, int edge_b);

/// The same presentation with one graph edge turned into a surgery component.
SurgeryPresentation as_surgery(const SurgeryPresentation& p, int edge, const Degree& g, int extra_defect);

/// Curated pairs of presentations of the same decorated manifold.
std::vector<KirbyPair> kirby_pairs(Scalar alpha);

}  // namespace fixtures

}  // namespace cgp
