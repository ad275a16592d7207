#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cgp/surgery.hpp"

namespace cgp {

/**
 * Section s_{U,i} : U -> U (x) V_i (x) V_i^*  with  (id_U (x) ev_right) s = id_U,
 * for a typical signed color U.  Solved as the minimal-norm combination of a
 * Hom basis; throws NoSection when the composite cannot reach id_U.
 */
Matrix section_map(const ScalarContext& ctx, const SignedColor& u, Scalar alpha_i);

/**
 * Projective stabilization: at (level, pos) the letter of a typical edge U is
 * routed through the coupon s_{U,i}, and the new V_i strand is closed at once by
 * ev_right.  The U edge keeps its id on both sides of the coupon.  `new_edge`
 * receives the id of the V_i edge.
 */
Diagram stabilize_projective(const ScalarContext& ctx, const Diagram& d, int level, int pos, Scalar alpha_i,
                             int* new_edge = nullptr);

/**
 * Generic stabilization: Omega-colored circles L_- (framing -1) and L_+ (framing
 * +1) are inserted around the letters [from, to) at `level`, and the prefactor is
 * multiplied by (Delta_- Delta_+)^{-1}.  The circles are graph edges with formal
 * colors; their meridian degree is the degree of the enclosed letters.  Throws
 * CriticalDegree when that degree is critical.
 */
SurgeryPresentation stabilize_generic(const ScalarContext& ctx, const SurgeryPresentation& p, int level, int from,
                                      int to, const InvariantConstants& k);

/**
 * Blackboard parallel of each listed surgery edge, all on the one new edge
 * `parallel_edge` (which must already exist in d.edges).  An upward letter of the
 * knot gets its parallel immediately to the left, a downward letter immediately
 * to the right.
 */
Diagram cable_parallel(const Diagram& d, const std::vector<int>& knots, int parallel_edge);

/// A level with an upward typical graph letter followed by upward surgery letters.
struct StackedSite {
    int level = 0;
    int pos = 0;                  // position of the graph letter U
    std::vector<int> components;  // indices into surgery_components, left to right
};
/// Sites whose surgery run covers every listed component (first match first).
std::vector<StackedSite> find_stacked_sites(const SurgeryPresentation& p, const std::vector<int>& needed);

struct AutoStabilizeOptions {
    /// Candidate stabilization degrees, tried in order; empty uses a built-in list.
    std::vector<Scalar> candidates;
    /// Which element of I_g colors the new strand.
    int index_choice = 0;
    /// Use this site instead of searching.
    std::optional<StackedSite> site;
    /// Stabilize even when the presentation is already computable.
    bool force = false;
};

struct AutoStabilizeResult {
    SurgeryPresentation presentation;
    bool changed = false;
    Scalar degree{0.0, 0.0};  // stabilization degree g
    Scalar alpha{0.0, 0.0};   // highest weight of the new strand
    StackedSite site;
};

/**
 * Turn a presentation with critical meridian degrees into a computable one: a
 * projective stabilization of a typical graph letter followed by slides of its
 * V_i strand over the surgery components of a stacked site.  Each slid
 * component's meridian degree becomes g_j - g.  Throws CannotStabilize when no
 * stacked site covers the critical components.
 */
AutoStabilizeResult auto_stabilize_full(const ScalarContext& ctx, const SurgeryPresentation& p,
                                        const AutoStabilizeOptions& opts = {});
SurgeryPresentation auto_stabilize(const ScalarContext& ctx, const SurgeryPresentation& p,
                                   const AutoStabilizeOptions& opts = {});

}  // namespace cgp
