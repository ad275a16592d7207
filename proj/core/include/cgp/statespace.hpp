#pragma once

#include <vector>

#include "cgp/weightcat.hpp"

namespace cgp {

/**
 * Generic surface of genus n presented as the boundary of a neighbourhood of a
 * trivalent graph: a loop of edges e_1..e_{n-1} (all with meridian class m_0)
 * carrying n-1 bubbles (e'_i, e''_i).  The meridian of e''_i is m_0 - m'_i.
 */
struct TrivalentSurfaceData {
    int genus = 1;
    Degree m0;
    std::vector<Degree> m_prime;  // size genus - 1
};

/// dim Hom(V_i (x) sigma(k) (x) V_j^*, sigma(k')).
int sphere_hom_dim(const ScalarContext& ctx, Scalar alpha_i, Scalar alpha_j, long k, long k_prime);

/**
 * Dimension of the graded space  sum over m of Hom(sigma(rbar m), W)  for a word W
 * of degree 0.  Only the finitely many m allowed by the weights of W contribute.
 */
int graded_invariants_dim(const ScalarContext& ctx, const ObjectWord& w);

struct Genus1Report {
    int dimension = 0;        // |I_g|
    int hom_sum = 0;          // sum_i dim Hom(1, V_i^* (x) V_i)
    std::vector<int> per_color;
};
/// Throws CriticalDegree for critical g and NumericInstability if the two counts disagree.
Genus1Report genus1_report(const ScalarContext& ctx, const Degree& g);
int genus1_dim(const ScalarContext& ctx, const Degree& g);

/// Sum over fundamental colorings of the product of graded vertex Hom dimensions.
int genus_n_dim(const ScalarContext& ctx, const TrivalentSurfaceData& data);

/**
 * Genus 2 without the vertex decomposition: for each coloring of the bubble edges,
 * the graded dimension of End(V' (x) V'') computed on the full four-letter word.
 */
int genus2_dim_direct(const ScalarContext& ctx, const Degree& m0, const Degree& m_prime);

}  // namespace cgp
