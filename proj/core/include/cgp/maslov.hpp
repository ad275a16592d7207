#pragma once

#include <random>

#include "cgp/linalg.hpp"

namespace cgp {

/// Real vector space with an antisymmetric (possibly degenerate) bilinear form.
struct SymplecticSpace {
    RealMatrix form;  // omega(x, y) = x^T form y
    int dim() const { return static_cast<int>(form.rows()); }
    double omega(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const { return x.dot(form * y); }
};

/// Standard symplectic R^{2n}: omega((x,y),(x',y')) = x.y' - y.x'.
SymplecticSpace standard_symplectic(int n);

/// Columns span the subspace; an empty matrix (0 columns) is the zero subspace.
using Subspace = RealMatrix;

/// Orthonormal basis of the span of the columns (tol relative to the largest singular value).
Subspace orthonormal_span(const RealMatrix& m, double tol = 1e-10);
/// Orthonormal basis of the intersection of two subspaces.
Subspace intersect(const Subspace& a, const Subspace& b, double tol = 1e-10);
/// {x : omega(l, x) = 0 for all l in L}.
Subspace symplectic_complement(const SymplecticSpace& h, const Subspace& l, double tol = 1e-10);

bool is_isotropic(const SymplecticSpace& h, const Subspace& l, double tol = 1e-10);
/// L = L^perp.  Throws DegenerateBasis if the columns are dependent.
bool is_lagrangian(const SymplecticSpace& h, const Subspace& l, double tol = 1e-10);

/// The graph {(x, S x)} of a symmetric n x n matrix, Lagrangian in standard R^{2n}.
Subspace lagrangian_graph(const RealMatrix& s);

/// Uniformly random Lagrangian of standard R^{2n}: the real form of a random unitary matrix.
Subspace random_lagrangian(int n, std::mt19937_64& rng);

/**
 * Contraction B|A = ((B + A) cap A^perp) / A.  The quotient A^perp / A is modelled
 * on the orthonormal complement C of A inside A^perp; `basis` holds coordinates
 * with respect to the columns of C.
 */
struct Contraction {
    SymplecticSpace quotient;
    RealMatrix complement;  // C, columns in the ambient space
    Subspace basis;         // B|A in C-coordinates
};
/// Throws NotIsotropic if A is not isotropic.
Contraction contract(const SymplecticSpace& h, const Subspace& b, const Subspace& a, double tol = 1e-10);

/**
 * Maslov index: signature of the form <a, a'> = omega(a, b_2') on
 * L1 cap (L2 + L3), where a' = b_2' + b_3' with b_k' in L_k.  The radical contains
 * (L1 cap L2) + (L1 cap L3), so this is the signature on the quotient W.
 * Throws NotLagrangian if an input is not Lagrangian.
 */
int maslov_index(const SymplecticSpace& h, const Subspace& l1, const Subspace& l2, const Subspace& l3,
                 double tol = 1e-10);

}  // namespace cgp
