#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cgp/qscalars.hpp"

namespace cgp {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

/// Kronecker product with the first factor most significant.
Matrix kron(const Matrix& a, const Matrix& b);

/// Result of a rank decision with its singular-value evidence.
struct RankReport {
    int rank = 0;
    double sigma_max = 0.0;
    double smallest_kept = 0.0;     // smallest singular value counted as nonzero
    double largest_dropped = 0.0;   // largest singular value counted as zero
};

/**
 * Orthonormal basis of the right nullspace of `a`.  Singular values at or
 * below tol * sigma_max count as zero; any singular value strictly between
 * tol * sigma_max and 10 * tol * sigma_max makes the decision ambiguous and
 * raises NumericInstability.
 */
Matrix nullspace(const Matrix& a, double tol, RankReport* report = nullptr);
RealMatrix nullspace(const RealMatrix& a, double tol, RankReport* report = nullptr);

/// Numerical rank with the same guard band as nullspace().
int numerical_rank(const RealMatrix& a, double tol);

/// If m = s * id within tol (relative), return s; otherwise throw NotScalar.
Scalar scalar_of(const Matrix& m, double tol, const char* what);

/// Infinity norm of the entries.
double max_abs(const Matrix& m);

}  // namespace cgp
