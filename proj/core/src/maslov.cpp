#include "cgp/maslov.hpp"

#include "cgp/errors.hpp"

namespace cgp {

namespace {

/// Right singular vectors split at tol * sigma_max: (row-space basis, null-space basis).
std::pair<RealMatrix, RealMatrix> svd_split(const RealMatrix& a, int cols, double tol) {
    if (a.rows() == 0 || cols == 0) return {RealMatrix(cols, 0), RealMatrix::Identity(cols, cols)};
    Eigen::JacobiSVD<RealMatrix> svd(a, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double thr = tol * std::max(s.size() ? s(0) : 0.0, 1e-300);
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > thr && s(i) > 1e-300) ++rank;
    const RealMatrix& v = svd.matrixV();
    return {v.leftCols(rank), v.rightCols(cols - rank)};
}

int rank_of(const RealMatrix& m, double tol) {
    if (m.cols() == 0 || m.rows() == 0) return 0;
    return static_cast<int>(svd_split(m, static_cast<int>(m.cols()), tol).first.cols());
}

void require_independent(const Subspace& l, double tol) {
    if (rank_of(l, tol) != l.cols()) throw Error(ErrorKind::DegenerateBasis, "subspace basis has dependent columns");
}

}  // namespace

SymplecticSpace standard_symplectic(int n) {
    SymplecticSpace h;
    h.form = RealMatrix::Zero(2 * n, 2 * n);
    h.form.topRightCorner(n, n) = RealMatrix::Identity(n, n);
    h.form.bottomLeftCorner(n, n) = -RealMatrix::Identity(n, n);
    return h;
}

Subspace orthonormal_span(const RealMatrix& m, double tol) {
    if (m.cols() == 0) return RealMatrix(m.rows(), 0);
    Eigen::JacobiSVD<RealMatrix> svd(m, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > tol * std::max(s(0), 1e-300) && s(i) > 1e-300) ++rank;
    return svd.matrixU().leftCols(rank);
}

Subspace intersect(const Subspace& a, const Subspace& b, double tol) {
    const Eigen::Index n = a.rows();
    if (a.cols() == 0 || b.cols() == 0) return RealMatrix(n, 0);
    const RealMatrix qa = orthonormal_span(a, tol), qb = orthonormal_span(b, tol);
    RealMatrix stacked(n, qa.cols() + qb.cols());
    stacked << qa, -qb;
    const RealMatrix ker = svd_split(stacked, static_cast<int>(stacked.cols()), tol).second;
    return orthonormal_span(qa * ker.topRows(qa.cols()), tol);
}

Subspace symplectic_complement(const SymplecticSpace& h, const Subspace& l, double tol) {
    if (l.cols() == 0) return RealMatrix::Identity(h.dim(), h.dim());
    const RealMatrix m = l.transpose() * h.form;
    const double scale = std::max(1.0, h.form.cwiseAbs().maxCoeff() * l.cwiseAbs().maxCoeff());
    // Absolute threshold: an all-zero pairing gives the whole space.
    if (m.cwiseAbs().maxCoeff() <= tol * scale) return RealMatrix::Identity(h.dim(), h.dim());
    return svd_split(m, h.dim(), tol).second;
}

bool is_isotropic(const SymplecticSpace& h, const Subspace& l, double tol) {
    if (l.cols() == 0) return true;
    const RealMatrix q = orthonormal_span(l, tol);
    const double scale = std::max(1.0, h.form.cwiseAbs().maxCoeff());
    return (q.transpose() * h.form * q).cwiseAbs().maxCoeff() <= tol * scale * 10.0;
}

bool is_lagrangian(const SymplecticSpace& h, const Subspace& l, double tol) {
    require_independent(l, tol);
    if (!is_isotropic(h, l, tol)) return false;
    return symplectic_complement(h, orthonormal_span(l, tol), tol).cols() == l.cols();
}

Subspace lagrangian_graph(const RealMatrix& s) {
    const Eigen::Index n = s.rows();
    RealMatrix g(2 * n, n);
    g << RealMatrix::Identity(n, n), s;
    return g;
}

Subspace random_lagrangian(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Eigen::MatrixXcd z(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) z(i, j) = std::complex<double>(gauss(rng), gauss(rng));
    const Eigen::MatrixXcd u = Eigen::HouseholderQR<Eigen::MatrixXcd>(z).householderQ();
    RealMatrix l(2 * n, n);
    l << u.real(), u.imag();
    return l;
}

Contraction contract(const SymplecticSpace& h, const Subspace& b, const Subspace& a, double tol) {
    if (!is_isotropic(h, a, tol)) throw Error(ErrorKind::NotIsotropic, "contraction needs an isotropic subspace");
    const RealMatrix qa = orthonormal_span(a, tol);
    const RealMatrix perp = orthonormal_span(symplectic_complement(h, qa, tol), tol);
    // Complement of A inside A^perp, Euclidean-orthogonal to A.
    RealMatrix c;
    if (qa.cols() == 0) {
        c = perp;
    } else {
        const RealMatrix proj = perp - qa * (qa.transpose() * perp);
        // perp has orthonormal columns, so an all-small projection means A^perp = A.
        c = (proj.size() == 0 || proj.cwiseAbs().maxCoeff() <= tol) ? RealMatrix(h.dim(), 0)
                                                                     : orthonormal_span(proj, tol);
    }
    Contraction out;
    out.complement = c;
    out.quotient.form = c.transpose() * h.form * c;
    RealMatrix sum(h.dim(), b.cols() + qa.cols());
    sum << b, qa;
    const RealMatrix s = intersect(orthonormal_span(sum, tol), perp, tol);
    out.basis = c.cols() == 0 ? RealMatrix(0, 0) : orthonormal_span(c.transpose() * s, tol);
    return out;
}

int maslov_index(const SymplecticSpace& h, const Subspace& l1, const Subspace& l2, const Subspace& l3, double tol) {
    for (const Subspace* l : {&l1, &l2, &l3})
        if (!is_lagrangian(h, *l, tol)) throw Error(ErrorKind::NotLagrangian, "Maslov index needs Lagrangian inputs");
    const RealMatrix q1 = orthonormal_span(l1, tol), q2 = orthonormal_span(l2, tol), q3 = orthonormal_span(l3, tol);
    const Eigen::Index k1 = q1.cols(), k2 = q2.cols(), k3 = q3.cols();
    // Solutions of q1 x = q2 y + q3 z give a = q1 x and b2 = q2 y.
    RealMatrix stacked(h.dim(), k1 + k2 + k3);
    stacked << q1, -q2, -q3;
    const RealMatrix ker = svd_split(stacked, static_cast<int>(stacked.cols()), tol).second;
    if (ker.cols() == 0) return 0;
    const RealMatrix a = q1 * ker.topRows(k1);
    const RealMatrix b2 = q2 * ker.middleRows(k1, k2);
    RealMatrix form = a.transpose() * h.form * b2;
    form = 0.5 * (form + form.transpose());
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(form);
    const auto& ev = es.eigenvalues();
    const double thr = tol * std::max(1.0, ev.cwiseAbs().maxCoeff()) * 1e2;
    int sig = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) > thr) ++sig;
        if (ev(i) < -thr) --sig;
    }
    return sig;
}

}  // namespace cgp
