#include "cgp/linalg.hpp"

#include <algorithm>
#include <sstream>

#include "cgp/errors.hpp"

namespace cgp {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

namespace {

template <class Mat>
Mat nullspace_impl(const Mat& a, double tol, RankReport* report) {
    const Eigen::Index n = a.cols();
    if (n == 0) return Mat(0, 0);
    // Pad to at least n rows so the full V factor is available.
    Mat padded = Mat::Zero(std::max(a.rows(), n), n);
    padded.topRows(a.rows()) = a;
    Eigen::JacobiSVD<Mat> svd(padded, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double smax = s.size() ? s(0) : 0.0;
    RankReport rep;
    rep.sigma_max = smax;
    int rank = 0;
    if (smax > 0.0) {
        for (Eigen::Index k = 0; k < s.size(); ++k) {
            if (s(k) > tol * smax) {
                if (s(k) <= 10.0 * tol * smax) {
                    std::ostringstream msg;
                    msg << "rank decision inside guard band: sigma/sigma_max = " << s(k) / smax;
                    throw Error(ErrorKind::NumericInstability, msg.str());
                }
                ++rank;
                rep.smallest_kept = s(k);
            } else {
                rep.largest_dropped = std::max(rep.largest_dropped, s(k));
            }
        }
    }
    rep.rank = rank;
    if (report) *report = rep;
    return svd.matrixV().rightCols(n - rank);
}

}  // namespace

Matrix nullspace(const Matrix& a, double tol, RankReport* report) {
    return nullspace_impl<Matrix>(a, tol, report);
}

RealMatrix nullspace(const RealMatrix& a, double tol, RankReport* report) {
    return nullspace_impl<RealMatrix>(a, tol, report);
}

int numerical_rank(const RealMatrix& a, double tol) {
    RankReport rep;
    nullspace(a, tol, &rep);
    return rep.rank;
}

Scalar scalar_of(const Matrix& m, double tol, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw Error(ErrorKind::NotScalar, std::string(what) + ": not a square matrix");
    const Scalar s = m(0, 0);
    const double dev = max_abs(m - s * Matrix::Identity(m.rows(), m.cols()));
    const double scale = std::max(1.0, max_abs(m));
    if (dev > tol * scale) {
        std::ostringstream msg;
        msg << what << ": endomorphism is not scalar (deviation " << dev << ")";
        throw Error(ErrorKind::NotScalar, msg.str());
    }
    return s;
}

double max_abs(const Matrix& m) {
    return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace cgp
