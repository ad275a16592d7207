#pragma once

#include <complex>
#include <string>

namespace cgp {

using Scalar = std::complex<double>;

/// Complex number carried at a runtime binary precision (scalar layer only).
struct HPComplex {
    std::string re;  // decimal renderings, full working precision
    std::string im;
};

/**
 * Immutable level data: the root of unity q = e^{2 pi i / r}, the
 * periodicity rbar and the comparison tolerance.  Every other module takes
 * a const reference to one of these.
 */
class ScalarContext {
public:
    explicit ScalarContext(int r, unsigned precision_bits = 53, double tol = 1e-9);

    int r() const { return r_; }
    /// r / 2, the dimension of typical modules and the nilpotency order of E, F.
    int ell() const { return r_ / 2; }
    int rbar() const { return rbar_; }
    unsigned precision() const { return precision_; }
    double tol() const { return tol_; }
    Scalar q() const { return q_; }

    /// q^z = exp(2 pi i z / r) for complex z.
    Scalar q_power(Scalar z) const;
    /// {z} = q^z - q^{-z}
    Scalar brace(Scalar z) const;
    /// [z] = {z} / {1}
    Scalar qint(Scalar z) const;
    Scalar qint(long k) const { return qint(Scalar(static_cast<double>(k), 0.0)); }
    /// [k]! = [k][k-1]...[1]; zero when k >= r/2.
    Scalar qfact(long k) const;
    /// Quantum binomial with vanishing factors cancelled in pairs before division.
    Scalar qbinom(long k, long l) const;

    /// |a - b| <= tol * max(1, |a|, |b|)
    bool approx_equal(Scalar a, Scalar b) const;
    bool approx_equal(Scalar a, Scalar b, double tol) const;
    bool is_zero(Scalar a) const { return std::abs(a) <= tol_; }

    /// High-precision evaluation of q^z at the context precision (decimal strings).
    HPComplex q_power_hp(double re, double im) const;
    /// High-precision check that q^{z1+z2} = q^{z1} q^{z2}; returns the absolute residual.
    double hp_multiplicativity_residual(double re1, double re2) const;
    /// Rounded-to-double result of a high-precision q^z (used when precision > 53).
    Scalar q_power_rounded(Scalar z) const;

private:
    int r_;
    int rbar_;
    unsigned precision_;
    double tol_;
    Scalar q_;
};

}  // namespace cgp
