#include "cgp/qscalars.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cgp/errors.hpp"

namespace cgp {

namespace {

// RAII wrapper around an mpfr_t at a fixed binary precision.
class Mp {
public:
    explicit Mp(unsigned bits) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
    ~Mp() { mpfr_clear(v_); }
    Mp(const Mp&) = delete;
    Mp& operator=(const Mp&) = delete;
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

private:
    mpfr_t v_;
};

std::string render(const Mp& x, unsigned bits) {
    // Enough decimal digits to round-trip the binary precision.
    const int digits = static_cast<int>(std::ceil(bits * 0.30103)) + 2;
    std::ostringstream fmt;
    fmt << "%." << digits << "Re";
    char* out = nullptr;
    mpfr_asprintf(&out, fmt.str().c_str(), x.get());
    std::string s(out);
    mpfr_free_str(out);
    return s;
}

// exp(2 pi i z / r) computed at `bits` precision; result written to re/im.
void hp_q_power(int r, unsigned bits, double zr, double zi, Mp& re, Mp& im) {
    Mp pi(bits), ang(bits), mag(bits), t(bits);
    mpfr_const_pi(pi.get(), MPFR_RNDN);
    // angle = 2 pi zr / r, magnitude = exp(-2 pi zi / r)
    mpfr_set_d(t.get(), std::fmod(zr, 2.0 * r), MPFR_RNDN);
    mpfr_mul(ang.get(), pi.get(), t.get(), MPFR_RNDN);
    mpfr_mul_ui(ang.get(), ang.get(), 2, MPFR_RNDN);
    mpfr_div_si(ang.get(), ang.get(), r, MPFR_RNDN);
    mpfr_set_d(t.get(), -zi, MPFR_RNDN);
    mpfr_mul(mag.get(), pi.get(), t.get(), MPFR_RNDN);
    mpfr_mul_ui(mag.get(), mag.get(), 2, MPFR_RNDN);
    mpfr_div_si(mag.get(), mag.get(), r, MPFR_RNDN);
    mpfr_exp(mag.get(), mag.get(), MPFR_RNDN);
    mpfr_sin_cos(im.get(), re.get(), ang.get(), MPFR_RNDN);
    mpfr_mul(re.get(), re.get(), mag.get(), MPFR_RNDN);
    mpfr_mul(im.get(), im.get(), mag.get(), MPFR_RNDN);
}

}  // namespace

ScalarContext::ScalarContext(int r, unsigned precision_bits, double tol)
    : r_(r), precision_(precision_bits), tol_(tol) {
    if (r < 4 || r % 2 != 0 || r % 8 == 0)
        throw Error(ErrorKind::ParseError,
                    "level r must be even, at least 4 and not divisible by 8 (got " +
                        std::to_string(r) + ")");
    if (precision_bits < 53)
        throw Error(ErrorKind::ParseError, "precision must be at least 53 bits");
    if (!(tol > 0.0))
        throw Error(ErrorKind::ParseError, "tolerance must be positive");
    rbar_ = (r % 4 == 2) ? r : r / 2;
    q_ = q_power(Scalar(1.0, 0.0));
}

Scalar ScalarContext::q_power(Scalar z) const {
    if (precision_ > 53) return q_power_rounded(z);
    // Reduce the real part modulo r first so large exponents keep full accuracy.
    const double zr = std::fmod(z.real(), static_cast<double>(r_));
    const double ang = 2.0 * std::numbers::pi * zr / r_;
    const double mag = std::exp(-2.0 * std::numbers::pi * z.imag() / r_);
    return {mag * std::cos(ang), mag * std::sin(ang)};
}

Scalar ScalarContext::brace(Scalar z) const { return q_power(z) - q_power(-z); }

Scalar ScalarContext::qint(Scalar z) const { return brace(z) / brace(Scalar(1.0, 0.0)); }

Scalar ScalarContext::qfact(long k) const {
    if (k < 0) throw Error(ErrorKind::VanishingDenominator, "negative quantum factorial");
    Scalar out(1.0, 0.0);
    for (long j = 1; j <= k; ++j) out *= qint(j);
    return out;
}

Scalar ScalarContext::qbinom(long k, long l) const {
    if (l < 0 || k < l)
        throw Error(ErrorKind::VanishingDenominator, "quantum binomial needs k >= l >= 0");
    // [k]!/([l]![k-l]!) = prod_{j=1..l} [k-l+j]/[j].  Factors [m] vanish exactly
    // when m is a multiple of r/2; those are paired and replaced by the limit
    // [a r/2]/[b r/2] -> (a/b)(-1)^{a-b} of the ratio as q approaches the root.
    const long h = ell();
    Scalar out(1.0, 0.0);
    std::vector<long> zero_num, zero_den;
    for (long j = 1; j <= l; ++j) {
        const long num = k - l + j;
        if (num % h == 0) zero_num.push_back(num / h);
        else out *= qint(num);
        if (j % h == 0) zero_den.push_back(j / h);
        else out /= qint(j);
    }
    if (zero_den.size() > zero_num.size())
        throw Error(ErrorKind::VanishingDenominator,
                    "quantum binomial has an uncancelled vanishing denominator");
    if (zero_num.size() > zero_den.size()) return Scalar(0.0, 0.0);
    for (std::size_t i = 0; i < zero_num.size(); ++i) {
        const long a = zero_num[i], b = zero_den[i];
        const double sign = ((a - b) % 2 == 0) ? 1.0 : -1.0;
        out *= sign * static_cast<double>(a) / static_cast<double>(b);
    }
    return out;
}

bool ScalarContext::approx_equal(Scalar a, Scalar b) const { return approx_equal(a, b, tol_); }

bool ScalarContext::approx_equal(Scalar a, Scalar b, double tol) const {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= tol * scale;
}

HPComplex ScalarContext::q_power_hp(double re, double im) const {
    Mp a(precision_), b(precision_);
    hp_q_power(r_, precision_, re, im, a, b);
    return {render(a, precision_), render(b, precision_)};
}

double ScalarContext::hp_multiplicativity_residual(double re1, double re2) const {
    const unsigned bits = precision_;
    Mp a1(bits), b1(bits), a2(bits), b2(bits), a3(bits), b3(bits), t(bits), u(bits);
    hp_q_power(r_, bits, re1, 0.0, a1, b1);
    hp_q_power(r_, bits, re2, 0.0, a2, b2);
    hp_q_power(r_, bits, re1 + re2, 0.0, a3, b3);
    // (a1 + i b1)(a2 + i b2) - (a3 + i b3)
    mpfr_mul(t.get(), a1.get(), a2.get(), MPFR_RNDN);
    mpfr_mul(u.get(), b1.get(), b2.get(), MPFR_RNDN);
    mpfr_sub(t.get(), t.get(), u.get(), MPFR_RNDN);
    mpfr_sub(t.get(), t.get(), a3.get(), MPFR_RNDN);
    Mp re(bits), im(bits);
    mpfr_set(re.get(), t.get(), MPFR_RNDN);
    mpfr_mul(t.get(), a1.get(), b2.get(), MPFR_RNDN);
    mpfr_mul(u.get(), b1.get(), a2.get(), MPFR_RNDN);
    mpfr_add(t.get(), t.get(), u.get(), MPFR_RNDN);
    mpfr_sub(im.get(), t.get(), b3.get(), MPFR_RNDN);
    mpfr_hypot(t.get(), re.get(), im.get(), MPFR_RNDN);
    // Report log2 of the residual so values far below double range survive.
    if (mpfr_zero_p(t.get())) return 0.0;
    long exp2 = 0;
    const double mant = mpfr_get_d_2exp(&exp2, t.get(), MPFR_RNDN);
    return std::ldexp(mant, static_cast<int>(std::max<long>(exp2, -1074)));
}

Scalar ScalarContext::q_power_rounded(Scalar z) const {
    Mp a(precision_), b(precision_);
    hp_q_power(r_, precision_, z.real(), z.imag(), a, b);
    return {mpfr_get_d(a.get(), MPFR_RNDN), mpfr_get_d(b.get(), MPFR_RNDN)};
}

}  // namespace cgp
