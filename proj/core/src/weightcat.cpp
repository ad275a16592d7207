#include "cgp/weightcat.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "cgp/errors.hpp"

namespace cgp {

namespace {

double reduce_mod2(double x) {
    double m = std::fmod(x, 2.0);
    if (m < 0) m += 2.0;
    return m;
}

bool near_integer(Scalar z, double tol, long* n = nullptr) {
    if (std::abs(z.imag()) > tol) return false;
    const double rounded = std::round(z.real());
    if (std::abs(z.real() - rounded) > tol) return false;
    if (n) *n = static_cast<long>(rounded);
    return true;
}

bool weights_equal(Scalar a, Scalar b) {
    return std::abs(a - b) <= 1e-9 * (1.0 + std::abs(a) + std::abs(b));
}

Matrix diag(const std::vector<Scalar>& d) {
    Matrix m = Matrix::Zero(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

WeightModule from_weights(const ScalarContext& ctx, std::vector<Scalar> weights) {
    WeightModule v;
    v.dim = static_cast<int>(weights.size());
    std::vector<Scalar> kd, kinv;
    for (const auto& w : weights) {
        kd.push_back(ctx.q_power(w));
        kinv.push_back(ctx.q_power(-w));
    }
    v.H = diag(weights);
    v.K = diag(kd);
    v.Kinv = diag(kinv);
    v.E = Matrix::Zero(v.dim, v.dim);
    v.F = Matrix::Zero(v.dim, v.dim);
    v.weights = std::move(weights);
    return v;
}

Matrix mat_power(const Matrix& m, int n) {
    Matrix out = Matrix::Identity(m.rows(), m.cols());
    for (int i = 0; i < n; ++i) out = out * m;
    return out;
}

}  // namespace

// ---- Degree -----------------------------------------------------------------

Degree::Degree(Scalar g) : g_(reduce_mod2(g.real()), g.imag()) {
    if (g_.real() >= 2.0 - 1e-13) g_ = Scalar(0.0, g_.imag());
}

bool Degree::is_critical(double tol) const {
    if (std::abs(g_.imag()) > tol) return false;
    const double re = g_.real();
    return std::abs(re) <= tol || std::abs(re - 1.0) <= tol || std::abs(re - 2.0) <= tol;
}

bool Degree::equals(const Degree& other, double tol) const {
    return is_zero_mod2(g_ - other.g_, tol);
}

bool is_zero_mod2(Scalar z, double tol) {
    if (std::abs(z.imag()) > tol * std::max(1.0, std::abs(z))) return false;
    const double m = reduce_mod2(z.real());
    return std::min(m, 2.0 - m) <= tol * std::max(1.0, std::abs(z.real()));
}

// ---- Color ------------------------------------------------------------------

bool Color::same_as(const Color& o, double tol) const {
    if (kind != o.kind) return false;
    if (is_typical()) return std::abs(alpha - o.alpha) <= tol * std::max(1.0, std::abs(alpha));
    return k == o.k;
}

std::string Color::describe() const {
    std::ostringstream s;
    if (is_typical()) s << "V(" << alpha.real() << (alpha.imag() < 0 ? "-" : "+")
                        << std::abs(alpha.imag()) << "i)";
    else s << "sigma(" << k << ")";
    return s.str();
}

// ---- modules ----------------------------------------------------------------

bool is_typical(const ScalarContext& ctx, Scalar alpha) {
    long n = 0;
    if (!near_integer(alpha, 1e-12, &n)) return true;
    const long l = ctx.ell();
    long m = (n - (l - 1)) % l;
    return m == 0;
}

WeightModule typical_module(const ScalarContext& ctx, Scalar alpha) {
    if (!is_typical(ctx, alpha)) {
        std::ostringstream msg;
        msg << "V(" << alpha << ") is not typical at level " << ctx.r();
        throw Error(ErrorKind::NonTypicalColor, msg.str());
    }
    const int l = ctx.ell();
    std::vector<Scalar> w;
    for (int n = 0; n < l; ++n) w.push_back(alpha - 2.0 * n);
    WeightModule v = from_weights(ctx, w);
    // F v_n = v_{n+1}, E v_n = [n][alpha - n + 1] v_{n-1}
    for (int n = 0; n + 1 < l; ++n) v.F(n + 1, n) = 1.0;
    for (int n = 1; n < l; ++n)
        v.E(n - 1, n) = ctx.qint(Scalar(n, 0)) * ctx.qint(alpha - Scalar(n - 1, 0));
    v.degree = Degree(alpha);
    return v;
}

WeightModule sigma_module(const ScalarContext& ctx, long k) {
    if (k % ctx.rbar() != 0)
        throw Error(ErrorKind::NotAdmissible, "sigma(" + std::to_string(k) + ") needs k to be a multiple of " +
                                                  std::to_string(ctx.rbar()));
    WeightModule v = from_weights(ctx, {Scalar(static_cast<double>(k), 0.0)});
    v.degree = Degree(Scalar(static_cast<double>(k), 0.0));
    return v;
}

WeightModule color_module(const ScalarContext& ctx, const Color& c) {
    return c.is_typical() ? typical_module(ctx, c.alpha) : sigma_module(ctx, c.k);
}

WeightModule dual_module(const ScalarContext& ctx, const WeightModule& v) {
    std::vector<Scalar> w;
    for (const auto& x : v.weights) w.push_back(-x);
    WeightModule d = from_weights(ctx, w);
    // rho_{V*}(x) = rho_V(S(x))^T with S(E) = -E K^{-1}, S(F) = -K F.
    d.E = -(v.E * v.Kinv).transpose();
    d.F = -(v.K * v.F).transpose();
    d.degree = -v.degree;
    return d;
}

WeightModule tensor_module(const WeightModule& a, const WeightModule& b) {
    WeightModule t;
    t.dim = a.dim * b.dim;
    for (const auto& x : a.weights)
        for (const auto& y : b.weights) t.weights.push_back(x + y);
    const Matrix ia = Matrix::Identity(a.dim, a.dim), ib = Matrix::Identity(b.dim, b.dim);
    t.H = kron(a.H, ib) + kron(ia, b.H);
    t.E = kron(a.E, b.K) + kron(ia, b.E);
    t.F = kron(a.F, ib) + kron(a.Kinv, b.F);
    t.K = kron(a.K, b.K);
    t.Kinv = kron(a.Kinv, b.Kinv);
    t.degree = a.degree + b.degree;
    return t;
}

WeightModule signed_module(const ScalarContext& ctx, const SignedColor& sc) {
    WeightModule v = color_module(ctx, sc.color);
    return sc.sign > 0 ? v : dual_module(ctx, v);
}

WeightModule realize(const ScalarContext& ctx, const ObjectWord& word) {
    WeightModule out = sigma_module(ctx, 0);
    for (std::size_t i = 0; i < word.size(); ++i) {
        WeightModule m = signed_module(ctx, word[i]);
        out = (i == 0) ? m : tensor_module(out, m);
    }
    return out;
}

double RelationResiduals::worst() const {
    return std::max({k_is_q_to_h, h_e, h_f, e_f, nilpotent});
}

RelationResiduals relation_residuals(const ScalarContext& ctx, const WeightModule& v) {
    RelationResiduals res;
    // K = q^H on the weight basis
    Matrix qh = Matrix::Zero(v.dim, v.dim);
    for (int i = 0; i < v.dim; ++i) qh(i, i) = ctx.q_power(v.weights[i]);
    res.k_is_q_to_h = max_abs(v.K - qh);
    res.h_e = max_abs(v.H * v.E - v.E * v.H - 2.0 * v.E);
    res.h_f = max_abs(v.H * v.F - v.F * v.H + 2.0 * v.F);
    const Scalar denom = ctx.q() - 1.0 / ctx.q();
    res.e_f = max_abs(v.E * v.F - v.F * v.E - (v.K - v.Kinv) / denom);
    const int l = ctx.ell();
    res.nilpotent = std::max(max_abs(mat_power(v.E, l)), max_abs(mat_power(v.F, l)));
    // Relative to the size of the generators so large weights do not dominate.
    const double scale = std::max({1.0, max_abs(v.E), max_abs(v.F), max_abs(v.K)});
    res.e_f /= scale * scale;
    res.nilpotent /= std::pow(scale, l);
    return res;
}

// ---- ribbon structure ---------------------------------------------------------

std::vector<Scalar> pivot_diagonal(const ScalarContext& ctx, const WeightModule& v) {
    std::vector<Scalar> g;
    const double e = 1.0 - ctx.r() / 2.0;
    for (const auto& w : v.weights) g.push_back(ctx.q_power(e * w));
    return g;
}

Matrix braiding(const ScalarContext& ctx, const WeightModule& v, const WeightModule& w) {
    const int dv = v.dim, dw = w.dim;
    // Theta = sum_b q^{b(b-1)/2} {1}^b / [b]! E^b (x) F^b
    Matrix theta = Matrix::Zero(dv * dw, dv * dw);
    Matrix eb = Matrix::Identity(dv, dv), fb = Matrix::Identity(dw, dw);
    const Scalar b1 = ctx.brace(Scalar(1.0, 0.0));
    Scalar b1pow(1.0, 0.0);
    for (int b = 0; b < ctx.ell(); ++b) {
        if (b > 0) {
            eb = eb * v.E;
            fb = fb * w.F;
            b1pow *= b1;
        }
        if (max_abs(eb) == 0.0 || max_abs(fb) == 0.0) break;
        const Scalar coef = ctx.q_power(Scalar(b * (b - 1) / 2.0, 0.0)) * b1pow / ctx.qfact(b);
        theta += coef * kron(eb, fb);
    }
    Matrix out = Matrix::Zero(dw * dv, dv * dw);
    for (int i = 0; i < dv; ++i)
        for (int j = 0; j < dw; ++j) {
            const Scalar r0 = ctx.q_power(v.weights[i] * w.weights[j] / 2.0);
            // row of tau: v_i (x) w_j -> w_j (x) v_i
            out.row(j * dv + i) = r0 * theta.row(i * dw + j);
        }
    return out;
}

Matrix braiding_inverse(const ScalarContext& ctx, const WeightModule& v, const WeightModule& w) {
    return braiding(ctx, v, w).partialPivLu().inverse();
}

Matrix duality_map(const ScalarContext& ctx, const WeightModule& v, Duality flavor) {
    const int d = v.dim;
    const auto g = pivot_diagonal(ctx, v);
    switch (flavor) {
        case Duality::EvLeft: {
            Matrix m = Matrix::Zero(1, d * d);
            for (int i = 0; i < d; ++i) m(0, i * d + i) = 1.0;
            return m;
        }
        case Duality::CoevLeft: {
            Matrix m = Matrix::Zero(d * d, 1);
            for (int i = 0; i < d; ++i) m(i * d + i, 0) = 1.0;
            return m;
        }
        case Duality::EvRight: {
            Matrix m = Matrix::Zero(1, d * d);
            for (int i = 0; i < d; ++i) m(0, i * d + i) = g[i];
            return m;
        }
        case Duality::CoevRight: {
            Matrix m = Matrix::Zero(d * d, 1);
            for (int i = 0; i < d; ++i) m(i * d + i, 0) = 1.0 / g[i];
            return m;
        }
    }
    return Matrix();
}

Matrix twist(const ScalarContext& ctx, const WeightModule& v) {
    const int d = v.dim;
    const Matrix id = Matrix::Identity(d, d);
    const Matrix step1 = kron(id, duality_map(ctx, v, Duality::CoevLeft));
    const Matrix step2 = kron(braiding(ctx, v, v), id);
    const Matrix step3 = kron(id, duality_map(ctx, v, Duality::EvRight));
    return step3 * step2 * step1;
}

Matrix partial_trace_right(const Matrix& f, const std::vector<Scalar>& pivot_last) {
    const Eigen::Index d = static_cast<Eigen::Index>(pivot_last.size());
    const Eigen::Index n = f.rows() / d;
    Matrix out = Matrix::Zero(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b) {
            Scalar s(0.0, 0.0);
            for (Eigen::Index c = 0; c < d; ++c) s += pivot_last[c] * f(a * d + c, b * d + c);
            out(a, b) = s;
        }
    return out;
}

Matrix partial_trace_left(const Matrix& f, const std::vector<Scalar>& pivot_first) {
    const Eigen::Index d = static_cast<Eigen::Index>(pivot_first.size());
    const Eigen::Index n = f.rows() / d;
    Matrix out = Matrix::Zero(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b) {
            Scalar s(0.0, 0.0);
            for (Eigen::Index c = 0; c < d; ++c) s += f(c * n + a, c * n + b) / pivot_first[c];
            out(a, b) = s;
        }
    return out;
}

// ---- Hom spaces -----------------------------------------------------------------

std::vector<Matrix> hom_basis(const ScalarContext& ctx, const WeightModule& src,
                              const WeightModule& dst) {
    // Unknowns: weight-preserving entries f(i, j), i in dst, j in src.
    std::vector<std::pair<int, int>> unknowns;
    for (int i = 0; i < dst.dim; ++i)
        for (int j = 0; j < src.dim; ++j)
            if (weights_equal(dst.weights[i], src.weights[j])) unknowns.emplace_back(i, j);
    if (unknowns.empty()) return {};
    // Equations (X_dst f - f X_src)(a, b) = 0 for X in {E, F}.
    std::map<std::tuple<int, int, int>, int> row_of;
    std::vector<std::tuple<int, int, Scalar>> entries;  // (row, unknown, coef)
    auto row = [&](int x, int a, int b) {
        auto key = std::make_tuple(x, a, b);
        auto it = row_of.find(key);
        if (it != row_of.end()) return it->second;
        const int id = static_cast<int>(row_of.size());
        row_of.emplace(key, id);
        return id;
    };
    const Matrix* xd[2] = {&dst.E, &dst.F};
    const Matrix* xs[2] = {&src.E, &src.F};
    for (int u = 0; u < static_cast<int>(unknowns.size()); ++u) {
        const auto [i, j] = unknowns[u];
        for (int x = 0; x < 2; ++x) {
            for (int a = 0; a < dst.dim; ++a) {
                const Scalar c = (*xd[x])(a, i);
                if (c != Scalar(0.0, 0.0)) entries.emplace_back(row(x, a, j), u, c);
            }
            for (int b = 0; b < src.dim; ++b) {
                const Scalar c = (*xs[x])(j, b);
                if (c != Scalar(0.0, 0.0)) entries.emplace_back(row(x, i, b), u, -c);
            }
        }
    }
    Matrix sys = Matrix::Zero(std::max<std::size_t>(row_of.size(), 1), unknowns.size());
    for (const auto& [r, u, c] : entries) sys(r, u) += c;
    const Matrix ns = nullspace(sys, ctx.tol());
    std::vector<Matrix> basis;
    for (Eigen::Index k = 0; k < ns.cols(); ++k) {
        Matrix f = Matrix::Zero(dst.dim, src.dim);
        for (std::size_t u = 0; u < unknowns.size(); ++u)
            f(unknowns[u].first, unknowns[u].second) = ns(u, k);
        basis.push_back(f);
    }
    return basis;
}

std::vector<Matrix> hom_basis(const ScalarContext& ctx, const ObjectWord& src,
                              const ObjectWord& dst) {
    return hom_basis(ctx, realize(ctx, src), realize(ctx, dst));
}

// ---- modified trace -----------------------------------------------------------

Scalar modified_dimension(const ScalarContext& ctx, Scalar alpha) {
    if (!is_typical(ctx, alpha)) {
        std::ostringstream msg;
        msg << "modified dimension requested for non-typical V(" << alpha << ")";
        throw Error(ErrorKind::NonTypicalColor, msg.str());
    }
    const double l = ctx.ell();
    const Scalar m = alpha - (l - 1.0);
    long n = 0;
    if (near_integer(m, 1e-12, &n)) {
        // Limit of l {m} / {l m} at an integer middle weight.
        const Scalar mm(static_cast<double>(n), 0.0);
        return (ctx.q_power(mm) + ctx.q_power(-mm)) / (ctx.q_power(l * mm) + ctx.q_power(-l * mm));
    }
    return l * ctx.brace(m) / ctx.brace(l * m);
}

Scalar modified_trace(const ScalarContext& ctx, const ObjectWord& word, const Matrix& f) {
    int t = -1;
    for (std::size_t i = 0; i < word.size(); ++i)
        if (word[i].color.is_typical()) { t = static_cast<int>(i); break; }
    if (t < 0) throw Error(ErrorKind::NotProjective, "modified trace needs a typical letter");
    std::vector<std::vector<Scalar>> pivots;
    for (const auto& sc : word) pivots.push_back(pivot_diagonal(ctx, signed_module(ctx, sc)));
    Matrix g = f;
    for (int i = static_cast<int>(word.size()) - 1; i > t; --i) g = partial_trace_right(g, pivots[i]);
    for (int i = 0; i < t; ++i) g = partial_trace_left(g, pivots[i]);
    const Scalar s = scalar_of(g, 1e3 * ctx.tol(), "modified trace");
    return s * modified_dimension(ctx, word[t].color.alpha);
}

Scalar sigma_dimension(const ScalarContext& ctx, long k) {
    return ctx.q_power(Scalar((1.0 - ctx.r() / 2.0) * static_cast<double>(k), 0.0));
}

int z_mod_zplus(const ScalarContext& ctx) {
    return ctx.approx_equal(sigma_dimension(ctx, ctx.rbar()), Scalar(1.0, 0.0)) ? 1 : 2;
}

std::vector<Scalar> index_set(const ScalarContext& ctx, const Degree& g) {
    if (g.is_critical(ctx.tol())) {
        std::ostringstream msg;
        msg << "index set requested at critical degree " << g.value();
        throw Error(ErrorKind::CriticalDegree, msg.str());
    }
    std::vector<Scalar> reps;
    for (int m = 0; m < ctx.rbar() / 2; ++m) reps.push_back(g.value() + 2.0 * m);
    return reps;
}

FormalColorSum kirby_color(const ScalarContext& ctx, const Degree& g) {
    FormalColorSum omega;
    omega.degree = g;
    const auto reps = index_set(ctx, g);
    const int classes = z_mod_zplus(ctx);
    for (int c = 0; c < classes; ++c) {
        const long k = c * static_cast<long>(ctx.rbar());
        const Scalar dimk = sigma_dimension(ctx, k);
        for (const auto& a : reps)
            omega.terms.emplace_back(dimk * modified_dimension(ctx, a),
                                     Color::typical(a + static_cast<double>(k)));
    }
    return omega;
}

}  // namespace cgp
