#include <doctest.h>

#include <random>

#include "cgp/errors.hpp"
#include "cgp/weightcat.hpp"
#include "oracles.hpp"

using namespace cgp;
using oracle::C;

namespace {

const C kA(0.37, 0.11), kB(1.21, -0.3), kC(-0.64, 0.27);

SignedColor up(Color c) { return {+1, c}; }
SignedColor down(Color c) { return {-1, c}; }

/// Closed-form d(V_alpha) = l {m} / {l m}, m = alpha - (l - 1), evaluated with std::exp.
C moddim_oracle(int r, C alpha) {
    const int l = r / 2;
    const C m = alpha - static_cast<double>(l - 1);
    return static_cast<double>(l) * oracle::brace(r, m) / oracle::brace(r, static_cast<double>(l) * m);
}

}  // namespace

TEST_CASE("realize builds the expected small modules") {
    const ScalarContext ctx(4);
    const auto unit = realize(ctx, {up(Color::sigma(0))});
    CHECK(unit.dim == 1);
    CHECK(std::abs(unit.H(0, 0)) < 1e-15);
    const auto s = realize(ctx, {up(Color::sigma(ctx.rbar()))});
    CHECK(s.dim == 1);
    CHECK(std::abs(s.H(0, 0) - C(2.0, 0.0)) < 1e-14);
    CHECK(std::abs(s.K(0, 0) - C(-1.0, 0.0)) < 1e-14);
    const auto vv = realize(ctx, {up(Color::typical(kA)), down(Color::typical(kA))});
    CHECK(vv.dim == ctx.ell() * ctx.ell());
    CHECK(vv.degree.equals(Degree(C(0.0, 0.0)), 1e-12));
}

TEST_CASE("every constructed module satisfies the algebra relations") {
    for (int r : {4, 6, 10, 12}) {
        const ScalarContext ctx(r);
        std::vector<WeightModule> mods;
        for (C a : {kA, kB, kC, C(0.5, 0.0)}) {
            mods.push_back(typical_module(ctx, a));
            mods.push_back(dual_module(ctx, mods.back()));
        }
        for (long k : {-2L * ctx.rbar(), -1L * ctx.rbar(), 0L, 3L * ctx.rbar()}) mods.push_back(sigma_module(ctx, k));
        CHECK_THROWS_AS(sigma_module(ctx, 1), Error);
        mods.push_back(realize(ctx, {up(Color::typical(kA)), down(Color::typical(kB)), up(Color::sigma(ctx.rbar()))}));
        for (const auto& m : mods) CHECK(relation_residuals(ctx, m).worst() < 1e-9);
    }
}

TEST_CASE("braidings of one-dimensional and typical modules") {
    for (int r : {4, 6}) {
        const ScalarContext ctx(r);
        const long rb = ctx.rbar();
        // Double braiding on sigma (x) sigma is trivial for k, k' in rbar Z.
        for (long k : {rb, -rb, 2 * rb})
            for (long k2 : {rb, 3 * rb}) {
                const auto s1 = sigma_module(ctx, k), s2 = sigma_module(ctx, k2);
                const Matrix c = braiding(ctx, s1, s2);
                CHECK(c.rows() == 1);
                CHECK(std::abs(std::abs(c(0, 0)) - 1.0) < 1e-12);
                CHECK(std::abs((braiding(ctx, s2, s1) * c)(0, 0) - C(1.0, 0.0)) < 1e-10);
            }
        // c_{sigma(k),V} c_{V,sigma(k)} = q^{alpha k} id.
        const auto v = typical_module(ctx, kA);
        for (long k : {rb, -rb, 2 * rb}) {
            const auto s = sigma_module(ctx, k);
            const Matrix dbl = braiding(ctx, s, v) * braiding(ctx, v, s);
            const C expected = oracle::qpow(r, kA * static_cast<double>(k));
            CHECK(oracle::max_abs(dbl - expected * Matrix::Identity(v.dim, v.dim)) < 1e-9);
        }
        // Braid relation on V_a (x) V_b (x) V_c.
        const auto a = typical_module(ctx, kA), b = typical_module(ctx, kB), c = typical_module(ctx, kC);
        const Matrix ia = Matrix::Identity(a.dim, a.dim), ic = Matrix::Identity(c.dim, c.dim);
        const auto ab = tensor_module(a, b);
        const Matrix lhs = kron(braiding(ctx, b, c), Matrix::Identity(a.dim, a.dim)) *
                           kron(Matrix::Identity(b.dim, b.dim), braiding(ctx, a, c)) * kron(braiding(ctx, a, b), ic);
        const Matrix rhs = kron(Matrix::Identity(c.dim, c.dim), braiding(ctx, a, b)) *
                           kron(braiding(ctx, a, c), Matrix::Identity(b.dim, b.dim)) *
                           kron(ia, braiding(ctx, b, c));
        CHECK(oracle::max_abs(lhs - rhs) < 1e-8 * std::max(1.0, oracle::max_abs(lhs)));
        CHECK(oracle::max_abs(braiding(ctx, a, b) * braiding_inverse(ctx, a, b) - Matrix::Identity(ab.dim, ab.dim)) < 1e-9);
    }
}

TEST_CASE("twists") {
    for (int r : {4, 6}) {
        const ScalarContext ctx(r);
        for (long k : {0L, static_cast<long>(ctx.rbar()), -2L * ctx.rbar()}) {
            const Matrix t = twist(ctx, sigma_module(ctx, k));
            CHECK(std::abs(t(0, 0) - C(1.0, 0.0)) < 1e-10);
        }
        const auto v = typical_module(ctx, kA), w = typical_module(ctx, kB);
        const Matrix tv = twist(ctx, v);
        CHECK(oracle::max_abs(tv - tv(0, 0) * Matrix::Identity(v.dim, v.dim)) < 1e-9 * std::abs(tv(0, 0)));
        const Matrix tvw = twist(ctx, tensor_module(v, w));
        const Matrix expected = braiding(ctx, w, v) * braiding(ctx, v, w) * kron(tv, twist(ctx, w));
        CHECK(oracle::max_abs(tvw - expected) < 1e-8 * std::max(1.0, oracle::max_abs(expected)));
    }
}

TEST_CASE("dualities: zig-zag and closed loops") {
    for (int r : {4, 6}) {
        const ScalarContext ctx(r);
        for (const auto& v : {typical_module(ctx, kA), sigma_module(ctx, ctx.rbar())}) {
            const Matrix id = Matrix::Identity(v.dim, v.dim);
            const Matrix zig = kron(id, duality_map(ctx, v, Duality::EvLeft)) * kron(duality_map(ctx, v, Duality::CoevLeft), id);
            CHECK(oracle::max_abs(zig - id) < 1e-9);
            const Matrix zag = kron(duality_map(ctx, v, Duality::EvRight), id) * kron(id, duality_map(ctx, v, Duality::CoevRight));
            CHECK(oracle::max_abs(zag - id) < 1e-9);
        }
        // ev_right o coev_left is the categorical dimension.
        const auto loop = [&](const WeightModule& v) {
            return (duality_map(ctx, v, Duality::EvRight) * duality_map(ctx, v, Duality::CoevLeft))(0, 0);
        };
        CHECK(std::abs(loop(typical_module(ctx, kA))) < 1e-9);
        const C dim_s = loop(sigma_module(ctx, ctx.rbar()));
        CHECK(std::abs(dim_s - sigma_dimension(ctx, ctx.rbar())) < 1e-12);
        if (r == 4) CHECK(std::abs(dim_s - C(-1.0, 0.0)) < 1e-12);
        if (r == 6) CHECK(std::abs(dim_s - C(1.0, 0.0)) < 1e-12);
    }
}

TEST_CASE("Hom spaces") {
    const ScalarContext ctx(6);
    CHECK(hom_basis(ctx, ObjectWord{up(Color::typical(kA))}, ObjectWord{up(Color::typical(kA))}).size() == 1);
    CHECK(hom_basis(ctx, ObjectWord{up(Color::typical(kA))}, ObjectWord{up(Color::typical(kB))}).empty());
    CHECK(hom_basis(ctx, ObjectWord{up(Color::typical(kA))}, ObjectWord{up(Color::typical(kA + 2.0))}).empty());
    // V (x) V* has l simple projective-cover summands' worth of endomorphisms; the
    // invariants are one-dimensional.
    CHECK(hom_basis(ctx, ObjectWord{}, ObjectWord{up(Color::typical(kA)), down(Color::typical(kA))}).size() == 1);
}

TEST_CASE("modified dimension and modified trace") {
    for (int r : {4, 6, 10, 12}) {
        const ScalarContext ctx(r);
        for (C a : {kA, kB, kC, C(0.5, 0.0), C(2.5, 0.0)}) {
            CAPTURE(r);
            CAPTURE(a);
            CHECK(oracle::rel0(modified_dimension(ctx, a), moddim_oracle(r, a)) < 1e-10);
            const auto v = typical_module(ctx, a);
            CHECK(oracle::rel0(modified_trace(ctx, {up(Color::typical(a))}, Matrix::Identity(v.dim, v.dim)),
                               modified_dimension(ctx, a)) < 1e-10);
            const long k = ctx.rbar();
            CHECK(oracle::rel0(modified_trace(ctx, {up(Color::typical(a)), up(Color::sigma(k))},
                                              Matrix::Identity(v.dim, v.dim)),
                               modified_dimension(ctx, a) * sigma_dimension(ctx, k)) < 1e-10);
        }
    }
    CHECK_THROWS_AS(modified_dimension(ScalarContext(6), C(1.0, 0.0)), Error);
}

TEST_CASE("modified trace is cyclic on random intertwiners") {
    const ScalarContext ctx(4);
    const ObjectWord w{up(Color::typical(kA)), up(Color::typical(kB))};
    const auto basis = hom_basis(ctx, w, w);
    REQUIRE(basis.size() >= 2);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    for (int t = 0; t < 20; ++t) {
        Matrix f = Matrix::Zero(basis[0].rows(), basis[0].cols()), h = f;
        for (const auto& b : basis) {
            f += C(g(rng), g(rng)) * b;
            h += C(g(rng), g(rng)) * b;
        }
        CHECK(oracle::rel(modified_trace(ctx, w, h * f), modified_trace(ctx, w, f * h)) < 1e-8);
    }
}

TEST_CASE("index sets and Kirby colors") {
    const ScalarContext c4(4), c6(6);
    CHECK(index_set(c4, Degree(C(0.5, 0.0))).size() == 1);
    CHECK(index_set(c6, Degree(C(0.3, 0.1))).size() == 3);
    CHECK(z_mod_zplus(c4) == 2);
    CHECK(z_mod_zplus(c6) == 1);
    CHECK_THROWS_AS(index_set(c6, Degree(C(1.0, 0.0))), Error);

    // Representatives are pairwise non-isomorphic, also after tensoring with sigma(k).
    const auto reps = index_set(c6, Degree(C(0.3, 0.1)));
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = 0; j < reps.size(); ++j)
            for (long k : {-6L, 0L, 6L}) {
                const auto n = hom_basis(c6, ObjectWord{up(Color::typical(reps[i]))},
                                         ObjectWord{up(Color::typical(reps[j])), up(Color::sigma(k))})
                                   .size();
                CHECK(n == ((i == j && k == 0) ? 1u : 0u));
            }

    const Degree g(C(0.3, 0.1));
    const auto om6 = kirby_color(c6, g);
    REQUIRE(om6.terms.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(oracle::rel0(om6.terms[i].first, modified_dimension(c6, reps[i])) < 1e-12);

    const auto om4 = kirby_color(c4, g);
    REQUIRE(om4.terms.size() == 2);
    CHECK(oracle::rel0(om4.terms[0].first, -om4.terms[1].first) < 1e-12);
    for (const auto* om : {&om4, &om6})
        for (const auto& [coef, col] : om->terms) CHECK(Degree(col.degree()).equals(g, 1e-12));
}
