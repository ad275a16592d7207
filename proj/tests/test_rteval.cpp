#include <doctest.h>

#include <random>

#include "cgp/builders.hpp"
#include "cgp/constants.hpp"
#include "cgp/fixtures.hpp"
#include "cgp/rteval.hpp"
#include "oracles.hpp"

using namespace cgp;
using oracle::C;

namespace {

const C kA(0.37, 0.11), kB(1.21, -0.3);

/// Seifert-matrix oracle: t^{-1} det(V - t V^T) for a 2x2 Seifert matrix.
C alexander(const std::array<double, 4>& v, C t) {
    const C a = v[0] - t * v[0], b = v[1] - t * v[2], c = v[2] - t * v[1], d = v[3] - t * v[3];
    return (a * d - b * c) / t;
}

Diagram random_braid(std::mt19937_64& rng, const Word& source, const std::vector<EdgeLabel>& labels, int length) {
    DiagramBuilder b(source, labels);
    std::uniform_int_distribution<int> coin(0, 1), pos(0, static_cast<int>(source.size()) - 2);
    for (int i = 0; i < length; ++i) {
        if (coin(rng))
            b.xpos(pos(rng));
        else
            b.xneg(pos(rng));
    }
    return b.build();
}

}  // namespace

TEST_CASE("evaluation of elementary closed diagrams") {
    for (int r : {4, 6}) {
        const ScalarContext ctx(r);
        const Word w{{+1, 0}, {-1, 1}};
        const Matrix id = evaluate(ctx, identity_diagram(w, {Color::typical(kA), Color::typical(kB)}));
        CHECK(oracle::max_abs(id - Matrix::Identity(id.rows(), id.cols())) < 1e-15);
        for (long k : {0L, static_cast<long>(ctx.rbar()), -3L * ctx.rbar()}) {
            const Matrix m = evaluate(ctx, unknot(Color::sigma(k)));
            CHECK(std::abs(m(0, 0) - sigma_dimension(ctx, k)) < 1e-12);
        }
        CHECK(std::abs(evaluate(ctx, unknot(Color::typical(kA)))(0, 0)) < 1e-9);
    }
}

TEST_CASE("Omega-colored meridians give the stabilization coefficients") {
    for (int r : {4, 6}) {
        const ScalarContext ctx(r);
        // Constants from a different probe than the strand used here.
        const InvariantConstants k = compute_constants(ctx, Degree(C(0.61, -0.2)), kB);
        const Scalar theta = twist(ctx, typical_module(ctx, kA))(0, 0);
        for (int framing : {-1, +1}) {
            DiagramBuilder b(Word{{+1, 0}}, {Color::typical(kA)});
            // Degree chosen so the surgery circle is admissible: framing * x - alpha = 0.
            add_meridian(b, 0, 1, kirby_color(ctx, Degree(kA / static_cast<double>(framing))), framing);
            const Matrix m = evaluate_formal(ctx, b.build());
            const C expected = framing < 0 ? k.delta_minus * theta : k.delta_plus / theta;
            CHECK(oracle::max_abs(m - expected * Matrix::Identity(m.rows(), m.cols())) < 1e-8 * std::abs(expected));
        }
        // A split Omega circle is a sum of categorical dimensions of projectives.
        CHECK(std::abs(evaluate_formal(ctx, unknot(kirby_color(ctx, Degree(C(0.29, 0.07))), 1))(0, 0)) < 1e-8);
    }
}

TEST_CASE("formal evaluation is linear") {
    const ScalarContext ctx(6);
    const auto om = kirby_color(ctx, Degree(C(0.29, 0.07)));
    DiagramBuilder b(Word{{+1, 0}}, {Color::typical(kA)});
    add_meridian(b, 0, 1, om, 0);
    const Diagram d = b.build();
    Matrix sum = Matrix::Zero(ctx.ell(), ctx.ell());
    for (const auto& [coef, col] : om.terms) {
        Diagram single = d;
        single.edges[1] = col;
        sum += coef * evaluate(ctx, single);
    }
    CHECK(oracle::max_abs(evaluate_formal(ctx, d) - sum) < 1e-10 * std::max(1.0, oracle::max_abs(sum)));
}

TEST_CASE("renormalized invariant of small closed graphs") {
    for (int r : {4, 6}) {
        const ScalarContext ctx(r);
        CHECK(oracle::rel0(f_prime(ctx, unknot(Color::typical(kA))), modified_dimension(ctx, kA)) < 1e-10);
        const Scalar theta = twist(ctx, typical_module(ctx, kA))(0, 0);
        CHECK(oracle::rel0(f_prime(ctx, unknot(Color::typical(kA), +1)), theta * modified_dimension(ctx, kA)) < 1e-9);
        const long k = ctx.rbar();
        const Diagram split = tensor(fixtures::trefoil(kA), unknot(Color::sigma(k)));
        CHECK(oracle::rel0(f_prime(ctx, split), f_prime(ctx, fixtures::trefoil(kA)) * sigma_dimension(ctx, k)) < 1e-9);
        const Diagram h = fixtures::hopf(kA, kB);
        CHECK(oracle::rel0(f_prime(ctx, h, 0), f_prime(ctx, h, 1)) < 1e-9);
    }
}

TEST_CASE("evaluation is functorial and monoidal on random braids") {
    const ScalarContext ctx(4);
    std::mt19937_64 rng(3);
    const std::vector<EdgeLabel> labels = {Color::typical(kA), Color::typical(kB), Color::sigma(2)};
    const Word w{{+1, 0}, {+1, 1}, {-1, 2}};
    for (int t = 0; t < 50; ++t) {
        const Diagram d1 = random_braid(rng, w, labels, 1 + t % 4);
        const Diagram d2 = random_braid(rng, target(d1), labels, 1 + t % 3);
        const Matrix m = evaluate(ctx, compose(d1, d2)), expected = evaluate(ctx, d2) * evaluate(ctx, d1);
        CHECK(oracle::max_abs(m - expected) < 1e-8 * std::max(1.0, oracle::max_abs(expected)));
        const Diagram d3 = random_braid(rng, Word{{+1, 0}, {-1, 1}}, {Color::typical(kB), Color::typical(kA)}, 2);
        const Matrix tm = evaluate(ctx, tensor(d1, d3)), te = kron(evaluate(ctx, d1), evaluate(ctx, d3));
        CHECK(oracle::max_abs(tm - te) < 1e-8 * std::max(1.0, oracle::max_abs(te)));
    }
}

TEST_CASE("trefoil and figure-eight at r = 4 match their Alexander polynomials") {
    const ScalarContext ctx(4);
    for (C a : {kA, kB, C(0.5, 0.0), C(-0.77, 0.4), C(2.6, 0.05)}) {
        const C t = oracle::qpow(4, 2.0 * a);
        const C d = modified_dimension(ctx, a);
        CHECK(oracle::rel(f_prime(ctx, fixtures::trefoil(a)) / d, alexander({-1, 1, 0, -1}, t)) < 1e-6);
        CHECK(oracle::rel(f_prime(ctx, fixtures::figure_eight(a)) / d, alexander({1, 1, 0, -1}, t)) < 1e-6);
    }
}
