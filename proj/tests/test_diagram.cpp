#include <doctest.h>

#include "cgp/builders.hpp"
#include "cgp/errors.hpp"
#include "cgp/rteval.hpp"
#include "oracles.hpp"

using namespace cgp;
using oracle::C;

namespace {
const C kA(0.37, 0.11), kB(1.21, -0.3);
}

TEST_CASE("validation") {
    const ScalarContext ctx(4);
    const Diagram id = identity_diagram({{+1, 0}, {-1, 1}}, {Color::typical(kA), Color::typical(kB)});
    CHECK(validate(ctx, id).ok);

    // A cap whose letters do not match its pattern.
    Diagram bad = id;
    Cell cap;
    cap.kind = CellKind::CapL;
    cap.pos = 0;
    bad.cells.push_back(cap);
    const auto rep = validate(ctx, bad);
    CHECK_FALSE(rep.ok);
    CHECK(rep.slice == 0);
    CHECK_THROWS_AS(require_valid(ctx, bad), Error);

    // Coupon with a matrix of the wrong shape.
    DiagramBuilder b(Word{{+1, 0}}, {Color::typical(kA)});
    b.coupon(0, 1, Word{{+1, 0}}, Matrix::Identity(3, 3));
    CHECK_FALSE(validate(ctx, b.build()).ok);
}

TEST_CASE("composition and tensor products") {
    const ScalarContext ctx(4);
    const std::vector<EdgeLabel> labels = {Color::typical(kA), Color::typical(kB)};
    DiagramBuilder b(Word{{+1, 0}, {+1, 1}}, labels);
    b.xpos(0);
    const Diagram x = b.build();
    const Diagram id = identity_diagram({{+1, 0}, {+1, 1}}, labels);
    CHECK(oracle::max_abs(evaluate(ctx, compose(id, x)) - evaluate(ctx, x)) < 1e-12);

    DiagramBuilder b2(Word{{+1, 1}, {+1, 0}}, labels);
    b2.xneg(0);
    const Matrix r2 = evaluate(ctx, compose(x, b2.build()));
    CHECK(oracle::max_abs(r2 - Matrix::Identity(r2.rows(), r2.cols())) < 1e-9);

    const Diagram u1 = unknot(Color::typical(kA)), u2 = unknot(Color::typical(kB));
    const Diagram both = tensor(u1, u2);
    const auto comps = edge_components(both);
    CHECK(*std::max_element(comps.begin(), comps.end()) + 1 == 2);
    CHECK(is_closed(both));

    DiagramBuilder z(Word{{+1, 0}}, {Color::typical(kA)});
    z.cup_right(1, 0).cap_right(0);
    const Matrix zig = evaluate(ctx, z.build());
    CHECK(oracle::max_abs(zig - Matrix::Identity(zig.rows(), zig.cols())) < 1e-9);

    CHECK_THROWS_AS(compose(x, identity_diagram({{-1, 0}}, labels)), Error);
}

TEST_CASE("braid closures") {
    CHECK(braid_components(2, {1, 1, 1}) == 1);
    CHECK(braid_components(2, {1, 1}) == 2);
    CHECK(braid_components(3, {1, -2, 1, -2}) == 1);
    const Diagram hopf = braid_closure(2, {1, 1}, {Color::typical(kA), Color::typical(kB)});
    CHECK(is_closed(hopf));
    CHECK(crossings(hopf).size() == 2);
}

TEST_CASE("cutting presentations") {
    const ScalarContext ctx(6);
    const Matrix c0 = evaluate(ctx, cut(ctx, unknot(Color::typical(kA)), 0));
    CHECK(oracle::max_abs(c0 - Matrix::Identity(c0.rows(), c0.cols())) < 1e-9);

    const Diagram curl = unknot(Color::typical(kA), +1);
    const Matrix c1 = evaluate(ctx, cut(ctx, curl, 0));
    const Matrix theta = twist(ctx, typical_module(ctx, kA));
    CHECK(oracle::max_abs(c1 - theta) < 1e-9);

    CHECK_THROWS_AS(cut(ctx, unknot(Color::sigma(0)), 0), Error);
}

TEST_CASE("splice keeps the boundary word") {
    const ScalarContext ctx(4);
    const Diagram u = unknot(Color::typical(kA));
    Cell a, b;
    a.kind = CellKind::XPos;
    b.kind = CellKind::XNeg;
    // Crossing and uncrossing the two letters of the unknot changes nothing.
    const Diagram s = splice(u, 1, {a, b});
    CHECK(s.cells.size() == u.cells.size() + 2);
    CHECK(oracle::rel(f_prime(ctx, s), f_prime(ctx, u)) < 1e-9);
    CHECK_THROWS_AS(splice(u, 1, {a}), Error);
}
