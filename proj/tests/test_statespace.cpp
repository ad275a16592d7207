#include <doctest.h>

#include "cgp/errors.hpp"
#include "cgp/statespace.hpp"

using namespace cgp;
using C = std::complex<double>;

TEST_CASE("Hom dimensions on the sphere follow the Kronecker pattern") {
    for (int r : {4, 6}) {
        const ScalarContext ctx(r);
        const auto reps = index_set(ctx, Degree(C(0.31, 0.12)));
        const long rb = ctx.rbar();
        for (std::size_t i = 0; i < reps.size(); ++i)
            for (std::size_t j = 0; j < reps.size(); ++j)
                for (long k : {-rb, 0L, rb})
                    for (long k2 : {-rb, 0L, rb})
                        CHECK(sphere_hom_dim(ctx, reps[i], reps[j], k, k2) == ((i == j && k == k2) ? 1 : 0));
    }
}

TEST_CASE("genus-1 dimensions") {
    for (int r : {4, 6, 10, 12}) {
        const ScalarContext ctx(r);
        for (C g : {C(0.3, 0.1), C(0.5, 0.0), C(1.7, -0.4)}) {
            const auto rep = genus1_report(ctx, Degree(g));
            CHECK(rep.dimension == ctx.rbar() / 2);
            CHECK(rep.hom_sum == ctx.rbar() / 2);
            for (int d : rep.per_color) CHECK(d == 1);
            CHECK(genus_n_dim(ctx, {1, Degree(g), {}}) == rep.dimension);
        }
    }
    CHECK(genus1_dim(ScalarContext(4), Degree(C(0.5, 0.0))) == 1);
    CHECK(genus1_dim(ScalarContext(6), Degree(C(0.5, 0.0))) == 3);
    CHECK_THROWS_AS(genus1_dim(ScalarContext(6), Degree(C(1.0, 0.0))), Error);
}

TEST_CASE("genus-2 trivalent formula agrees with the direct computation") {
    for (int r : {4, 6}) {
        const ScalarContext ctx(r);
        for (auto [m0, mp] : {std::pair{C(0.3, 0.1), C(0.7, -0.2)}, std::pair{C(0.5, 0.0), C(0.25, 0.0)}}) {
            const int tri = genus_n_dim(ctx, {2, Degree(m0), {Degree(mp)}});
            CHECK(tri == genus2_dim_direct(ctx, Degree(m0), Degree(mp)));
            CHECK(tri >= 0);
        }
    }
    // One more bubble multiplies by the same per-bubble factor.
    const ScalarContext ctx(4);
    const Degree m0(C(0.3, 0.1)), a(C(0.7, -0.2)), b(C(0.2, 0.3));
    CHECK(genus_n_dim(ctx, {3, m0, {a, b}}) >= genus_n_dim(ctx, {2, m0, {a}}));
    CHECK_THROWS_AS(genus_n_dim(ctx, {3, m0, {a}}), Error);
}
