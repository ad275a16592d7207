#include <doctest.h>

#include <random>

#include "cgp/errors.hpp"
#include "cgp/qscalars.hpp"
#include "oracles.hpp"

using namespace cgp;
using oracle::C;

TEST_CASE("q_power matches direct exponentials") {
    CHECK(std::abs(ScalarContext(4).q_power(1.0) - C(0.0, 1.0)) < 1e-14);
    CHECK(std::abs(ScalarContext(4).q_power(2.0) - C(-1.0, 0.0)) < 1e-14);
    CHECK(std::abs(ScalarContext(6).q_power(3.0) - C(-1.0, 0.0)) < 1e-14);
    for (int r : {4, 6, 10, 12}) {
        const ScalarContext ctx(r);
        for (C z : {C(0.3, 0.0), C(-1.7, 0.4), C(2.25, -1.1)}) CHECK(oracle::rel(ctx.q_power(z), oracle::qpow(r, z)) < 1e-13);
    }
}

TEST_CASE("q_power is multiplicative on random complex pairs") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int r : {4, 6}) {
        const ScalarContext ctx(r);
        for (int t = 0; t < 100; ++t) {
            const C z1(u(rng), u(rng) / 3.0), z2(u(rng), u(rng) / 3.0);
            CHECK(oracle::rel(ctx.q_power(z1 + z2), ctx.q_power(z1) * ctx.q_power(z2)) < 1e-9);
        }
    }
}

TEST_CASE("braces and quantum integers") {
    const ScalarContext c4(4), c6(6);
    CHECK(std::abs(c4.brace(0.0)) < 1e-15);
    CHECK(std::abs(c4.brace(1.0) - C(0.0, 2.0)) < 1e-14);
    CHECK(std::abs(c6.brace(1.0) - C(0.0, 2.0 * std::sin(M_PI / 3.0))) < 1e-14);
    CHECK(std::abs(c4.qint(2)) < 1e-14);
    CHECK(std::abs(c6.qint(1) - C(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(c6.qint(3)) < 1e-14);
    // [k] = sin(2 pi k / r) / sin(2 pi / r) for integer k.
    for (int r : {6, 10, 12})
        for (long k = -5; k <= 9; ++k)
            CHECK(std::abs(ScalarContext(r).qint(k) - C(std::sin(2 * M_PI * k / r) / std::sin(2 * M_PI / r), 0.0)) < 1e-12);
}

TEST_CASE("quantum factorial vanishes from r/2 on") {
    for (int r : {4, 6, 10, 12}) {
        const ScalarContext ctx(r);
        for (long k = 0; k < ctx.ell(); ++k) CHECK(std::abs(ctx.qfact(k)) > 1e-6);
        for (long k = ctx.ell(); k < ctx.ell() + 3; ++k) CHECK(std::abs(ctx.qfact(k)) < 1e-12);
    }
}

TEST_CASE("quantum binomials satisfy the q-Pascal recurrence at the root") {
    // [k, l] = q^{-l} [k-1, l] + q^{k-l} [k-1, l-1], with boundary values 1.
    for (int r : {4, 6, 10, 12}) {
        const ScalarContext ctx(r);
        const int n = 9;
        std::vector<std::vector<C>> pascal(n + 1, std::vector<C>(n + 1, C(0.0, 0.0)));
        for (int k = 0; k <= n; ++k) {
            pascal[k][0] = pascal[k][k] = 1.0;
            for (int l = 1; l < k; ++l)
                pascal[k][l] = oracle::qpow(r, C(-l, 0)) * pascal[k - 1][l] + oracle::qpow(r, C(k - l, 0)) * pascal[k - 1][l - 1];
        }
        for (int k = 0; k <= n; ++k)
            for (int l = 0; l <= k; ++l) {
                CAPTURE(r);
                CAPTURE(k);
                CAPTURE(l);
                CHECK(oracle::rel(ctx.qbinom(k, l), pascal[k][l]) < 1e-10);
            }
    }
    CHECK_THROWS_AS(ScalarContext(6).qbinom(2, 3), Error);
}

TEST_CASE("extended precision agrees with double precision") {
    const ScalarContext lo(6), hi(6, 256);
    for (C z : {C(0.25, 0.1), C(1.75, -0.3)}) {
        CHECK(oracle::rel(lo.q_power(z), hi.q_power(z)) < 1e-14);
        CHECK(oracle::rel(lo.brace(z), hi.brace(z)) < 1e-13);
    }
}
