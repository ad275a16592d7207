#include "cgp/statespace.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "cgp/errors.hpp"

namespace cgp {

namespace {

void require_generic(const ScalarContext& ctx, const Degree& g, const char* what) {
    if (g.is_critical(ctx.tol())) {
        std::ostringstream msg;
        msg << what << " has critical degree " << g.value();
        throw Error(ErrorKind::CriticalDegree, msg.str());
    }
}

SignedColor typ(int sign, Scalar a) { return SignedColor{sign, Color::typical(a)}; }

}  // namespace

int sphere_hom_dim(const ScalarContext& ctx, Scalar alpha_i, Scalar alpha_j, long k, long k_prime) {
    const ObjectWord src{typ(+1, alpha_i), SignedColor{+1, Color::sigma(k)}, typ(-1, alpha_j)};
    const ObjectWord dst{SignedColor{+1, Color::sigma(k_prime)}};
    return static_cast<int>(hom_basis(ctx, src, dst).size());
}

int graded_invariants_dim(const ScalarContext& ctx, const ObjectWord& w) {
    const WeightModule m = realize(ctx, w);
    double lo = 0.0, hi = 0.0;
    bool integral = false;
    for (const auto& x : m.weights) {
        if (std::abs(x.imag()) > 1e-9 || std::abs(x.real() - std::round(x.real())) > 1e-9) continue;
        if (!integral) lo = hi = x.real();
        lo = std::min(lo, x.real());
        hi = std::max(hi, x.real());
        integral = true;
    }
    if (!integral) return 0;
    const long rbar = ctx.rbar();
    int total = 0;
    const long mlo = static_cast<long>(std::ceil(lo / rbar - 1e-9)), mhi = static_cast<long>(std::floor(hi / rbar + 1e-9));
    for (long k = mlo; k <= mhi; ++k) {
        const ObjectWord src{SignedColor{+1, Color::sigma(k * rbar)}};
        total += static_cast<int>(hom_basis(ctx, realize(ctx, src), m).size());
    }
    return total;
}

Genus1Report genus1_report(const ScalarContext& ctx, const Degree& g) {
    require_generic(ctx, g, "genus-1 meridian");
    Genus1Report rep;
    const auto reps = index_set(ctx, g);
    rep.dimension = static_cast<int>(reps.size());
    for (const auto& a : reps) {
        const int d = static_cast<int>(hom_basis(ctx, ObjectWord{}, ObjectWord{typ(-1, a), typ(+1, a)}).size());
        rep.per_color.push_back(d);
        rep.hom_sum += d;
    }
    if (rep.hom_sum != rep.dimension) {
        std::ostringstream msg;
        msg << "genus-1 dimension mismatch: |I_g| = " << rep.dimension << " but the Hom sum is " << rep.hom_sum;
        throw Error(ErrorKind::NumericInstability, msg.str());
    }
    return rep;
}

int genus1_dim(const ScalarContext& ctx, const Degree& g) { return genus1_report(ctx, g).dimension; }

int genus_n_dim(const ScalarContext& ctx, const TrivalentSurfaceData& data) {
    if (data.genus < 1) throw Error(ErrorKind::ParseError, "genus must be at least 1");
    if (data.genus == 1) {
        const auto reps = index_set(ctx, data.m0);
        int total = 0;
        for (const auto& a : reps) total += graded_invariants_dim(ctx, ObjectWord{typ(+1, a), typ(-1, a)});
        return total;
    }
    const int b = data.genus - 1;
    if (static_cast<int>(data.m_prime.size()) != b)
        throw Error(ErrorKind::ParseError, "genus n needs n-1 bubble meridian degrees");
    require_generic(ctx, data.m0, "m_0");
    std::vector<Degree> m_second;
    for (const auto& mp : data.m_prime) {
        require_generic(ctx, mp, "m'");
        m_second.push_back(data.m0 - mp);
        require_generic(ctx, m_second.back(), "m''");
    }
    const auto loop_reps = index_set(ctx, data.m0);
    std::vector<std::vector<Scalar>> rp, rs;
    for (int i = 0; i < b; ++i) {
        rp.push_back(index_set(ctx, data.m_prime[i]));
        rs.push_back(index_set(ctx, m_second[i]));
    }
    // Vertex spaces depend only on the three incident colors.
    std::map<std::tuple<int, int, int, int, int>, int> split_cache, join_cache;
    auto split_dim = [&](int i, int a, int p, int s) {  // e_i in, e'_i and e''_i out
        const auto key = std::make_tuple(i, a, p, s, 0);
        auto it = split_cache.find(key);
        if (it != split_cache.end()) return it->second;
        const int d = graded_invariants_dim(ctx, {typ(+1, loop_reps[a]), typ(-1, rp[i][p]), typ(-1, rs[i][s])});
        split_cache.emplace(key, d);
        return d;
    };
    auto join_dim = [&](int i, int p, int s, int a) {  // e'_i and e''_i in, e_{i+1} out
        const auto key = std::make_tuple(i, p, s, a, 1);
        auto it = join_cache.find(key);
        if (it != join_cache.end()) return it->second;
        const int d = graded_invariants_dim(ctx, {typ(+1, rp[i][p]), typ(+1, rs[i][s]), typ(-1, loop_reps[a])});
        join_cache.emplace(key, d);
        return d;
    };
    // Transfer along the loop: T_i[a][a'] = sum over bubble colors of split * join.
    const int nl = static_cast<int>(loop_reps.size());
    std::vector<std::vector<long>> acc(nl, std::vector<long>(nl, 0));
    for (int a = 0; a < nl; ++a) acc[a][a] = 1;
    for (int i = 0; i < b; ++i) {
        std::vector<std::vector<long>> t(nl, std::vector<long>(nl, 0));
        for (int a = 0; a < nl; ++a)
            for (int a2 = 0; a2 < nl; ++a2)
                for (std::size_t p = 0; p < rp[i].size(); ++p)
                    for (std::size_t s = 0; s < rs[i].size(); ++s)
                        t[a][a2] += static_cast<long>(split_dim(i, a, static_cast<int>(p), static_cast<int>(s))) *
                                    join_dim(i, static_cast<int>(p), static_cast<int>(s), a2);
        std::vector<std::vector<long>> next(nl, std::vector<long>(nl, 0));
        for (int x = 0; x < nl; ++x)
            for (int y = 0; y < nl; ++y)
                for (int z = 0; z < nl; ++z) next[x][z] += acc[x][y] * t[y][z];
        acc = next;
    }
    long total = 0;
    for (int a = 0; a < nl; ++a) total += acc[a][a];
    return static_cast<int>(total);
}

int genus2_dim_direct(const ScalarContext& ctx, const Degree& m0, const Degree& m_prime) {
    require_generic(ctx, m0, "m_0");
    require_generic(ctx, m_prime, "m'");
    const Degree m_second = m0 - m_prime;
    require_generic(ctx, m_second, "m''");
    int total = 0;
    for (const auto& p : index_set(ctx, m_prime))
        for (const auto& s : index_set(ctx, m_second))
            total += graded_invariants_dim(ctx, {typ(+1, p), typ(+1, s), typ(-1, s), typ(-1, p)});
    return total;
}

}  // namespace cgp
