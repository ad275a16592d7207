#include "checks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "cgp/builders.hpp"
#include "cgp/constants.hpp"
#include "cgp/errors.hpp"
#include "cgp/fixtures.hpp"
#include "cgp/maslov.hpp"
#include "cgp/statespace.hpp"

namespace cgp::cli {

namespace {

double rel(Scalar a, Scalar b) { return std::abs(a - b) / std::max({1e-300, std::abs(a), std::abs(b)}); }

std::string fmt(double x) {
    std::ostringstream s;
    s.precision(3);
    s << std::scientific << x;
    return s.str();
}

const std::array<Scalar, 5> kAlphas = {Scalar(0.37, 0.11), Scalar(1.21, -0.3), Scalar(0.5, 0.0), Scalar(-0.77, 0.4),
                                       Scalar(2.6, 0.05)};

CheckLine relations(const ScalarContext& ctx) {
    double worst = 0.0;
    std::vector<WeightModule> mods;
    for (Scalar a : kAlphas) mods.push_back(typical_module(ctx, a));
    for (long k : {-1L * ctx.rbar(), 0L, 1L * ctx.rbar(), 2L * ctx.rbar()}) mods.push_back(sigma_module(ctx, k));
    const std::size_t base = mods.size();
    for (std::size_t i = 0; i < base; ++i) mods.push_back(dual_module(ctx, mods[i]));
    mods.push_back(tensor_module(mods[0], mods[1]));
    mods.push_back(tensor_module(mods[2], mods[base]));
    for (const auto& m : mods) worst = std::max(worst, relation_residuals(ctx, m).worst());
    return {"algebra relations", worst <= 1e-9, std::to_string(mods.size()) + " modules, worst " + fmt(worst)};
}

CheckLine constants(const ScalarContext& ctx, const EvalOptions& opts) {
    const auto k1 = compute_constants(ctx, Degree(Scalar(0.29, 0.07)), Scalar(0.37, 0.11), opts);
    const auto k2 = compute_constants(ctx, Degree(Scalar(0.61, -0.2)), Scalar(1.21, -0.3), opts);
    const double identity = rel(k1.delta_minus * k1.delta_plus, static_cast<double>(k1.z_mod_zplus) * k1.zeta);
    const double probe = std::max(rel(k1.delta_minus, k2.delta_minus), rel(k1.delta_plus, k2.delta_plus));
    return {"constants identity", identity <= 1e-8 && probe <= 1e-8,
            "|Z/Z+| = " + std::to_string(k1.z_mod_zplus) + ", identity " + fmt(identity) + ", probes " + fmt(probe)};
}

CheckLine modularity(const ScalarContext& ctx, const EvalOptions& opts) {
    const auto reps = index_set(ctx, Degree(Scalar(0.23, 0.05)));
    const Degree h(Scalar(0.61, -0.2));
    double diag = 0.0, off = 0.0;
    for (const auto& ai : reps)
        for (const auto& aj : reps) {
            const auto p = modularity_probe(ctx, ai, aj, h, opts);
            if (std::abs(ai - aj) < 1e-12)
                diag = std::max(diag, p.norm);
            else
                off = std::max(off, p.norm);
        }
    return {"relative modularity", diag > 0.0 && off <= 1e-8 * diag, "off-diagonal/diagonal " + fmt(off / diag)};
}

CheckLine renormalized(const ScalarContext& ctx) {
    double worst = 0.0;
    for (Scalar a : kAlphas) worst = std::max(worst, rel(f_prime(ctx, unknot(Color::typical(a))), modified_dimension(ctx, a)));
    const Diagram h = fixtures::hopf(Scalar(0.37, 0.11), Scalar(1.21, -0.3));
    const double cut = rel(f_prime(ctx, h, 0), f_prime(ctx, h, 1));
    return {"renormalized invariant", worst <= 1e-10 && cut <= 1e-9, "unknot " + fmt(worst) + ", cut " + fmt(cut)};
}

CheckLine surgery_axioms(const ScalarContext& ctx, const InvariantConstants& k) {
    const Scalar a(0.37, 0.11);
    const Scalar ed = k.eta * modified_dimension(ctx, a);
    const double index0 = rel(cgp::cgp(ctx, fixtures::s3_unknot(a)), ed);

    SurgeryPresentation attach = fixtures::s3_blowup(a, +1);
    SurgeryPresentation belt = attach;
    belt.diagram.edges[attach.surgery_components[0]] = kirby_color(ctx, attach.meridian_degrees[0]);
    belt.surgery_components.clear();
    belt.meridian_degrees.clear();
    belt.signature_defect = attach.signature_defect - linking_data(attach).signature;
    const double index2 = rel(cgp::cgp(ctx, attach) / cgp::cgp(ctx, belt), 1.0 / k.D);

    const Diagram t = fixtures::trefoil(a), f = fixtures::figure_eight(a);
    const Scalar sum = cgp::cgp(ctx, {fixtures::edge_connected_sum(ctx, t, 0, f, 0), {}, {}, 0});
    const Scalar ct = cgp::cgp(ctx, {t, {}, {}, 0}), cf = cgp::cgp(ctx, {f, {}, {}, 0});
    const double index1 = rel(sum / (ct * cf), 1.0 / ed);
    const double worst = std::max({index0, index1, index2});
    return {"surgery axioms", worst <= 1e-8,
            "index 0 " + fmt(index0) + ", index 1 " + fmt(index1) + ", index 2 " + fmt(index2)};
}

CheckLine kirby(const ScalarContext& ctx, const EvalOptions& opts) {
    const auto rep = kirby_equivalence_suite(ctx, fixtures::kirby_pairs(Scalar(0.37, 0.11)), 1e-7, opts);
    double worst = 0.0;
    for (const auto& d : rep.deviations) worst = std::max(worst, d.second);
    double separation = 0.0;
    for (int j = 1; j <= 4; ++j) {
        const Scalar g(0.4 * j, 0.0);
        separation = std::max(separation, std::abs(cgp::cgp(ctx, fixtures::lens51_hopf(g)) -
                                                   cgp::cgp(ctx, fixtures::lens52_hopf(g))));
    }
    return {"Kirby invariance", rep.pass && separation > 1e-3,
            std::to_string(rep.deviations.size()) + " pairs, worst " + fmt(worst) + ", L(5,1)/L(5,2) gap " +
                fmt(separation)};
}

CheckLine stabilization(const ScalarContext& ctx, const InvariantConstants& k) {
    const Scalar a(0.37, 0.11);
    const auto reps = index_set(ctx, Degree(Scalar(0.29, 0.07)));
    double worst = 0.0;
    // (fixture, level of an upward typical letter at position 0)
    const std::pair<SurgeryPresentation, int> cases[] = {{fixtures::s3_unknot(a), 1},
                                                         {fixtures::s1s2_meridians(a, Scalar(0.43, -0.09)), 3}};
    for (const auto& [p, level] : cases) {
        const Scalar base = cgp::cgp(ctx, p);
        SurgeryPresentation proj = p;
        proj.diagram = stabilize_projective(ctx, p.diagram, level, 0, reps.back());
        worst = std::max(worst, rel(cgp::cgp(ctx, proj), base));
        worst = std::max(worst, rel(cgp::cgp(ctx, stabilize_generic(ctx, p, 1, 0, 1, k)), base));
    }
    return {"stabilization invariance", worst <= 1e-8, "worst " + fmt(worst)};
}

CheckLine hom_lemma(const ScalarContext& ctx) {
    const auto reps = index_set(ctx, Degree(Scalar(0.31, 0.12)));
    const long rb = ctx.rbar();
    int bad = 0, total = 0;
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = 0; j < reps.size(); ++j)
            for (long kk : {-rb, 0L, rb})
                for (long kp : {-rb, 0L, rb}) {
                    const int expected = (i == j && kk == kp) ? 1 : 0;
                    ++total;
                    bad += sphere_hom_dim(ctx, reps[i], reps[j], kk, kp) != expected;
                }
    return {"Hom-dimension lemma", bad == 0, std::to_string(total - bad) + "/" + std::to_string(total) + " entries"};
}

CheckLine state_spaces(const ScalarContext& ctx) {
    const Degree g(Scalar(0.3, 0.1)), mp(Scalar(0.7, -0.2));
    const auto rep = genus1_report(ctx, g);
    const int expected = ctx.rbar() / 2;
    const int tri = genus_n_dim(ctx, {2, g, {mp}}), direct = genus2_dim_direct(ctx, g, mp);
    return {"state spaces", rep.dimension == expected && rep.hom_sum == expected && tri == direct,
            "genus 1: " + std::to_string(rep.dimension) + " (Hom sum " + std::to_string(rep.hom_sum) + "), genus 2: " +
                std::to_string(tri) + " vs " + std::to_string(direct)};
}

CheckLine maslov() {
    std::mt19937_64 rng(20240611);
    int bad = 0;
    std::array<int, 3> idx{0, 1, 2};
    for (int t = 0; t < 100; ++t) {
        const int n = 1 + t % 3;
        const SymplecticSpace h = standard_symplectic(n);
        const std::array<Subspace, 3> l = {random_lagrangian(n, rng), random_lagrangian(n, rng), random_lagrangian(n, rng)};
        const int base = maslov_index(h, l[0], l[1], l[2]);
        idx = {0, 1, 2};
        do {
            int inversions = (idx[0] > idx[1]) + (idx[0] > idx[2]) + (idx[1] > idx[2]);
            const int sgn = inversions % 2 ? -1 : 1;
            bad += maslov_index(h, l[idx[0]], l[idx[1]], l[idx[2]]) != sgn * base;
        } while (std::next_permutation(idx.begin(), idx.end()));
        bad += maslov_index(h, l[0], l[0], l[1]) != 0;
    }
    for (int t = 0; t < 50; ++t) {
        const int n = 2 + t % 2;
        const SymplecticSpace h = standard_symplectic(n);
        const Subspace l = random_lagrangian(n, rng);
        const Subspace a = random_lagrangian(n, rng).leftCols(1 + t % (n - 1));
        const auto c = contract(h, l, a);
        bad += !is_lagrangian(c.quotient, orthonormal_span(c.basis));
    }
    return {"Maslov suite", bad == 0, std::to_string(bad) + " failures"};
}

}  // namespace

std::vector<CheckLine> run_checks(int r, unsigned precision, double tol, int jobs) {
    const ScalarContext ctx(r, precision, tol);
    const EvalOptions opts{jobs};
    const InvariantConstants k = default_constants(ctx, opts);
    std::vector<std::function<CheckLine()>> suites = {
        [&] { return relations(ctx); },      [&] { return constants(ctx, opts); },
        [&] { return modularity(ctx, opts); }, [&] { return renormalized(ctx); },
        [&] { return surgery_axioms(ctx, k); }, [&] { return kirby(ctx, opts); },
        [&] { return stabilization(ctx, k); }, [&] { return hom_lemma(ctx); },
        [&] { return state_spaces(ctx); },   [] { return maslov(); },
    };
    std::vector<CheckLine> out;
    for (const auto& suite : suites) {
        try {
            out.push_back(suite());
        } catch (const Error& e) {
            out.push_back({"suite error", false, std::string(error_kind_name(e.kind())) + ": " + e.what()});
        }
    }
    return out;
}

}  // namespace cgp::cli
