// Acceptance criteria: one PASS/FAIL line per criterion, at pinned tolerances.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include "cgp/builders.hpp"
#include "cgp/constants.hpp"
#include "cgp/errors.hpp"
#include "cgp/fixtures.hpp"
#include "cgp/json_io.hpp"
#include "cgp/maslov.hpp"
#include "cgp/statespace.hpp"
#include "oracles.hpp"

using namespace cgp;
using oracle::C;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
}

/// Five seeded generic highest weights.
std::vector<C> random_alphas(unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> re(0.05, 0.95), im(-0.4, 0.4);
    std::uniform_int_distribution<int> shift(-2, 2);
    std::vector<C> out;
    for (int i = 0; i < 5; ++i) out.emplace_back(re(rng) + shift(rng), im(rng));
    return out;
}

C moddim_oracle(int r, C alpha) {
    const int l = r / 2;
    const C m = alpha - static_cast<double>(l - 1);
    return static_cast<double>(l) * oracle::brace(r, m) / oracle::brace(r, static_cast<double>(l) * m);
}

C seifert_alexander(const std::array<double, 4>& v, C t) {
    const C a = v[0] - t * v[0], b = v[1] - t * v[2], c = v[2] - t * v[1], d = v[3] - t * v[3];
    return (a * d - b * c) / t;
}

// 1. Algebra relations.
Verdict algebra_relations() {
    double worst = 0.0;
    int count = 0;
    for (int r : {4, 6}) {
        const ScalarContext ctx(r);
        std::vector<WeightModule> mods;
        for (C a : random_alphas(1)) {
            mods.push_back(typical_module(ctx, a));
            mods.push_back(dual_module(ctx, mods.back()));
        }
        for (long k = -2; k <= 2; ++k) mods.push_back(sigma_module(ctx, k * ctx.rbar()));
        mods.push_back(tensor_module(mods[0], mods[3]));
        mods.push_back(tensor_module(mods[1], mods[11]));
        for (const auto& m : mods) worst = std::max(worst, relation_residuals(ctx, m).worst());
        count += static_cast<int>(mods.size());
    }
    return {worst <= 1e-9, std::to_string(count) + " modules, worst residual " + sci(worst)};
}

// 2. Constants identity.
Verdict constants_identity() {
    bool pass = true;
    std::ostringstream d;
    for (auto [r, zz] : {std::pair{4, 2}, std::pair{6, 1}}) {
        const ScalarContext ctx(r);
        const auto k1 = compute_constants(ctx, Degree(C(0.29, 0.07)), C(0.37, 0.11));
        const auto k2 = compute_constants(ctx, Degree(C(0.61, -0.2)), C(1.21, -0.3));
        const double ident = oracle::rel0(k1.delta_minus * k1.delta_plus, static_cast<double>(zz) * k1.zeta);
        const double probe = std::max(oracle::rel0(k1.delta_minus, k2.delta_minus), oracle::rel0(k1.delta_plus, k2.delta_plus));
        pass = pass && ident <= 1e-8 && probe <= 1e-8 && k1.z_mod_zplus == zz;
        d << "r=" << r << ": identity " << sci(ident) << ", probes " << sci(probe) << "; ";
    }
    return {pass, d.str()};
}

// 3. Relative modularity at r = 6.
Verdict relative_modularity() {
    const ScalarContext ctx(6);
    const auto reps = index_set(ctx, Degree(C(0.23, 0.05)));
    double diag = 0.0, off = 0.0;
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = 0; j < reps.size(); ++j) {
            const auto p = modularity_probe(ctx, reps[i], reps[j], Degree(C(0.61, -0.2)));
            (i == j ? diag : off) = std::max(i == j ? diag : off, p.norm);
        }
    return {diag > 0 && off <= 1e-8 * diag, std::to_string(reps.size() * reps.size()) + " pairs, off/diag " + sci(off / diag)};
}

// 4. Renormalized invariant.
Verdict renormalized_invariant() {
    double unknot_err = 0.0, cut_err = 0.0;
    for (int r : {4, 6}) {
        const ScalarContext ctx(r);
        for (C a : random_alphas(4))
            unknot_err = std::max(unknot_err, oracle::rel0(f_prime(ctx, unknot(Color::typical(a))), moddim_oracle(r, a)));
        const Diagram h = fixtures::hopf(C(0.37, 0.11), C(1.21, -0.3));
        cut_err = std::max(cut_err, oracle::rel0(f_prime(ctx, h, 0), f_prime(ctx, h, 1)));
    }
    return {unknot_err <= 1e-10 && cut_err <= 1e-9, "unknot vs closed form " + sci(unknot_err) + ", cut independence " + sci(cut_err)};
}

// 5. Surgery axioms.
Verdict surgery_axioms() {
    double i0 = 0.0, i1 = 0.0, i2 = 0.0;
    const C a(0.37, 0.11);
    for (int r : {4, 6}) {
        const ScalarContext ctx(r);
        const auto k = default_constants(ctx);
        const C ed = k.eta * moddim_oracle(r, a);
        i0 = std::max(i0, oracle::rel0(cgp::cgp(ctx, fixtures::s3_unknot(a)), ed));

        const auto attach = fixtures::s3_blowup(a, +1);
        SurgeryPresentation belt = attach;
        belt.diagram.edges[attach.surgery_components[0]] = kirby_color(ctx, attach.meridian_degrees[0]);
        belt.surgery_components.clear();
        belt.meridian_degrees.clear();
        belt.signature_defect = attach.signature_defect - linking_data(attach).signature;
        i2 = std::max(i2, oracle::rel0(cgp::cgp(ctx, attach) / cgp::cgp(ctx, belt), 1.0 / k.D));

        const Diagram t = fixtures::trefoil(a), f = fixtures::figure_eight(a);
        const C sum = cgp::cgp(ctx, {fixtures::edge_connected_sum(ctx, t, 0, f, 0), {}, {}, 0});
        const C prod = cgp::cgp(ctx, {t, {}, {}, 0}) * cgp::cgp(ctx, {f, {}, {}, 0});
        i1 = std::max(i1, oracle::rel0(sum / prod, 1.0 / ed));
    }
    return {std::max({i0, i1, i2}) <= 1e-8,
            "index 0 " + sci(i0) + ", index 1 " + sci(i1) + ", index 2 " + sci(i2)};
}

// 6. Kirby invariance.
Verdict kirby_invariance() {
    double worst = 0.0;
    bool pass = true;
    for (int r : {4, 6}) {
        const ScalarContext ctx(r);
        const auto rep = kirby_equivalence_suite(ctx, fixtures::kirby_pairs(C(0.37, 0.11)), 1e-7);
        for (const auto& d : rep.deviations) worst = std::max(worst, d.second);
        pass = pass && rep.pass;
    }
    const ScalarContext ctx(6);
    double gap = 0.0;
    for (int j = 1; j <= 4; ++j)
        gap = std::max(gap, std::abs(cgp::cgp(ctx, fixtures::lens51_hopf(0.4 * j)) - cgp::cgp(ctx, fixtures::lens52_hopf(0.4 * j))));
    return {pass && worst <= 1e-7 && gap > 1e-3, "worst pair " + sci(worst) + ", L(5,1) vs L(5,2) gap " + sci(gap)};
}

// 7. Stabilization invariance.
Verdict stabilization_invariance() {
    double worst = 0.0;
    const C a(0.37, 0.11);
    for (int r : {4, 6}) {
        const ScalarContext ctx(r);
        const auto k = default_constants(ctx);
        const auto reps = index_set(ctx, Degree(C(0.29, 0.07)));
        const std::pair<SurgeryPresentation, int> cases[] = {{fixtures::s3_unknot(a), 1},
                                                             {fixtures::s1s2_meridians(a, C(0.43, -0.09)), 3}};
        for (const auto& [p, level] : cases) {
            const C base = cgp::cgp(ctx, p);
            for (const auto& ai : reps) {
                SurgeryPresentation proj = p;
                proj.diagram = stabilize_projective(ctx, p.diagram, level, 0, ai);
                worst = std::max(worst, oracle::rel0(cgp::cgp(ctx, proj), base));
            }
            worst = std::max(worst, oracle::rel0(cgp::cgp(ctx, stabilize_generic(ctx, p, 1, 0, 1, k)), base));
        }
    }
    return {worst <= 1e-8, "worst relative change " + sci(worst)};
}

// 8. Hom-dimension lemma.
Verdict hom_dimension_lemma() {
    int bad = 0, total = 0;
    for (int r : {4, 6}) {
        const ScalarContext ctx(r);
        const auto reps = index_set(ctx, Degree(C(0.31, 0.12)));
        const long rb = ctx.rbar();
        for (std::size_t i = 0; i < reps.size(); ++i)
            for (std::size_t j = 0; j < reps.size(); ++j)
                for (long k : {-rb, 0L, rb})
                    for (long k2 : {-rb, 0L, rb}) {
                        ++total;
                        bad += sphere_hom_dim(ctx, reps[i], reps[j], k, k2) != ((i == j && k == k2) ? 1 : 0);
                    }
    }
    return {bad == 0, std::to_string(total - bad) + "/" + std::to_string(total) + " entries match"};
}

// 9. State spaces.
Verdict state_spaces() {
    const Degree g(C(0.3, 0.1)), mp(C(0.7, -0.2));
    const auto r4 = genus1_report(ScalarContext(4), g);
    const auto r6 = genus1_report(ScalarContext(6), g);
    const int tri = genus_n_dim(ScalarContext(4), {2, g, {mp}});
    const int direct = genus2_dim_direct(ScalarContext(4), g, mp);
    const bool pass = r4.dimension == 1 && r4.hom_sum == 1 && r6.dimension == 3 && r6.hom_sum == 3 && tri == direct;
    return {pass, "genus 1: r=4 " + std::to_string(r4.dimension) + "/" + std::to_string(r4.hom_sum) + ", r=6 " +
                      std::to_string(r6.dimension) + "/" + std::to_string(r6.hom_sum) + "; genus 2 at r=4: " +
                      std::to_string(tri) + " vs " + std::to_string(direct)};
}

// 10. Alexander polynomial at r = 4.
Verdict alexander() {
    const ScalarContext ctx(4);
    double tre = 0.0, fig = 0.0, unk = 0.0;
    for (C a : random_alphas(10)) {
        const C t = oracle::qpow(4, 2.0 * a), d = moddim_oracle(4, a);
        unk = std::max(unk, oracle::rel(f_prime(ctx, unknot(Color::typical(a))) / d, 1.0));
        fig = std::max(fig, oracle::rel(f_prime(ctx, fixtures::figure_eight(a)) / d, seifert_alexander({1, 1, 0, -1}, t)));
        tre = std::max(tre, oracle::rel(f_prime(ctx, fixtures::trefoil(a)) / d, seifert_alexander({-1, 1, 0, -1}, t)));
    }
    return {std::max({tre, fig, unk}) <= 1e-6,
            "F'/d = t^-1 det(V - tV^T), t = q^(2 alpha): trefoil " + sci(tre) + ", figure-eight " + sci(fig) +
                ", unknot " + sci(unk)};
}

// 11. Maslov suite.
Verdict maslov_suite() {
    std::mt19937_64 rng(2024);
    int bad = 0;
    for (int t = 0; t < 100; ++t) {
        const int n = 1 + t % 3;
        const auto h = standard_symplectic(n);
        const std::array<Subspace, 3> l = {random_lagrangian(n, rng), random_lagrangian(n, rng), random_lagrangian(n, rng)};
        const int base = maslov_index(h, l[0], l[1], l[2]);
        std::array<int, 3> p{0, 1, 2};
        do {
            const int inv = (p[0] > p[1]) + (p[0] > p[2]) + (p[1] > p[2]);
            bad += maslov_index(h, l[p[0]], l[p[1]], l[p[2]]) != (inv % 2 ? -base : base);
        } while (std::next_permutation(p.begin(), p.end()));
        bad += maslov_index(h, l[0], l[0], l[2]) != 0;
    }
    for (int t = 0; t < 50; ++t) {
        const int n = 2 + t % 2;
        const auto h = standard_symplectic(n);
        const Subspace b = random_lagrangian(n, rng), a = random_lagrangian(n, rng).leftCols(1 + t % (n - 1));
        const auto c = contract(h, b, a);
        bad += !is_lagrangian(c.quotient, orthonormal_span(c.basis));
    }
    RealMatrix l0(2, 1), l1(2, 1), l2(2, 1);
    l0 << 1, 0;
    l1 << std::sqrt(0.5), std::sqrt(0.5);
    l2 << 0, 1;
    const int fixture = maslov_index(standard_symplectic(1), l0, l1, l2);
    return {bad == 0, std::to_string(bad) + " failures; mu(L_0, L_pi/4, L_pi/2) = " + std::to_string(fixture)};
}

// 12. Determinism and exit codes of the command-line tool.
int run_cli(const std::string& args, std::string* out) {
    const std::string cmd = std::string(CGP_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return -1;
    std::array<char, 4096> buf;
    std::size_t n;
    if (out) out->clear();
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0)
        if (out) out->append(buf.data(), n);
    const int status = pclose(p);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Verdict cli_contract() {
    const fs::path dir = fs::temp_directory_path() / "cgp-acceptance";
    fs::create_directories(dir);
    auto put = [&](const std::string& name, const std::string& text) {
        std::ofstream(dir / name) << text;
        return (dir / name).string();
    };
    const std::string good = put("lens.json", dump_canonical(input_to_json({6, 53, fixtures::lens51_slide(0.8)})));
    std::string o1, o2, o3;
    const int c1 = run_cli("cgp " + good, &o1), c2 = run_cli("cgp " + good, &o2);
    const int c3 = run_cli("--jobs 4 cgp " + good, &o3);
    const bool same = c1 == 0 && c2 == 0 && c3 == 0 && o1 == o2 && o1 == o3 && !o1.empty();

    const int e1 = run_cli("cgp " + put("truncated.json", "{\"level\": 6, \"presentation\": "), nullptr);
    const int e2 = run_cli("cgp " + put("odd.json", "{\"level\": 7, \"presentation\": {}}"), nullptr);
    const int e3 = run_cli("cgp " + put("dangling.json", R"({"level": 6, "presentation": {"diagram": {"edges": [],
        "slices": [{"cells": [{"kind": "cup_left", "pos": 0, "edge": 0}]}]}}})"), nullptr);
    const std::string crit = put("critical.json",
                                 dump_canonical(input_to_json({4, 53, fixtures::s1s2_meridians(C(0.37, 0.11), 0.0)})));
    const int e4 = run_cli("cgp " + crit, nullptr);
    const bool codes = e1 == 2 && e2 == 2 && e3 == 2 && e4 == 3;
    return {same && codes, std::string(same ? "byte-identical repeats" : "outputs differ") + "; exit codes " +
                               std::to_string(e1) + "," + std::to_string(e2) + "," + std::to_string(e3) +
                               " (expect 2,2,2), critical " + std::to_string(e4) + " (expect 3)"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
        {"algebra relations (r=4,6, tol 1e-9)", algebra_relations},
        {"constants identity Delta_-Delta_+ = |Z/Z+| zeta (1e-8)", constants_identity},
        {"relative modularity at r=6 (1e-8)", relative_modularity},
        {"renormalized invariant F' (1e-10, cut 1e-9)", renormalized_invariant},
        {"surgery axioms index 0/1/2 (1e-8)", surgery_axioms},
        {"Kirby invariance and lens-space separation (1e-7, 1e-3)", kirby_invariance},
        {"stabilization invariance (1e-8)", stabilization_invariance},
        {"Hom-dimension lemma (exact)", hom_dimension_lemma},
        {"state-space dimensions (exact)", state_spaces},
        {"Alexander cross-check at r=4 (1e-6)", alexander},
        {"Maslov suite", maslov_suite},
        {"CLI determinism and exit codes", cli_contract},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2fs", secs);
        std::cout << (v.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << ": " << v.detail
                  << " [" << timing << "]\n";
        failed += !v.pass;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
