#include "cgp/surgery.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "cgp/errors.hpp"

namespace cgp {

namespace {

using i128 = __int128;

/// Characteristic polynomial coefficients c_0..c_n (c_n = 1), Faddeev-LeVerrier in exact integers.
std::vector<i128> char_poly(const std::vector<std::vector<long>>& a) {
    const std::size_t n = a.size();
    std::vector<std::vector<i128>> m(n, std::vector<i128>(n, 0)), am(n, std::vector<i128>(n, 0));
    std::vector<i128> c(n + 1, 0);
    c[n] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        // M_k = A M_{k-1} + c_{n-k+1} I
        std::vector<std::vector<i128>> next(n, std::vector<i128>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                i128 s = 0;
                for (std::size_t t = 0; t < n; ++t) s += static_cast<i128>(a[i][t]) * m[t][j];
                next[i][j] = s + (i == j ? c[n - k + 1] : 0);
            }
        m = next;
        i128 tr = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t t = 0; t < n; ++t) tr += static_cast<i128>(a[i][t]) * m[t][i];
        c[n - k] = -tr / static_cast<i128>(k);
    }
    return c;
}

int sign_changes(const std::vector<i128>& seq) {
    int changes = 0, last = 0;
    for (const auto& v : seq) {
        const int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

/// Number of closed curves traced by each edge (letters joined through cells).
std::vector<int> loops_per_edge(const Diagram& d) {
    const auto words = slice_words(d);
    std::vector<int> offset(words.size() + 1, 0);
    for (std::size_t k = 0; k < words.size(); ++k) offset[k + 1] = offset[k] + static_cast<int>(words[k].size());
    std::vector<int> parent(offset.back());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    for (std::size_t k = 0; k < d.cells.size(); ++k) {
        const Cell& c = d.cells[k];
        const int lo = offset[k], hi = offset[k + 1];
        const int arity = cell_arity_in(c);
        const int nout = static_cast<int>(words[k + 1].size()) - (static_cast<int>(words[k].size()) - arity);
        for (int p = 0; p < c.pos; ++p) unite(lo + p, hi + p);
        for (int p = c.pos + arity; p < static_cast<int>(words[k].size()); ++p) unite(lo + p, hi + p - arity + nout);
        switch (c.kind) {
            case CellKind::XPos:
            case CellKind::XNeg:
                unite(lo + c.pos, hi + c.pos + 1);
                unite(lo + c.pos + 1, hi + c.pos);
                break;
            case CellKind::CupL:
            case CellKind::CupR: unite(hi + c.pos, hi + c.pos + 1); break;
            case CellKind::CapL:
            case CellKind::CapR: unite(lo + c.pos, lo + c.pos + 1); break;
            case CellKind::Coupon: break;  // strands end at the coupon
        }
    }
    std::vector<std::vector<int>> roots(d.num_edges());
    for (std::size_t k = 0; k < words.size(); ++k)
        for (std::size_t p = 0; p < words[k].size(); ++p)
            roots[words[k][p].edge].push_back(find(offset[k] + static_cast<int>(p)));
    std::vector<int> out(d.num_edges(), 0);
    for (int e = 0; e < d.num_edges(); ++e) {
        auto& r = roots[e];
        std::sort(r.begin(), r.end());
        out[e] = static_cast<int>(std::unique(r.begin(), r.end()) - r.begin());
    }
    return out;
}

std::vector<Scalar> edge_degrees(const SurgeryPresentation& p) {
    std::vector<Scalar> deg(p.diagram.num_edges(), Scalar(0.0, 0.0));
    for (int e = 0; e < p.diagram.num_edges(); ++e)
        if (const auto* c = std::get_if<Color>(&p.diagram.edges[e])) deg[e] = c->degree();
        else if (const auto* f = std::get_if<FormalColorSum>(&p.diagram.edges[e])) deg[e] = f->degree.value();
    for (std::size_t i = 0; i < p.surgery_components.size(); ++i)
        deg.at(p.surgery_components[i]) = p.meridian_degrees.at(i).value();
    return deg;
}

}  // namespace

LinkingData signature_of(const std::vector<std::vector<long>>& m) {
    LinkingData ld;
    ld.matrix = m;
    const std::size_t n = m.size();
    if (n == 0) return ld;
    if (n <= 12) {
        const auto c = char_poly(m);
        std::size_t z = 0;
        while (z < n && c[z] == 0) ++z;
        // Real-rooted polynomial: Descartes' rule is exact.
        std::vector<i128> pos(c.begin() + z, c.end()), neg = pos;
        for (std::size_t i = 0; i < neg.size(); ++i)
            if ((i + z) % 2 == 1) neg[i] = -neg[i];
        ld.positive = sign_changes(pos);
        ld.negative = sign_changes(neg);
    } else {
        RealMatrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) = static_cast<double>(m[i][j]);
        Eigen::SelfAdjointEigenSolver<RealMatrix> es(a);
        const double thr = 1e-9 * std::max(1.0, a.cwiseAbs().maxCoeff());
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
            if (es.eigenvalues()(i) > thr) ++ld.positive;
            if (es.eigenvalues()(i) < -thr) ++ld.negative;
        }
    }
    ld.signature = ld.positive - ld.negative;
    return ld;
}

LinkingData linking_data(const SurgeryPresentation& p) {
    const std::size_t n = p.surgery_components.size();
    std::vector<int> index(p.diagram.num_edges(), -1);
    for (std::size_t i = 0; i < n; ++i) index.at(p.surgery_components[i]) = static_cast<int>(i);
    std::vector<std::vector<long>> twice(n, std::vector<long>(n, 0));
    for (const auto& x : crossings(p.diagram)) {
        const int i = index[x.over_edge], j = index[x.under_edge];
        if (i < 0 || j < 0) continue;
        if (i == j) {
            twice[i][i] += 2 * x.sign;
        } else {
            twice[i][j] += x.sign;
            twice[j][i] += x.sign;
        }
    }
    std::vector<std::vector<long>> lk(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (twice[i][j] % 2 != 0) throw Error(ErrorKind::InvalidDiagram, "odd crossing count between closed components");
            lk[i][j] = twice[i][j] / 2;
        }
    return signature_of(lk);
}

std::vector<int> check_computable(const ScalarContext& ctx, const SurgeryPresentation& p) {
    std::vector<int> bad;
    for (std::size_t i = 0; i < p.meridian_degrees.size(); ++i)
        if (p.meridian_degrees[i].is_critical(ctx.tol())) bad.push_back(static_cast<int>(i));
    return bad;
}

std::vector<Scalar> consistency_residuals(const SurgeryPresentation& p) {
    const auto deg = edge_degrees(p);
    std::vector<int> index(p.diagram.num_edges(), -1);
    for (std::size_t i = 0; i < p.surgery_components.size(); ++i) index.at(p.surgery_components[i]) = static_cast<int>(i);
    std::vector<Scalar> res(p.surgery_components.size(), Scalar(0.0, 0.0));
    for (const auto& x : crossings(p.diagram)) {
        const int i = index[x.under_edge];
        if (i >= 0) res[i] += static_cast<double>(x.sign) * deg[x.over_edge];
    }
    return res;
}

void require_consistent(const ScalarContext& ctx, const SurgeryPresentation& p) {
    const auto res = consistency_residuals(p);
    for (std::size_t i = 0; i < res.size(); ++i) {
        if (!is_zero_mod2(res[i], 1e3 * ctx.tol())) {
            std::ostringstream msg;
            msg << "meridian degrees are inconsistent on surgery component " << i << " (edge "
                << p.surgery_components[i] << "): residual " << res[i] << " is not in 2Z";
            throw Error(ErrorKind::InvalidDiagram, msg.str());
        }
    }
}

void require_well_formed(const ScalarContext& ctx, const SurgeryPresentation& p) {
    const Diagram& d = p.diagram;
    if (p.meridian_degrees.size() != p.surgery_components.size())
        throw Error(ErrorKind::ParseError, "one meridian degree is required per surgery component");
    require_valid(ctx, d);
    if (!is_closed(d)) throw Error(ErrorKind::InvalidDiagram, "surgery presentations need a closed diagram");
    std::vector<bool> is_surgery(d.num_edges(), false);
    for (int e : p.surgery_components) {
        if (e < 0 || e >= d.num_edges()) throw Error(ErrorKind::ParseError, "surgery component refers to an unknown edge");
        if (is_surgery[e]) throw Error(ErrorKind::ParseError, "surgery component listed twice");
        is_surgery[e] = true;
    }
    const auto words = slice_words(d);
    for (std::size_t k = 0; k < d.cells.size(); ++k) {
        const Cell& c = d.cells[k];
        if (c.kind != CellKind::Coupon) continue;
        for (int i = 0; i < c.n_in; ++i)
            if (is_surgery[words[k][c.pos + i].edge])
                throw Error(ErrorKind::InvalidDiagram, "a surgery component enters a coupon");
        for (const auto& l : c.out)
            if (is_surgery[l.edge]) throw Error(ErrorKind::InvalidDiagram, "a surgery component leaves a coupon");
    }
    const auto loops = loops_per_edge(d);
    for (int e : p.surgery_components)
        if (loops[e] != 1)
            throw Error(ErrorKind::InvalidDiagram, "surgery edge " + std::to_string(e) + " is not a single knot");
    for (int e = 0; e < d.num_edges(); ++e)
        if (!is_surgery[e] && std::holds_alternative<Uncolored>(d.edges[e]))
            throw Error(ErrorKind::ParseError, "graph edge " + std::to_string(e) + " has no color");
}

Diagram kirby_colored(const ScalarContext& ctx, const SurgeryPresentation& p) {
    Diagram d = p.diagram;
    for (std::size_t i = 0; i < p.surgery_components.size(); ++i)
        d.edges.at(p.surgery_components[i]) = kirby_color(ctx, p.meridian_degrees[i]);
    return d;
}

CgpResult cgp_full(const ScalarContext& ctx, const SurgeryPresentation& p, const InvariantConstants& k,
                   const EvalOptions& opts) {
    require_well_formed(ctx, p);
    require_consistent(ctx, p);
    const auto bad = check_computable(ctx, p);
    if (!bad.empty()) {
        std::ostringstream msg;
        msg << "critical meridian degree on surgery component(s)";
        for (int i : bad) msg << " " << i;
        throw Error(ErrorKind::NotComputable, msg.str());
    }
    CgpResult out;
    out.constants = k;
    const LinkingData lk = linking_data(p);
    out.ell = static_cast<int>(p.surgery_components.size());
    out.sigma = lk.signature;

    Diagram colored = kirby_colored(ctx, p);
    const Scalar prefactor = colored.prefactor;
    colored.prefactor = Scalar(1.0, 0.0);
    std::vector<int> surgery_index(colored.num_edges(), -1);
    for (std::size_t i = 0; i < p.surgery_components.size(); ++i)
        surgery_index[p.surgery_components[i]] = static_cast<int>(i);

    const auto piece = split_pieces(colored);
    const int npieces = colored.num_edges() == 0 ? 0 : *std::max_element(piece.begin(), piece.end()) + 1;
    if (npieces == 0) throw Error(ErrorKind::NotAdmissible, "empty presentation has no projective edge");
    out.pieces = npieces;
    Scalar value = prefactor * std::pow(k.delta, p.signature_defect);
    for (int q = 0; q < npieces; ++q) {
        std::vector<int> edges, comps;
        for (int e = 0; e < colored.num_edges(); ++e)
            if (piece[e] == q) {
                edges.push_back(e);
                if (surgery_index[e] >= 0) comps.push_back(surgery_index[e]);
            }
        std::vector<int> map;
        const Diagram sub = sub_diagram(colored, edges, &map);
        // Prefer a typical graph edge for the cut, else any surgery edge.
        std::optional<int> cut_edge;
        for (int e : edges)
            if (surgery_index[e] < 0 && std::holds_alternative<Color>(colored.edges[e]) &&
                std::get<Color>(colored.edges[e]).is_typical()) {
                cut_edge = map[e];
                break;
            }
        for (int e : edges)
            if (!cut_edge && surgery_index[e] < 0 && std::holds_alternative<FormalColorSum>(colored.edges[e]))
                cut_edge = map[e];
        if (!cut_edge && !comps.empty()) cut_edge = map[p.surgery_components[comps[0]]];
        if (!cut_edge) {
            std::ostringstream msg;
            msg << "split piece " << q << " has neither a typical edge nor a surgery component";
            throw Error(ErrorKind::NotAdmissible, msg.str());
        }
        std::vector<std::vector<long>> sublk(comps.size(), std::vector<long>(comps.size()));
        for (std::size_t a = 0; a < comps.size(); ++a)
            for (std::size_t b = 0; b < comps.size(); ++b) sublk[a][b] = lk.matrix[comps[a]][comps[b]];
        const int sigma_p = signature_of(sublk).signature;
        const Scalar fp = f_prime(ctx, sub, cut_edge, opts);
        value *= k.eta * std::pow(k.D, -static_cast<int>(comps.size())) * std::pow(k.delta, -sigma_p) * fp;
    }
    if (npieces > 1) {
        std::ostringstream msg;
        msg << "diagram splits into " << npieces << " pieces; evaluated as a disjoint union of manifolds";
        out.warnings.push_back(msg.str());
    }
    out.value = value;
    return out;
}

Scalar cgp(const ScalarContext& ctx, const SurgeryPresentation& p, const EvalOptions& opts) {
    return cgp_full(ctx, p, default_constants(ctx, opts), opts).value;
}

KirbyReport kirby_equivalence_suite(const ScalarContext& ctx, const std::vector<KirbyPair>& pairs, double tol,
                                    const EvalOptions& opts) {
    KirbyReport rep;
    const InvariantConstants k = default_constants(ctx, opts);
    for (const auto& pr : pairs) {
        const Scalar a = cgp_full(ctx, pr.first, k, opts).value;
        const Scalar b = cgp_full(ctx, pr.second, k, opts).value;
        const double dev = std::abs(a - b) / std::max({1e-300, std::abs(a), std::abs(b)});
        rep.deviations.emplace_back(pr.name, dev);
        if (!(dev <= tol)) rep.pass = false;
    }
    return rep;
}

}  // namespace cgp
