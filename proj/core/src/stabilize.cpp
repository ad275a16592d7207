#include "cgp/stabilize.hpp"

#include <algorithm>
#include <sstream>

#include "cgp/builders.hpp"
#include "cgp/errors.hpp"

namespace cgp {

namespace {

Cell make_cell(CellKind k, int pos, int edge = -1) {
    Cell c;
    c.kind = k;
    c.pos = pos;
    c.edge = edge;
    return c;
}

bool is_crossing(CellKind k) { return k == CellKind::XPos || k == CellKind::XNeg; }

/// Degree carried by each edge, with surgery edges at their meridian degrees.
std::vector<Scalar> degrees_of(const SurgeryPresentation& p) {
    std::vector<Scalar> deg(p.diagram.num_edges(), Scalar(0.0, 0.0));
    for (int e = 0; e < p.diagram.num_edges(); ++e) {
        if (const auto* c = std::get_if<Color>(&p.diagram.edges[e])) deg[e] = c->degree();
        if (const auto* f = std::get_if<FormalColorSum>(&p.diagram.edges[e])) deg[e] = f->degree.value();
    }
    for (std::size_t i = 0; i < p.surgery_components.size(); ++i)
        deg.at(p.surgery_components[i]) = p.meridian_degrees.at(i).value();
    return deg;
}

}  // namespace

Matrix section_map(const ScalarContext& ctx, const SignedColor& u, Scalar alpha_i) {
    if (!u.color.is_typical()) throw Error(ErrorKind::NotProjective, "section map needs a typical object U");
    const SignedColor vi{+1, Color::typical(alpha_i)}, vi_dual{-1, Color::typical(alpha_i)};
    const auto basis = hom_basis(ctx, ObjectWord{u}, ObjectWord{u, vi, vi_dual});
    const WeightModule um = signed_module(ctx, u);
    const Matrix ev = duality_map(ctx, typical_module(ctx, alpha_i), Duality::EvRight);
    const Matrix close = kron(Matrix::Identity(um.dim, um.dim), ev);
    // Each composite is an endomorphism of the simple U, hence a scalar a_k.
    std::vector<Scalar> a;
    double norm2 = 0.0;
    for (const auto& h : basis) {
        a.push_back(scalar_of(close * h, 1e3 * ctx.tol(), "section composite"));
        norm2 += std::norm(a.back());
    }
    if (basis.empty() || norm2 <= ctx.tol() * ctx.tol())
        throw Error(ErrorKind::NoSection, "no morphism U -> U (x) V_i (x) V_i^* splits ev_right");
    Matrix s = Matrix::Zero(basis.front().rows(), basis.front().cols());
    for (std::size_t k = 0; k < basis.size(); ++k) s += (std::conj(a[k]) / norm2) * basis[k];
    const Matrix residual = close * s - Matrix::Identity(um.dim, um.dim);
    if (max_abs(residual) > 1e3 * ctx.tol())
        throw Error(ErrorKind::NoSection, "section residual too large");
    return s;
}

Diagram stabilize_projective(const ScalarContext& ctx, const Diagram& d, int level, int pos, Scalar alpha_i,
                             int* new_edge) {
    const auto words = slice_words(d);
    if (level < 0 || level >= static_cast<int>(words.size()) || pos < 0 ||
        pos >= static_cast<int>(words[level].size()))
        throw Error(ErrorKind::InvalidDiagram, "stabilization site out of range");
    const Letter u = words[level][pos];
    const auto* color = std::get_if<Color>(&d.edges[u.edge]);
    if (!color || !color->is_typical())
        throw Error(ErrorKind::NotProjective, "projective stabilization needs a typical-colored edge");
    if (!is_typical(ctx, alpha_i)) throw Error(ErrorKind::NonTypicalColor, "stabilization color is not typical");
    Diagram out = d;
    out.edges.push_back(Color::typical(alpha_i));
    const int v = out.num_edges() - 1;
    Cell coupon = make_cell(CellKind::Coupon, pos);
    coupon.n_in = 1;
    coupon.out = {u, Letter{+1, v}, Letter{-1, v}};
    coupon.matrix = section_map(ctx, SignedColor{u.sign, *color}, alpha_i);
    out = splice(out, level, {coupon, make_cell(CellKind::CapR, pos + 1)});
    if (new_edge) *new_edge = v;
    return out;
}

SurgeryPresentation stabilize_generic(const ScalarContext& ctx, const SurgeryPresentation& p, int level, int from,
                                      int to, const InvariantConstants& k) {
    const auto words = slice_words(p.diagram);
    if (level < 0 || level >= static_cast<int>(words.size()))
        throw Error(ErrorKind::InvalidDiagram, "stabilization level out of range");
    const Word& w = words[level];
    if (from < 0 || to <= from || to > static_cast<int>(w.size()))
        throw Error(ErrorKind::InvalidDiagram, "stabilization corridor out of range");
    const auto deg = degrees_of(p);
    Scalar enclosed(0.0, 0.0);
    for (int i = from; i < to; ++i) enclosed += static_cast<double>(w[i].sign) * deg[w[i].edge];
    if (Degree(enclosed).is_critical(ctx.tol()))
        throw Error(ErrorKind::CriticalDegree, "generic stabilization needs a corridor of generic degree");

    SurgeryPresentation out = p;
    Diagram& d = out.diagram;
    d.edges.push_back(Uncolored{});
    const int lminus = d.num_edges() - 1;
    d.edges.push_back(Uncolored{});
    const int lplus = d.num_edges() - 1;
    std::vector<Cell> cells = meridian_cells(static_cast<int>(w.size()), from, to, lminus, -1);
    const auto more = meridian_cells(static_cast<int>(w.size()), from, to, lplus, +1);
    cells.insert(cells.end(), more.begin(), more.end());
    d = splice(d, level, cells);

    // Each circle takes the degree its longitude constraint assigns (framing +-1).
    SurgeryPresentation probe = out;
    probe.surgery_components.push_back(lminus);
    probe.surgery_components.push_back(lplus);
    probe.meridian_degrees.push_back(Degree(Scalar(0.0, 0.0)));
    probe.meridian_degrees.push_back(Degree(Scalar(0.0, 0.0)));
    const auto res = consistency_residuals(probe);
    const std::size_t n = p.surgery_components.size();
    // f x + res = 0 with f = -1 for L_- and f = +1 for L_+.
    const Scalar xminus = res[n], xplus = -res[n + 1];
    d.edges[lminus] = kirby_color(ctx, Degree(xminus));
    d.edges[lplus] = kirby_color(ctx, Degree(xplus));
    d.prefactor *= 1.0 / (k.delta_minus * k.delta_plus);
    return out;
}

Diagram cable_parallel(const Diagram& d, const std::vector<int>& knots, int parallel_edge) {
    std::vector<bool> doubled(d.num_edges(), false);
    for (int e : knots) doubled.at(e) = true;
    auto expand = [&](const Word& w) {
        Word out;
        for (const auto& l : w) {
            if (!doubled[l.edge]) {
                out.push_back(l);
            } else if (l.sign > 0) {
                out.push_back({+1, parallel_edge});
                out.push_back(l);
            } else {
                out.push_back(l);
                out.push_back({-1, parallel_edge});
            }
        }
        return out;
    };
    auto newpos = [&](const Word& w, int p) {
        int n = p;
        for (int i = 0; i < p; ++i) n += doubled[w[i].edge] ? 1 : 0;
        return n;
    };
    auto width = [&](const Letter& l) { return doubled[l.edge] ? 2 : 1; };

    Diagram out;
    out.source = expand(d.source);
    out.edges = d.edges;
    out.prefactor = d.prefactor;
    const auto words = slice_words(d);
    for (std::size_t k = 0; k < d.cells.size(); ++k) {
        const Cell& c = d.cells[k];
        const Word& w = words[k];
        const int n = newpos(w, c.pos);
        if (is_crossing(c.kind)) {
            const int wa = width(w[c.pos]), wb = width(w[c.pos + 1]);
            // Move each letter of the right block left past the whole left block.
            for (int j = 0; j < wb; ++j)
                for (int i = wa - 1; i >= 0; --i) out.cells.push_back(make_cell(c.kind, n + i + j));
            continue;
        }
        switch (c.kind) {
            case CellKind::CupL:
                if (doubled[c.edge]) {
                    out.cells.push_back(make_cell(CellKind::CupL, n, parallel_edge));
                    out.cells.push_back(make_cell(CellKind::CupL, n + 1, c.edge));
                } else {
                    out.cells.push_back(make_cell(CellKind::CupL, n, c.edge));
                }
                break;
            case CellKind::CupR:
                if (doubled[c.edge]) {
                    out.cells.push_back(make_cell(CellKind::CupR, n, c.edge));
                    out.cells.push_back(make_cell(CellKind::CupR, n + 1, parallel_edge));
                } else {
                    out.cells.push_back(make_cell(CellKind::CupR, n, c.edge));
                }
                break;
            case CellKind::CapL:
            case CellKind::CapR:
                if (doubled[w[c.pos].edge]) {
                    out.cells.push_back(make_cell(c.kind, n + 1));
                    out.cells.push_back(make_cell(c.kind, n));
                } else {
                    out.cells.push_back(make_cell(c.kind, n));
                }
                break;
            case CellKind::Coupon: {
                for (int i = 0; i < c.n_in; ++i)
                    if (doubled[w[c.pos + i].edge])
                        throw Error(ErrorKind::InvalidDiagram, "cabled knot enters a coupon");
                Cell cc = c;
                cc.pos = n;
                out.cells.push_back(cc);
                break;
            }
            default: break;
        }
    }
    return out;
}

std::vector<StackedSite> find_stacked_sites(const SurgeryPresentation& p, const std::vector<int>& needed) {
    const Diagram& d = p.diagram;
    std::vector<int> surgery_index(d.num_edges(), -1);
    for (std::size_t i = 0; i < p.surgery_components.size(); ++i)
        surgery_index[p.surgery_components[i]] = static_cast<int>(i);
    const auto words = slice_words(d);
    std::vector<StackedSite> sites;
    for (std::size_t s = 0; s < words.size(); ++s) {
        const Word& w = words[s];
        for (std::size_t q = 0; q < w.size(); ++q) {
            const Letter u = w[q];
            if (u.sign < 0 || surgery_index[u.edge] >= 0) continue;
            const auto* col = std::get_if<Color>(&d.edges[u.edge]);
            if (!col || !col->is_typical()) continue;
            StackedSite site{static_cast<int>(s), static_cast<int>(q), {}};
            std::vector<int> remaining = needed;
            for (std::size_t t = q + 1; t < w.size() && !(remaining.empty() && !site.components.empty()); ++t) {
                const int i = surgery_index[w[t].edge];
                if (w[t].sign < 0 || i < 0) break;
                if (std::find(site.components.begin(), site.components.end(), i) != site.components.end()) break;
                site.components.push_back(i);
                remaining.erase(std::remove(remaining.begin(), remaining.end(), i), remaining.end());
            }
            if (remaining.empty() && !site.components.empty()) sites.push_back(site);
        }
    }
    return sites;
}

AutoStabilizeResult auto_stabilize_full(const ScalarContext& ctx, const SurgeryPresentation& p,
                                        const AutoStabilizeOptions& opts) {
    require_well_formed(ctx, p);
    require_consistent(ctx, p);
    AutoStabilizeResult res;
    res.presentation = p;
    const auto critical = check_computable(ctx, p);
    if (critical.empty() && !opts.force) return res;

    StackedSite site;
    if (opts.site) {
        site = *opts.site;
    } else {
        const auto sites = find_stacked_sites(p, critical);
        if (sites.empty()) {
            std::ostringstream msg;
            msg << "no level has an upward typical graph strand directly followed by upward strands of the critical"
                   " surgery components";
            for (int i : critical) msg << " " << i;
            throw Error(ErrorKind::CannotStabilize, msg.str());
        }
        site = sites.front();
    }
    for (int i : critical)
        if (std::find(site.components.begin(), site.components.end(), i) == site.components.end())
            throw Error(ErrorKind::CannotStabilize, "the stacked site does not cover every critical component");

    const std::vector<Scalar> defaults = {Scalar(0.5, 0.0), Scalar(0.3183, 0.1271), Scalar(0.7071, -0.2113),
                                          Scalar(1.4142, 0.0517), Scalar(0.2718, 0.0)};
    const auto& candidates = opts.candidates.empty() ? defaults : opts.candidates;
    std::optional<Scalar> chosen;
    for (const auto& g : candidates) {
        if (Degree(g).is_critical(ctx.tol())) continue;
        bool ok = true;
        for (int i : site.components)
            if ((p.meridian_degrees[i] - Degree(g)).is_critical(ctx.tol())) ok = false;
        for (std::size_t i = 0; i < p.meridian_degrees.size() && ok; ++i)
            if (std::find(site.components.begin(), site.components.end(), static_cast<int>(i)) ==
                    site.components.end() &&
                p.meridian_degrees[i].is_critical(ctx.tol()))
                ok = false;
        if (ok) {
            chosen = g;
            break;
        }
    }
    if (!chosen) throw Error(ErrorKind::CannotStabilize, "every candidate stabilization degree is critical");
    const auto index = index_set(ctx, Degree(*chosen));
    if (opts.index_choice < 0 || opts.index_choice >= static_cast<int>(index.size()))
        throw Error(ErrorKind::CannotStabilize, "index choice outside I_g");
    const Scalar alpha = index[opts.index_choice];

    // Cable the slid knots with a V_i-colored parallel.
    Diagram d = p.diagram;
    d.edges.push_back(Color::typical(alpha));
    const int v = d.num_edges() - 1;
    std::vector<int> knots;
    for (int i : site.components) knots.push_back(p.surgery_components.at(i));
    const Diagram cabled = cable_parallel(d, knots, v);

    // Level of the site inside the cabled diagram.
    const auto old_words = slice_words(p.diagram);
    std::vector<bool> doubled(d.num_edges(), false);
    for (int e : knots) doubled[e] = true;
    int level = 0;
    {
        int new_level = 0;
        for (int s = 0; s < site.level; ++s) {
            const Cell& c = p.diagram.cells[s];
            const Word& w = old_words[s];
            int count = 1;
            if (is_crossing(c.kind)) {
                count = (doubled[w[c.pos].edge] ? 2 : 1) * (doubled[w[c.pos + 1].edge] ? 2 : 1);
            } else if (c.kind == CellKind::CupL || c.kind == CellKind::CupR) {
                count = doubled[c.edge] ? 2 : 1;
            } else if (c.kind == CellKind::CapL || c.kind == CellKind::CapR) {
                count = doubled[w[c.pos].edge] ? 2 : 1;
            }
            new_level += count;
        }
        level = new_level;
    }
    const Word& sw = old_words.at(site.level);
    int P = site.pos;
    for (int i = 0; i < site.pos; ++i) P += doubled[sw[i].edge] ? 1 : 0;
    const int m = static_cast<int>(site.components.size());
    const Letter u = sw.at(site.pos);

    Cell coupon = make_cell(CellKind::Coupon, P);
    coupon.n_in = 1;
    coupon.out = {u, Letter{+1, v}, Letter{-1, v}};
    coupon.matrix = section_map(ctx, SignedColor{+1, std::get<Color>(d.edges[u.edge])}, alpha);
    std::vector<Cell> inserted{coupon};
    // Each parallel's lower end passes over its knot to become the next parallel's upper end.
    for (int j = 1; j <= m; ++j) inserted.push_back(make_cell(CellKind::XPos, P + 1 + 2 * j));
    // The returning V_i^* strand travels right over everything and closes the last parallel.
    for (int t = P + 2; t <= P + 2 * m; ++t) inserted.push_back(make_cell(CellKind::XPos, t));
    inserted.push_back(make_cell(CellKind::CapL, P + 2 * m + 1));

    SurgeryPresentation out = p;
    out.diagram = splice(cabled, level, inserted);
    for (int i : site.components) out.meridian_degrees[i] = p.meridian_degrees[i] - Degree(*chosen);
    require_consistent(ctx, out);
    if (!check_computable(ctx, out).empty())
        throw Error(ErrorKind::CannotStabilize, "stabilized presentation is still not computable");
    res.presentation = std::move(out);
    res.changed = true;
    res.degree = *chosen;
    res.alpha = alpha;
    res.site = site;
    return res;
}

SurgeryPresentation auto_stabilize(const ScalarContext& ctx, const SurgeryPresentation& p,
                                   const AutoStabilizeOptions& opts) {
    return auto_stabilize_full(ctx, p, opts).presentation;
}

}  // namespace cgp
