#include "cgp/rteval.hpp"

#include <algorithm>
#include <map>
#include <thread>

#include "cgp/errors.hpp"

namespace cgp {

namespace {

/// Modules of the letters of a colored diagram, built on demand.
class ModuleCache {
public:
    ModuleCache(const ScalarContext& ctx, const std::vector<Color>& colors) : ctx_(ctx), colors_(colors) {}

    const WeightModule& get(const Letter& l) {
        const auto key = std::make_pair(l.edge, l.sign);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        return cache_.emplace(key, signed_module(ctx_, {l.sign, colors_.at(l.edge)})).first->second;
    }
    int dim(const Letter& l) { return get(l).dim; }
    const Color& color(int edge) const { return colors_.at(edge); }

private:
    const ScalarContext& ctx_;
    const std::vector<Color>& colors_;
    std::map<std::pair<int, int>, WeightModule> cache_;
};

long word_dim(ModuleCache& mc, const Word& w, std::size_t from, std::size_t to) {
    long d = 1;
    for (std::size_t i = from; i < to; ++i) d *= mc.dim(w[i]);
    return d;
}

/// Local matrix of a cell acting on the word w.
Matrix local_matrix(const ScalarContext& ctx, ModuleCache& mc, const Word& w, const Cell& c) {
    switch (c.kind) {
        case CellKind::XPos:
            return braiding(ctx, mc.get(w[c.pos]), mc.get(w[c.pos + 1]));
        case CellKind::XNeg:
            return braiding_inverse(ctx, mc.get(w[c.pos + 1]), mc.get(w[c.pos]));
        case CellKind::CupL:
            return duality_map(ctx, mc.get({+1, c.edge}), Duality::CoevLeft);
        case CellKind::CupR:
            return duality_map(ctx, mc.get({+1, c.edge}), Duality::CoevRight);
        case CellKind::CapL:
            return duality_map(ctx, mc.get({+1, w[c.pos].edge}), Duality::EvLeft);
        case CellKind::CapR:
            return duality_map(ctx, mc.get({+1, w[c.pos].edge}), Duality::EvRight);
        case CellKind::Coupon: {
            const long din = word_dim(mc, w, c.pos, c.pos + c.n_in);
            long dout = 1;
            for (const auto& l : c.out) dout *= mc.dim(l);
            if (c.matrix.rows() != dout || c.matrix.cols() != din)
                throw Error(ErrorKind::InvalidDiagram, "coupon matrix shape does not match its colors");
            return c.matrix;
        }
    }
    return Matrix();
}

/**
 * Apply id_{dl} (x) L (x) id_{dr} to every column of `state`, whose rows index
 * (left, middle, right) with the left factor most significant.
 */
Matrix apply_local(const Matrix& state, const Matrix& L, long dl, long dr) {
    const long din = L.cols(), dout = L.rows();
    const long m = state.cols();
    Matrix out = Matrix::Zero(dl * dout * dr, m);
    for (long j = 0; j < m; ++j)
        for (long a = 0; a < dl; ++a)
            for (long b = 0; b < din; ++b)
                for (long c = 0; c < dr; ++c) {
                    const Scalar s = state((a * din + b) * dr + c, j);
                    if (s == Scalar(0.0, 0.0)) continue;
                    for (long b2 = 0; b2 < dout; ++b2) {
                        const Scalar lv = L(b2, b);
                        if (lv != Scalar(0.0, 0.0)) out((a * dout + b2) * dr + c, j) += lv * s;
                    }
                }
    return out;
}

/// Propagate `state` (columns over realize(words[from])) through cells [from, to).
Matrix propagate(const ScalarContext& ctx, ModuleCache& mc, const Diagram& d, const std::vector<Word>& words,
                 Matrix state, std::size_t from, std::size_t to) {
    for (std::size_t k = from; k < to; ++k) {
        const Cell& c = d.cells[k];
        const Word& w = words[k];
        const Matrix L = local_matrix(ctx, mc, w, c);
        const long dl = word_dim(mc, w, 0, c.pos);
        const long dr = word_dim(mc, w, c.pos + cell_arity_in(c), w.size());
        state = apply_local(state, L, dl, dr);
    }
    return state;
}

/// Row covector over realize(words[from]) equal to (cells [from, end)) applied to it.
Matrix propagate_back(const ScalarContext& ctx, ModuleCache& mc, const Diagram& d, const std::vector<Word>& words,
                      std::size_t from) {
    Matrix state = Matrix::Ones(1, 1);  // column form of the covector over the empty word
    for (std::size_t k = d.cells.size(); k-- > from;) {
        const Cell& c = d.cells[k];
        const Word& w = words[k];
        const Matrix L = local_matrix(ctx, mc, w, c);
        const long dl = word_dim(mc, w, 0, c.pos);
        const long dr = word_dim(mc, w, c.pos + cell_arity_in(c), w.size());
        state = apply_local(state, L.transpose(), dl, dr);
    }
    return state.transpose();
}

std::vector<Scalar> word_pivot(const ScalarContext& ctx, ModuleCache& mc, const Word& w, std::size_t from,
                               std::size_t to) {
    std::vector<Scalar> p{Scalar(1.0, 0.0)};
    for (std::size_t i = from; i < to; ++i) {
        const auto g = pivot_diagonal(ctx, mc.get(w[i]));
        std::vector<Scalar> next;
        next.reserve(p.size() * g.size());
        for (const auto& a : p)
            for (const auto& b : g) next.push_back(a * b);
        p = std::move(next);
    }
    return p;
}

bool edge_is_projective(const EdgeLabel& lab) {
    if (const auto* c = std::get_if<Color>(&lab)) return c->is_typical();
    return true;
}

}  // namespace

std::vector<Color> concrete_colors(const Diagram& d) {
    std::vector<Color> out;
    for (int e = 0; e < d.num_edges(); ++e) out.push_back(edge_color(d, e));
    return out;
}

Matrix evaluate_colored(const ScalarContext& ctx, const Diagram& d, const std::vector<Color>& colors) {
    const auto words = slice_words(d);
    ModuleCache mc(ctx, colors);
    const long n = word_dim(mc, d.source, 0, d.source.size());
    Matrix state = propagate(ctx, mc, d, words, Matrix::Identity(n, n), 0, d.cells.size());
    return d.prefactor * state;
}

Matrix evaluate(const ScalarContext& ctx, const Diagram& d) {
    return evaluate_colored(ctx, d, concrete_colors(d));
}

std::size_t expansion_size(const Diagram& d) {
    std::size_t n = 1;
    for (const auto& lab : d.edges)
        if (const auto* f = std::get_if<FormalColorSum>(&lab)) n *= f->terms.size();
    return n;
}

ColoringTerm expansion_term(const Diagram& d, std::size_t idx) {
    ColoringTerm t;
    t.colors.resize(d.edges.size());
    for (std::size_t e = 0; e < d.edges.size(); ++e) {
        const auto& lab = d.edges[e];
        if (const auto* c = std::get_if<Color>(&lab)) {
            t.colors[e] = *c;
        } else if (const auto* f = std::get_if<FormalColorSum>(&lab)) {
            if (f->terms.empty()) throw Error(ErrorKind::InvalidDiagram, "empty formal color");
            const std::size_t k = idx % f->terms.size();
            idx /= f->terms.size();
            t.coefficient *= f->terms[k].first;
            t.colors[e] = f->terms[k].second;
        } else {
            throw Error(ErrorKind::InvalidDiagram,
                        "edge " + std::to_string(e) + " is a surgery knot without a Kirby color");
        }
    }
    return t;
}

namespace {

template <typename T>
std::vector<T> map_terms(const Diagram& d, const EvalOptions& opts,
                         const std::function<T(const ColoringTerm&)>& fn) {
    const std::size_t n = expansion_size(d);
    std::vector<T> results(n);
    const int jobs = std::max(1, std::min<int>(opts.jobs, static_cast<int>(n)));
    if (jobs == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            const ColoringTerm t = expansion_term(d, i);
            results[i] = fn(t);
        }
        return results;
    }
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w) {
        workers.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += jobs) {
                    const ColoringTerm t = expansion_term(d, i);
                    results[i] = fn(t);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : workers) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

}  // namespace

Scalar sum_over_expansion(const Diagram& d, const EvalOptions& opts,
                          const std::function<Scalar(const ColoringTerm&)>& fn) {
    Scalar total(0.0, 0.0);
    for (const auto& v : map_terms<Scalar>(d, opts, fn)) total += v;
    return total;
}

Matrix sum_over_expansion_matrix(const Diagram& d, const EvalOptions& opts,
                                 const std::function<Matrix(const ColoringTerm&)>& fn) {
    const auto parts = map_terms<Matrix>(d, opts, fn);
    Matrix total = parts.at(0);
    for (std::size_t i = 1; i < parts.size(); ++i) total += parts[i];
    return total;
}

Matrix evaluate_formal(const ScalarContext& ctx, const Diagram& d, const EvalOptions& opts) {
    return sum_over_expansion_matrix(d, opts, [&](const ColoringTerm& t) -> Matrix {
        return t.coefficient * evaluate_colored(ctx, d, t.colors);
    });
}

Matrix cut_endomorphism(const ScalarContext& ctx, const Diagram& closed, const std::vector<Color>& colors,
                        const CutSite& site) {
    const auto words = slice_words(closed);
    if (!closed.source.empty() || !words.back().empty())
        throw Error(ErrorKind::InvalidDiagram, "cut_endomorphism expects a closed diagram");
    const Word& w = words.at(site.level);
    ModuleCache mc(ctx, colors);
    const Matrix lower = propagate(ctx, mc, closed, words, Matrix::Ones(1, 1), 0, site.level);
    const Matrix upper = propagate_back(ctx, mc, closed, words, site.level);
    const long dl = word_dim(mc, w, 0, site.pos);
    const long dx = mc.dim(w[site.pos]);
    const long dr = word_dim(mc, w, site.pos + 1, w.size());
    const auto pl = word_pivot(ctx, mc, w, 0, site.pos);
    const auto pr = word_pivot(ctx, mc, w, site.pos + 1, w.size());
    Matrix f = Matrix::Zero(dx, dx);
    for (long a = 0; a < dl; ++a)
        for (long c = 0; c < dr; ++c) {
            const Scalar weight = pr[c] / pl[a];
            for (long xo = 0; xo < dx; ++xo) {
                const Scalar lv = lower((a * dx + xo) * dr + c, 0);
                if (lv == Scalar(0.0, 0.0)) continue;
                for (long xi = 0; xi < dx; ++xi) f(xo, xi) += weight * lv * upper(0, (a * dx + xi) * dr + c);
            }
        }
    return closed.prefactor * f;
}

CutSite choose_cut_site(const ScalarContext& ctx, const Diagram& closed, int edge) {
    const auto words = slice_words(closed);
    CutSite best{-1, -1};
    long best_dim = -1;
    for (std::size_t s = 0; s < words.size(); ++s) {
        for (std::size_t p = 0; p < words[s].size(); ++p) {
            if (words[s][p].edge != edge) continue;
            long dim = 1;
            for (const auto& l : words[s]) dim *= edge_dimension(ctx, closed, l.edge);
            if (best_dim < 0 || dim < best_dim) {
                best = {static_cast<int>(s), static_cast<int>(p)};
                best_dim = dim;
            }
        }
    }
    if (best.level < 0) throw Error(ErrorKind::NoProjectiveEdge, "edge does not occur in the diagram");
    return best;
}

std::optional<int> find_projective_edge(const Diagram& d) {
    for (int e = 0; e < d.num_edges(); ++e)
        if (edge_is_projective(d.edges[e])) return e;
    return std::nullopt;
}

Scalar f_prime_colored(const ScalarContext& ctx, const Diagram& closed, const std::vector<Color>& colors,
                       std::optional<int> cut_edge, std::optional<CutSite> site) {
    int edge = -1;
    if (cut_edge) {
        edge = *cut_edge;
    } else {
        for (int e = 0; e < closed.num_edges(); ++e)
            if (colors.at(e).is_typical()) {
                edge = e;
                break;
            }
    }
    if (edge < 0) throw Error(ErrorKind::NotAdmissible, "closed diagram has no typical edge");
    if (!colors.at(edge).is_typical())
        throw Error(ErrorKind::NotAdmissible, "cut edge " + std::to_string(edge) + " is not typical");
    const CutSite s = site ? *site : choose_cut_site(ctx, closed, edge);
    const Matrix f = cut_endomorphism(ctx, closed, colors, s);
    const Letter x = slice_words(closed).at(s.level).at(s.pos);
    return modified_trace(ctx, ObjectWord{{x.sign, colors[edge]}}, f);
}

Scalar f_prime(const ScalarContext& ctx, const Diagram& closed, std::optional<int> cut_edge,
               const EvalOptions& opts) {
    const std::optional<int> edge = cut_edge ? cut_edge : find_projective_edge(closed);
    if (!edge) throw Error(ErrorKind::NotAdmissible, "closed diagram has no projective edge");
    const CutSite site = choose_cut_site(ctx, closed, *edge);
    return sum_over_expansion(closed, opts, [&](const ColoringTerm& t) -> Scalar {
        return t.coefficient * f_prime_colored(ctx, closed, t.colors, *edge, site);
    });
}

}  // namespace cgp
