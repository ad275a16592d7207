#include "cgp/diagram.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "cgp/errors.hpp"

namespace cgp {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    /// Compact ids numbered in order of the smallest member.
    std::vector<int> labels() {
        std::vector<int> root_id(parent.size(), -1), out(parent.size());
        int next = 0;
        for (std::size_t i = 0; i < parent.size(); ++i) {
            const int r = find(static_cast<int>(i));
            if (root_id[r] < 0) root_id[r] = next++;
            out[i] = root_id[r];
        }
        return out;
    }
};

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::InvalidDiagram, msg); }

bool labels_match(const EdgeLabel& a, const EdgeLabel& b) {
    if (a.index() != b.index()) return false;
    if (const auto* ca = std::get_if<Color>(&a)) return ca->same_as(std::get<Color>(b), 1e-12);
    if (const auto* fa = std::get_if<FormalColorSum>(&a)) {
        const auto& fb = std::get<FormalColorSum>(b);
        return fa->terms.size() == fb.terms.size() && fa->degree.equals(fb.degree, 1e-12);
    }
    return true;
}

Cell renumber(Cell c, const std::vector<int>& map, int shift) {
    c.pos += shift;
    if (c.edge >= 0) c.edge = map[c.edge];
    for (auto& l : c.out) l.edge = map[l.edge];
    return c;
}

}  // namespace

const char* cell_kind_name(CellKind k) {
    switch (k) {
        case CellKind::XPos: return "xpos";
        case CellKind::XNeg: return "xneg";
        case CellKind::CupL: return "cup_left";
        case CellKind::CupR: return "cup_right";
        case CellKind::CapL: return "cap_left";
        case CellKind::CapR: return "cap_right";
        case CellKind::Coupon: return "coupon";
    }
    return "?";
}

int cell_arity_in(const Cell& c) {
    switch (c.kind) {
        case CellKind::XPos:
        case CellKind::XNeg:
        case CellKind::CapL:
        case CellKind::CapR: return 2;
        case CellKind::CupL:
        case CellKind::CupR: return 0;
        case CellKind::Coupon: return c.n_in;
    }
    return 0;
}

Word apply_cell(const Word& w, const Cell& c) {
    const int n = static_cast<int>(w.size());
    const int k = cell_arity_in(c);
    if (c.pos < 0 || c.pos + k > n) {
        std::ostringstream msg;
        msg << cell_kind_name(c.kind) << " at position " << c.pos << " exceeds word of length " << n;
        invalid(msg.str());
    }
    Word out(w.begin(), w.begin() + c.pos);
    switch (c.kind) {
        case CellKind::XPos:
        case CellKind::XNeg:
            out.push_back(w[c.pos + 1]);
            out.push_back(w[c.pos]);
            break;
        case CellKind::CupL:
            out.push_back({+1, c.edge});
            out.push_back({-1, c.edge});
            break;
        case CellKind::CupR:
            out.push_back({-1, c.edge});
            out.push_back({+1, c.edge});
            break;
        case CellKind::CapL:
        case CellKind::CapR: {
            const Letter a = w[c.pos], b = w[c.pos + 1];
            const int first = c.kind == CellKind::CapL ? -1 : +1;
            if (a.edge != b.edge || a.sign != first || b.sign != -first) {
                std::ostringstream msg;
                msg << cell_kind_name(c.kind) << " at position " << c.pos
                    << " does not meet a matching " << (first < 0 ? "(-e)(+e)" : "(+e)(-e)") << " pair";
                invalid(msg.str());
            }
            break;
        }
        case CellKind::Coupon:
            out.insert(out.end(), c.out.begin(), c.out.end());
            break;
    }
    out.insert(out.end(), w.begin() + c.pos + k, w.end());
    return out;
}

std::vector<Word> slice_words(const Diagram& d) {
    std::vector<Word> words{d.source};
    words.reserve(d.cells.size() + 1);
    for (std::size_t i = 0; i < d.cells.size(); ++i) {
        try {
            words.push_back(apply_cell(words.back(), d.cells[i]));
        } catch (const Error& e) {
            std::ostringstream msg;
            msg << "slice " << i << ": " << e.what();
            invalid(msg.str());
        }
    }
    return words;
}

Word target(const Diagram& d) { return slice_words(d).back(); }

bool is_closed(const Diagram& d) { return d.source.empty() && target(d).empty(); }

int edge_dimension(const ScalarContext& ctx, const Diagram& d, int edge) {
    if (const auto* c = std::get_if<Color>(&d.edges.at(edge))) return c->is_typical() ? ctx.ell() : 1;
    return ctx.ell();
}

ValidationReport validate(const ScalarContext& ctx, const Diagram& d) {
    ValidationReport rep;
    auto fail = [&](int slice, const std::string& msg) {
        rep.ok = false;
        rep.slice = slice;
        rep.message = msg;
        return rep;
    };
    const int ne = d.num_edges();
    for (const auto& l : d.source)
        if (l.edge < 0 || l.edge >= ne || (l.sign != 1 && l.sign != -1))
            return fail(-1, "source letter refers to an unknown edge or has a bad sign");
    for (int e = 0; e < ne; ++e)
        if (const auto* c = std::get_if<Color>(&d.edges[e]))
            if (c->is_typical() && !is_typical(ctx, c->alpha))
                return fail(-1, "edge " + std::to_string(e) + " has a non-typical color " + c->describe());
    Word w = d.source;
    for (std::size_t i = 0; i < d.cells.size(); ++i) {
        const Cell& c = d.cells[i];
        const int slice = static_cast<int>(i);
        if ((c.kind == CellKind::CupL || c.kind == CellKind::CupR) && (c.edge < 0 || c.edge >= ne))
            return fail(slice, "cup refers to an unknown edge");
        if (c.kind == CellKind::Coupon) {
            for (const auto& l : c.out)
                if (l.edge < 0 || l.edge >= ne) return fail(slice, "coupon output refers to an unknown edge");
        }
        Word next;
        try {
            next = apply_cell(w, c);
        } catch (const Error& e) {
            return fail(slice, e.what());
        }
        if (c.kind == CellKind::Coupon) {
            long din = 1, dout = 1;
            for (int k = 0; k < c.n_in; ++k) din *= edge_dimension(ctx, d, w[c.pos + k].edge);
            for (const auto& l : c.out) dout *= edge_dimension(ctx, d, l.edge);
            if (c.matrix.rows() != dout || c.matrix.cols() != din) {
                std::ostringstream msg;
                msg << "coupon matrix is " << c.matrix.rows() << "x" << c.matrix.cols() << ", expected "
                    << dout << "x" << din;
                return fail(slice, msg.str());
            }
        }
        w = std::move(next);
    }
    return rep;
}

void require_valid(const ScalarContext& ctx, const Diagram& d) {
    const auto rep = validate(ctx, d);
    if (!rep.ok) {
        std::ostringstream msg;
        msg << "invalid diagram at slice " << rep.slice << ": " << rep.message;
        invalid(msg.str());
    }
}

Diagram identity_diagram(const Word& w, std::vector<EdgeLabel> edges) {
    Diagram d;
    d.source = w;
    d.edges = std::move(edges);
    return d;
}

Diagram compose(const Diagram& d1, const Diagram& d2) {
    const Word t1 = target(d1);
    if (t1.size() != d2.source.size())
        throw Error(ErrorKind::BoundaryMismatch, "compose: boundary lengths differ");
    const int n1 = d1.num_edges(), n2 = d2.num_edges();
    UnionFind uf(n1 + n2);
    for (std::size_t i = 0; i < t1.size(); ++i) {
        if (t1[i].sign != d2.source[i].sign)
            throw Error(ErrorKind::BoundaryMismatch, "compose: orientation mismatch at position " + std::to_string(i));
        if (!labels_match(d1.edges[t1[i].edge], d2.edges[d2.source[i].edge]))
            throw Error(ErrorKind::BoundaryMismatch, "compose: color mismatch at position " + std::to_string(i));
        uf.unite(t1[i].edge, n1 + d2.source[i].edge);
    }
    const std::vector<int> ids = uf.labels();
    Diagram out;
    int count = 0;
    for (int id : ids) count = std::max(count, id + 1);
    out.edges.assign(count, Uncolored{});
    std::vector<bool> set(count, false);
    for (int e = 0; e < n1 + n2; ++e) {
        const EdgeLabel& lab = e < n1 ? d1.edges[e] : d2.edges[e - n1];
        if (!set[ids[e]]) {
            out.edges[ids[e]] = lab;
            set[ids[e]] = true;
        } else if (!labels_match(out.edges[ids[e]], lab)) {
            throw Error(ErrorKind::BoundaryMismatch, "compose: merged edges carry different colors");
        }
    }
    std::vector<int> map1(ids.begin(), ids.begin() + n1), map2(ids.begin() + n1, ids.end());
    for (auto l : d1.source) out.source.push_back({l.sign, map1[l.edge]});
    for (const auto& c : d1.cells) out.cells.push_back(renumber(c, map1, 0));
    for (const auto& c : d2.cells) out.cells.push_back(renumber(c, map2, 0));
    out.prefactor = d1.prefactor * d2.prefactor;
    return out;
}

Diagram tensor(const Diagram& d1, const Diagram& d2) {
    const int n1 = d1.num_edges();
    const int shift = static_cast<int>(target(d1).size());
    std::vector<int> map1(n1), map2(d2.num_edges());
    std::iota(map1.begin(), map1.end(), 0);
    std::iota(map2.begin(), map2.end(), n1);
    Diagram out;
    out.edges = d1.edges;
    out.edges.insert(out.edges.end(), d2.edges.begin(), d2.edges.end());
    out.source = d1.source;
    for (auto l : d2.source) out.source.push_back({l.sign, map2[l.edge]});
    out.cells = d1.cells;
    for (const auto& c : d2.cells) out.cells.push_back(renumber(c, map2, shift));
    out.prefactor = d1.prefactor * d2.prefactor;
    return out;
}

namespace {

std::vector<int> join_edges(const Diagram& d, bool through_crossings) {
    UnionFind uf(d.num_edges());
    const auto words = slice_words(d);
    for (std::size_t i = 0; i < d.cells.size(); ++i) {
        const Cell& c = d.cells[i];
        const Word& w = words[i];
        if (c.kind == CellKind::Coupon) {
            std::vector<int> touched;
            for (int k = 0; k < c.n_in; ++k) touched.push_back(w[c.pos + k].edge);
            for (const auto& l : c.out) touched.push_back(l.edge);
            for (std::size_t k = 1; k < touched.size(); ++k) uf.unite(touched[0], touched[k]);
        } else if (through_crossings && (c.kind == CellKind::XPos || c.kind == CellKind::XNeg)) {
            uf.unite(w[c.pos].edge, w[c.pos + 1].edge);
        }
    }
    return uf.labels();
}

}  // namespace

std::vector<int> edge_components(const Diagram& d) { return join_edges(d, false); }

std::vector<int> split_pieces(const Diagram& d) { return join_edges(d, true); }

std::vector<CrossingInfo> crossings(const Diagram& d) {
    std::vector<CrossingInfo> out;
    const auto words = slice_words(d);
    for (std::size_t i = 0; i < d.cells.size(); ++i) {
        const Cell& c = d.cells[i];
        if (c.kind != CellKind::XPos && c.kind != CellKind::XNeg) continue;
        const Letter a = words[i][c.pos], b = words[i][c.pos + 1];
        CrossingInfo x;
        x.cell = static_cast<int>(i);
        x.lhs_edge = a.edge;
        x.rhs_edge = b.edge;
        const bool lhs_over = c.kind == CellKind::XPos;
        x.over_edge = lhs_over ? a.edge : b.edge;
        x.under_edge = lhs_over ? b.edge : a.edge;
        x.over_sign = lhs_over ? a.sign : b.sign;
        x.under_sign = lhs_over ? b.sign : a.sign;
        x.sign = (lhs_over ? 1 : -1) * a.sign * b.sign;
        out.push_back(x);
    }
    return out;
}

Diagram sub_diagram(const Diagram& d, const std::vector<int>& edges, std::vector<int>* edge_map) {
    std::vector<int> map(d.num_edges(), -1);
    std::vector<int> sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    Diagram out;
    for (int e : sorted) {
        map.at(e) = out.num_edges();
        out.edges.push_back(d.edges[e]);
    }
    auto kept_before = [&](const Word& w, int pos) {
        int n = 0;
        for (int i = 0; i < pos; ++i) n += map[w[i].edge] >= 0 ? 1 : 0;
        return n;
    };
    const auto words = slice_words(d);
    for (const auto& l : d.source)
        if (map[l.edge] >= 0) out.source.push_back({l.sign, map[l.edge]});
    for (std::size_t k = 0; k < d.cells.size(); ++k) {
        const Cell& c = d.cells[k];
        const Word& w = words[k];
        std::vector<int> touched;
        for (int i = 0; i < cell_arity_in(c); ++i) touched.push_back(w[c.pos + i].edge);
        if (c.edge >= 0) touched.push_back(c.edge);
        for (const auto& l : c.out) touched.push_back(l.edge);
        int inside = 0;
        for (int e : touched) inside += map[e] >= 0 ? 1 : 0;
        if (inside == 0) continue;
        if (inside != static_cast<int>(touched.size()))
            invalid("sub_diagram: cell " + std::to_string(k) + " joins kept and dropped edges");
        Cell nc = renumber(c, map, 0);
        nc.pos = kept_before(w, c.pos);
        out.cells.push_back(std::move(nc));
    }
    out.prefactor = d.prefactor;
    if (edge_map) *edge_map = map;
    return out;
}

Diagram splice(const Diagram& d, int level, const std::vector<Cell>& inserted) {
    const auto words = slice_words(d);
    if (level < 0 || level >= static_cast<int>(words.size())) invalid("splice: level out of range");
    Word w = words[level];
    for (const auto& c : inserted) w = apply_cell(w, c);
    if (w != words[level]) invalid("splice: inserted cells change the word at the splice level");
    Diagram out = d;
    out.cells.insert(out.cells.begin() + level, inserted.begin(), inserted.end());
    return out;
}

const Color& edge_color(const Diagram& d, int edge) {
    const auto* c = std::get_if<Color>(&d.edges.at(edge));
    if (!c) invalid("edge " + std::to_string(edge) + " has no concrete color");
    return *c;
}

ObjectWord object_word(const Word& w, const std::vector<Color>& colors) {
    ObjectWord out;
    for (const auto& l : w) out.push_back({l.sign, colors.at(l.edge)});
    return out;
}

// ---- builder ------------------------------------------------------------------

DiagramBuilder::DiagramBuilder(Word source, std::vector<EdgeLabel> edges) : word_(source) {
    d_.source = std::move(source);
    d_.edges = std::move(edges);
}

int DiagramBuilder::add_edge(EdgeLabel label) {
    d_.edges.push_back(std::move(label));
    return d_.num_edges() - 1;
}

DiagramBuilder& DiagramBuilder::cell(const Cell& c) {
    word_ = apply_cell(word_, c);
    d_.cells.push_back(c);
    return *this;
}

DiagramBuilder& DiagramBuilder::cup_left(int pos, int edge) {
    Cell c;
    c.kind = CellKind::CupL;
    c.pos = pos;
    c.edge = edge;
    return cell(c);
}

DiagramBuilder& DiagramBuilder::cup_right(int pos, int edge) {
    Cell c;
    c.kind = CellKind::CupR;
    c.pos = pos;
    c.edge = edge;
    return cell(c);
}

DiagramBuilder& DiagramBuilder::cap_left(int pos) {
    Cell c;
    c.kind = CellKind::CapL;
    c.pos = pos;
    return cell(c);
}

DiagramBuilder& DiagramBuilder::cap_right(int pos) {
    Cell c;
    c.kind = CellKind::CapR;
    c.pos = pos;
    return cell(c);
}

DiagramBuilder& DiagramBuilder::xpos(int pos) {
    Cell c;
    c.kind = CellKind::XPos;
    c.pos = pos;
    return cell(c);
}

DiagramBuilder& DiagramBuilder::xneg(int pos) {
    Cell c;
    c.kind = CellKind::XNeg;
    c.pos = pos;
    return cell(c);
}

DiagramBuilder& DiagramBuilder::coupon(int pos, int n_in, Word out, Matrix m) {
    Cell c;
    c.kind = CellKind::Coupon;
    c.pos = pos;
    c.n_in = n_in;
    c.out = std::move(out);
    c.matrix = std::move(m);
    return cell(c);
}

DiagramBuilder& DiagramBuilder::scale(Scalar s) {
    d_.prefactor *= s;
    return *this;
}

// ---- cutting presentation -------------------------------------------------------

Diagram cut(const ScalarContext& ctx, const Diagram& closed, int edge,
            std::optional<std::pair<int, int>> at) {
    (void)ctx;
    if (!closed.source.empty()) invalid("cut expects a closed diagram");
    if (edge < 0 || edge >= closed.num_edges()) invalid("cut: unknown edge");
    if (const auto* c = std::get_if<Color>(&closed.edges[edge]); c && !c->is_typical())
        throw Error(ErrorKind::NoProjectiveEdge, "cut: edge " + std::to_string(edge) + " is not typical");
    const auto words = slice_words(closed);
    if (!words.back().empty()) invalid("cut expects a closed diagram");
    int level = -1, pos = -1;
    if (at) {
        level = at->first;
        pos = at->second;
        if (level < 0 || level >= static_cast<int>(words.size()) || pos < 0 ||
            pos >= static_cast<int>(words[level].size()) || words[level][pos].edge != edge)
            invalid("cut: requested position does not carry the edge");
    } else {
        for (int want : {+1, -1}) {
            for (std::size_t s = 0; s < words.size() && level < 0; ++s)
                for (std::size_t p = 0; p < words[s].size(); ++p)
                    if (words[s][p].edge == edge && words[s][p].sign == want) {
                        level = static_cast<int>(s);
                        pos = static_cast<int>(p);
                        break;
                    }
            if (level >= 0) break;
        }
        if (level < 0) throw Error(ErrorKind::NoProjectiveEdge, "cut: edge does not occur in the diagram");
    }
    const Letter x = words[level][pos];
    DiagramBuilder b(Word{x}, closed.edges);
    std::vector<int> id(closed.num_edges());
    std::iota(id.begin(), id.end(), 0);
    for (int k = 0; k < level; ++k) b.cell(renumber(closed.cells[k], id, 1));
    // Lower end of the strand travels left under everything to position 0.
    for (int j = pos; j >= 1; --j) b.xpos(j);
    b.xpos(0);
    // The incoming end takes its place, again passing under.
    for (int j = 1; j <= pos; ++j) b.xneg(j);
    for (std::size_t k = level; k < closed.cells.size(); ++k) b.cell(renumber(closed.cells[k], id, 1));
    // The detour closes into a kink; remove it with an opposite curl on the output.
    if (x.sign > 0) {
        b.cup_right(0, edge).xneg(1).cap_left(0);
    } else {
        b.cup_left(0, edge).xneg(1).cap_right(0);
    }
    Diagram out = b.build();
    out.prefactor = closed.prefactor;
    return out;
}

}  // namespace cgp
