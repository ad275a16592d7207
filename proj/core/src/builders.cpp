#include "cgp/builders.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "cgp/errors.hpp"

namespace cgp {

void add_curl(DiagramBuilder& b, int pos, int sign) {
    const Letter x = b.word().at(pos);
    if (x.sign > 0) {
        b.cup_left(pos + 1, x.edge);
        sign > 0 ? b.xpos(pos) : b.xneg(pos);
        b.cap_right(pos + 1);
    } else {
        b.cup_right(pos + 1, x.edge);
        sign > 0 ? b.xpos(pos) : b.xneg(pos);
        b.cap_left(pos + 1);
    }
}

void add_curls(DiagramBuilder& b, int pos, int framing) {
    for (int k = 0; k < std::abs(framing); ++k) add_curl(b, pos, framing > 0 ? 1 : -1);
}

Diagram unknot(EdgeLabel label, int framing) {
    DiagramBuilder b;
    const int e = b.add_edge(std::move(label));
    b.cup_left(0, e);
    add_curls(b, 0, framing);
    b.cap_right(0);
    return b.build();
}

std::vector<Cell> meridian_cells(int width, int from, int to, int edge, int framing, int orientation) {
    if (from < 0 || to < from || to > width) throw Error(ErrorKind::InvalidDiagram, "meridian range out of bounds");
    std::vector<Cell> cells;
    auto push = [&](CellKind k, int pos, int e = -1) {
        Cell c;
        c.kind = k;
        c.pos = pos;
        c.edge = e;
        cells.push_back(c);
    };
    const bool fwd = orientation > 0;
    push(fwd ? CellKind::CupL : CellKind::CupR, from, edge);
    // The right letter of the cup travels right over the strands, the left one under.
    for (int j = from + 1; j < to + 1; ++j) push(CellKind::XPos, j);
    for (int j = from; j < to; ++j) push(CellKind::XNeg, j);
    const CellKind curl_cup = fwd ? CellKind::CupL : CellKind::CupR;
    const CellKind curl_cap = fwd ? CellKind::CapR : CellKind::CapL;
    for (int k = 0; k < std::abs(framing); ++k) {
        push(curl_cup, to + 1, edge);
        push(framing > 0 ? CellKind::XPos : CellKind::XNeg, to);
        push(curl_cap, to + 1);
    }
    push(fwd ? CellKind::CapR : CellKind::CapL, to);
    return cells;
}

int add_meridian(DiagramBuilder& b, int from, int to, EdgeLabel label, int framing, int orientation) {
    if (from < 0 || to < from || to > b.width()) throw Error(ErrorKind::InvalidDiagram, "meridian range out of bounds");
    const int e = b.add_edge(std::move(label));
    for (const auto& c : meridian_cells(b.width(), from, to, e, framing, orientation)) b.cell(c);
    return e;
}

namespace {

std::vector<int> braid_permutation(int n, const std::vector<int>& word) {
    // perm[k] = top position of the strand starting at bottom position k
    std::vector<int> at(n);  // at[p] = starting strand now at position p
    std::iota(at.begin(), at.end(), 0);
    for (int g : word) {
        const int i = std::abs(g) - 1;
        if (i < 0 || i + 1 >= n) throw Error(ErrorKind::InvalidDiagram, "braid generator out of range");
        std::swap(at[i], at[i + 1]);
    }
    std::vector<int> perm(n);
    for (int p = 0; p < n; ++p) perm[at[p]] = p;
    return perm;
}

std::vector<int> cycle_ids(int n, const std::vector<int>& word) {
    const auto perm = braid_permutation(n, word);
    std::vector<int> id(n, -1);
    int next = 0;
    for (int k = 0; k < n; ++k) {
        if (id[k] >= 0) continue;
        for (int j = k; id[j] < 0; j = perm[j]) id[j] = next;
        ++next;
    }
    return id;
}

}  // namespace

int braid_components(int n, const std::vector<int>& word) {
    const auto id = cycle_ids(n, word);
    return *std::max_element(id.begin(), id.end()) + 1;
}

Diagram braid_closure_framed(int n, const std::vector<int>& word, const std::vector<EdgeLabel>& labels,
                             const std::vector<int>& extra_curls) {
    const auto id = cycle_ids(n, word);
    const int ncomp = *std::max_element(id.begin(), id.end()) + 1;
    if (static_cast<int>(labels.size()) != ncomp)
        throw Error(ErrorKind::InvalidDiagram, "braid closure needs one label per component");
    DiagramBuilder b;
    for (const auto& l : labels) b.add_edge(l);
    for (int k = 0; k < n; ++k) b.cup_left(k, id[k]);
    std::vector<bool> curled(ncomp, false);
    for (int k = 0; k < n; ++k) {
        const int c = id[k];
        if (!curled[c] && c < static_cast<int>(extra_curls.size())) {
            add_curls(b, k, extra_curls[c]);
            curled[c] = true;
        }
    }
    for (int g : word) g > 0 ? b.xpos(g - 1) : b.xneg(-g - 1);
    for (int k = n - 1; k >= 0; --k) b.cap_right(k);
    return b.build();
}

Diagram braid_closure(int n, const std::vector<int>& word, const std::vector<EdgeLabel>& labels) {
    return braid_closure_framed(n, word, labels, {});
}

}  // namespace cgp
