#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cgp/linalg.hpp"
#include "cgp/weightcat.hpp"

namespace cgp {

/// One strand crossing a horizontal level: orientation sign and the edge it belongs to.
struct Letter {
    int sign = +1;  // +1 upward (V), -1 downward (V*)
    int edge = 0;
    bool operator==(const Letter&) const = default;
};
using Word = std::vector<Letter>;

/// Label of a surgery knot that has not been given a Kirby color yet.
struct Uncolored {};
using EdgeLabel = std::variant<Uncolored, Color, FormalColorSum>;

/**
 * Elementary generators.  Each cell acts on consecutive letters starting at `pos`.
 *   XPos : (a, b) -> (b, a), the left strand passes over; realized by c_{A,B}.
 *   XNeg : (a, b) -> (b, a), the left strand passes under; realized by c_{B,A}^{-1}.
 *   CupL : inserts (+e)(-e), coev_left.   CupR : inserts (-e)(+e), coev_right.
 *   CapL : consumes (-e)(+e), ev_left.    CapR : consumes (+e)(-e), ev_right.
 *   Coupon : consumes n_in letters and emits `out`, with an explicit matrix.
 */
enum class CellKind { XPos, XNeg, CupL, CupR, CapL, CapR, Coupon };

struct Cell {
    CellKind kind = CellKind::XPos;
    int pos = 0;
    int edge = -1;   // cups only
    int n_in = 0;    // coupons only
    Word out;        // coupons only
    Matrix matrix;   // coupons only
};

/// A sliced ribbon graph: one nontrivial cell per slice, starting from `source`.
struct Diagram {
    Word source;
    std::vector<EdgeLabel> edges;
    std::vector<Cell> cells;
    Scalar prefactor{1.0, 0.0};

    int num_edges() const { return static_cast<int>(edges.size()); }
};

/// Result of validate(): ok, or the first violation and the slice where it happens.
struct ValidationReport {
    bool ok = true;
    int slice = -1;
    std::string message;
};

const char* cell_kind_name(CellKind k);

/// Number of letters a cell consumes.
int cell_arity_in(const Cell& c);

/// Apply one cell to a word; throws InvalidDiagram on a pattern mismatch.
Word apply_cell(const Word& w, const Cell& c);

/// Words at every level: result[0] = source, result[k+1] = after cell k.
std::vector<Word> slice_words(const Diagram& d);
Word target(const Diagram& d);
bool is_closed(const Diagram& d);

/// Dimension assumed for a letter's module.  Formal and uncolored edges are typical.
int edge_dimension(const ScalarContext& ctx, const Diagram& d, int edge);

ValidationReport validate(const ScalarContext& ctx, const Diagram& d);
/// validate() and throw InvalidDiagram on failure.
void require_valid(const ScalarContext& ctx, const Diagram& d);

/// The identity diagram on a word.
Diagram identity_diagram(const Word& w, std::vector<EdgeLabel> edges);
/// d2 after d1; edges meeting at the seam are merged.  Throws BoundaryMismatch.
Diagram compose(const Diagram& d1, const Diagram& d2);
/// d1 to the left of d2.
Diagram tensor(const Diagram& d1, const Diagram& d2);

/// Component id per edge (edges joined through coupons), numbered by first edge.
std::vector<int> edge_components(const Diagram& d);
/// Split-piece id per edge (edges joined through coupons or crossings).
std::vector<int> split_pieces(const Diagram& d);

struct CrossingInfo {
    int cell = 0;
    int lhs_edge = 0, rhs_edge = 0;
    int over_edge = 0, under_edge = 0;
    int over_sign = 1, under_sign = 1;
    int sign = 1;  // oriented crossing sign
};
std::vector<CrossingInfo> crossings(const Diagram& d);

/**
 * The part of a diagram made of the given edges (which must not cross or share a
 * coupon with the others).  Edges are renumbered in increasing order; `edge_map`
 * receives old -> new ids (-1 for dropped edges).  The prefactor is kept.
 */
Diagram sub_diagram(const Diagram& d, const std::vector<int>& edges, std::vector<int>* edge_map = nullptr);

/// Insert `inserted` at `level` (acting on the word there); the word after the
/// inserted cells must equal the original word at that level.
Diagram splice(const Diagram& d, int level, const std::vector<Cell>& inserted);

/// Color of an edge (throws InvalidDiagram if it is formal or uncolored).
const Color& edge_color(const Diagram& d, int edge);

/// Signed colored word for a letter word, using the given per-edge colors.
ObjectWord object_word(const Word& w, const std::vector<Color>& colors);

/**
 * Incremental construction helper.  Tracks the current word so that cells can
 * be appended by position only.
 */
class DiagramBuilder {
public:
    DiagramBuilder() = default;
    explicit DiagramBuilder(Word source, std::vector<EdgeLabel> edges = {});

    int add_edge(EdgeLabel label);
    const Word& word() const { return word_; }
    int width() const { return static_cast<int>(word_.size()); }

    DiagramBuilder& cup_left(int pos, int edge);
    DiagramBuilder& cup_right(int pos, int edge);
    DiagramBuilder& cap_left(int pos);
    DiagramBuilder& cap_right(int pos);
    DiagramBuilder& xpos(int pos);
    DiagramBuilder& xneg(int pos);
    DiagramBuilder& coupon(int pos, int n_in, Word out, Matrix m);
    DiagramBuilder& cell(const Cell& c);
    DiagramBuilder& scale(Scalar s);

    Diagram build() const { return d_; }
    Diagram& diagram() { return d_; }

private:
    Diagram d_;
    Word word_;
};

/**
 * Geometric cutting presentation: an endomorphism diagram of the single letter
 * found at level `level`, position `pos` (whose closure is the input diagram).
 * Without explicit coordinates the first level where `edge` has an upward letter
 * is used (falling back to a downward one).  Throws NoProjectiveEdge if the edge
 * is not typical-colored.
 */
Diagram cut(const ScalarContext& ctx, const Diagram& closed, int edge,
            std::optional<std::pair<int, int>> at = std::nullopt);

}  // namespace cgp
