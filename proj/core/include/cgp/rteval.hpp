#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "cgp/diagram.hpp"

namespace cgp {

struct EvalOptions {
    int jobs = 1;  // worker threads for Kirby expansions
};

/// Per-edge colors of a diagram whose labels are all concrete colors.
std::vector<Color> concrete_colors(const Diagram& d);

/**
 * Reshetikhin-Turaev evaluation of a diagram with the given per-edge colors:
 * a matrix realize(source) -> realize(target), prefactor included.
 */
Matrix evaluate_colored(const ScalarContext& ctx, const Diagram& d, const std::vector<Color>& colors);
/// evaluate_colored with the diagram's own (concrete) labels.
Matrix evaluate(const ScalarContext& ctx, const Diagram& d);

/// One term of the linear expansion of all formal labels.
struct ColoringTerm {
    Scalar coefficient{1.0, 0.0};
    std::vector<Color> colors;
};
/// Number of terms in the expansion (product of the formal label lengths).
std::size_t expansion_size(const Diagram& d);
/// The idx-th term of the expansion (mixed radix over formal edges in edge order).
ColoringTerm expansion_term(const Diagram& d, std::size_t idx);

/// Evaluate `fn` on every expansion term (in parallel with opts.jobs workers) and
/// add the results in term order, so the sum is independent of scheduling.
Scalar sum_over_expansion(const Diagram& d, const EvalOptions& opts,
                          const std::function<Scalar(const ColoringTerm&)>& fn);
Matrix sum_over_expansion_matrix(const Diagram& d, const EvalOptions& opts,
                                 const std::function<Matrix(const ColoringTerm&)>& fn);

/// Linear expansion over formal labels (Kirby colors) of evaluate_colored.
Matrix evaluate_formal(const ScalarContext& ctx, const Diagram& d, const EvalOptions& opts = {});

/// Where a closed diagram is opened: slice level and letter position.
struct CutSite {
    int level = 0;
    int pos = 0;
};

/**
 * Endomorphism of the letter at `site`: the diagram below the level gives a
 * vector L, the diagram above gives a covector U, and the strands to the left
 * and right of the letter are closed by the left and right partial traces of L U.
 */
Matrix cut_endomorphism(const ScalarContext& ctx, const Diagram& closed, const std::vector<Color>& colors,
                        const CutSite& site);

/// Cheapest site on `edge` (smallest intermediate dimension).
CutSite choose_cut_site(const ScalarContext& ctx, const Diagram& closed, int edge);

/// First edge that is typical-colored, Kirby-colored or uncolored; nullopt if none.
std::optional<int> find_projective_edge(const Diagram& d);

/**
 * Renormalized invariant F'(T) of a closed diagram with concrete colors.  The cut
 * edge defaults to the first typical edge.  Throws NotAdmissible without one.
 */
Scalar f_prime_colored(const ScalarContext& ctx, const Diagram& closed, const std::vector<Color>& colors,
                       std::optional<int> cut_edge = std::nullopt,
                       std::optional<CutSite> site = std::nullopt);
/// F' with formal labels expanded linearly.
Scalar f_prime(const ScalarContext& ctx, const Diagram& closed, std::optional<int> cut_edge = std::nullopt,
               const EvalOptions& opts = {});

}  // namespace cgp
