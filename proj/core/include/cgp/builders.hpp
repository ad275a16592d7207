#pragma once

#include <functional>
#include <vector>

#include "cgp/diagram.hpp"

namespace cgp {

/// Insert a curl of writhe `sign` (+1 or -1) on the letter at `pos`.
void add_curl(DiagramBuilder& b, int pos, int sign);
/// Insert |framing| curls of the sign of `framing`.
void add_curls(DiagramBuilder& b, int pos, int framing);

/// Closed unknot (one edge) with blackboard framing `framing`.
Diagram unknot(EdgeLabel label, int framing = 0);

/**
 * Add a circle around the letters [from, to) of the current word: it passes over
 * them on its way right and under them on its way back.  With orientation +1 an
 * upward strand links it with linking number -1; orientation -1 reverses the
 * circle.  Returns the new edge.
 */
int add_meridian(DiagramBuilder& b, int from, int to, EdgeLabel label, int framing = 0, int orientation = +1);

/// The cells add_meridian would append, for a word of the given width (new edge `edge`).
std::vector<Cell> meridian_cells(int width, int from, int to, int edge, int framing = 0, int orientation = +1);

/**
 * Closure of a braid on n strands.  Generators are 1-based: +i is sigma_i, -i its
 * inverse.  One edge per cycle of the braid permutation (numbered by the
 * smallest strand index of the cycle).  `labels[c]` colors cycle c.
 */
Diagram braid_closure(int n, const std::vector<int>& word, const std::vector<EdgeLabel>& labels);
/// Number of cycles (closure components) of a braid word.
int braid_components(int n, const std::vector<int>& word);

/// Diagram with the given framings added to each closure component as curls.
Diagram braid_closure_framed(int n, const std::vector<int>& word, const std::vector<EdgeLabel>& labels,
                             const std::vector<int>& extra_curls);

}  // namespace cgp
