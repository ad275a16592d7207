#pragma once

#include <string>

#include <json.hpp>

#include "cgp/surgery.hpp"

namespace cgp {

using Json = nlohmann::ordered_json;

/// Scalars are written as [re, im]; {"re":..,"im":..}, [re, im] and plain numbers are read.
Json scalar_to_json(Scalar z);
Scalar scalar_from_json(const Json& j);

Json color_to_json(const Color& c);
Color color_from_json(const Json& j);
Json label_to_json(const EdgeLabel& l);
EdgeLabel label_from_json(const Json& j);

/**
 * {"source": [[sign, edge], ...], "edges": [label, ...],
 *  "slices": [{"cells": [cell]}, ...], "prefactor": [re, im]}
 * with cells {"kind": "XPos", "pos": 0} and, for cups, "edge"; coupons carry
 * "n_in", "out" and "matrix" (rows of [re, im] pairs).  Throws ParseError.
 */
Json diagram_to_json(const Diagram& d);
Diagram diagram_from_json(const Json& j);

/**
 * {"diagram": ..., "surgery_components": [edge, ...],
 *  "meridian_degrees": {"<edge>": [re, im], ...} (or an array aligned with the components),
 *  "graph_colors": {"<edge>": color, ...}, "signature_defect": n}
 */
Json presentation_to_json(const SurgeryPresentation& p);
SurgeryPresentation presentation_from_json(const Json& j);

/// Top-level input file: {"level": r, "precision": bits, "presentation": {...}}.
struct InputFile {
    int level = 0;
    unsigned precision = 53;
    SurgeryPresentation presentation;
};
InputFile parse_input(const std::string& text);
Json input_to_json(const InputFile& in);

Json constants_to_json(const InvariantConstants& k);

/// Serialization with fixed 17-significant-digit floats and insertion-ordered keys.
std::string dump_canonical(const Json& j, int indent = 2);

}  // namespace cgp
