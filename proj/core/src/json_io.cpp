#include "cgp/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "cgp/errors.hpp"

namespace cgp {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

int as_int(const Json& j, const char* what) {
    if (!j.is_number_integer()) parse_error(std::string(what) + " must be an integer");
    return j.get<int>();
}

double as_double(const Json& j, const char* what) {
    if (!j.is_number()) parse_error(std::string(what) + " must be a number");
    return j.get<double>();
}

CellKind kind_from_name(const std::string& s) {
    for (CellKind k : {CellKind::XPos, CellKind::XNeg, CellKind::CupL, CellKind::CupR, CellKind::CapL, CellKind::CapR,
                       CellKind::Coupon})
        if (s == cell_kind_name(k)) return k;
    parse_error("unknown cell kind \"" + s + "\"");
}

Letter letter_from_json(const Json& j) {
    if (j.is_array() && j.size() == 2) {
        const int s = as_int(j[0], "letter sign");
        if (s != 1 && s != -1) parse_error("letter sign must be +1 or -1");
        return Letter{s, as_int(j[1], "letter edge")};
    }
    if (j.is_object()) {
        const int s = as_int(field(j, "sign"), "letter sign");
        if (s != 1 && s != -1) parse_error("letter sign must be +1 or -1");
        return Letter{s, as_int(field(j, "edge"), "letter edge")};
    }
    parse_error("a letter is [sign, edge]");
}

Json letter_to_json(const Letter& l) { return Json::array({l.sign, l.edge}); }

void write_number(std::ostringstream& out, const Json& j) {
    if (j.is_number_integer() || j.is_number_unsigned()) {
        out << j.dump();
        return;
    }
    const double x = j.get<double>();
    if (!std::isfinite(x)) {
        out << "null";
        return;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
    std::string s = buf;
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    out << s;
}

void write(std::ostringstream& out, const Json& j, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
    const char* nl = indent > 0 ? "\n" : "";
    if (j.is_object()) {
        if (j.empty()) {
            out << "{}";
            return;
        }
        out << "{" << nl;
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out << "," << nl;
            first = false;
            out << pad << Json(it.key()).dump() << (indent > 0 ? ": " : ":");
            write(out, it.value(), indent, depth + 1);
        }
        out << nl << close_pad << "}";
    } else if (j.is_array()) {
        if (j.empty()) {
            out << "[]";
            return;
        }
        // Arrays of scalars stay on one line.
        bool flat = true;
        for (const auto& x : j) flat = flat && !x.is_structured();
        if (flat || indent == 0) {
            out << "[";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out << (indent > 0 ? ", " : ",");
                write(out, j[i], indent, depth + 1);
            }
            out << "]";
            return;
        }
        out << "[" << nl;
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) out << "," << nl;
            out << pad;
            write(out, j[i], indent, depth + 1);
        }
        out << nl << close_pad << "]";
    } else if (j.is_number()) {
        write_number(out, j);
    } else {
        out << j.dump();
    }
}

}  // namespace

Json scalar_to_json(Scalar z) { return Json::array({z.real(), z.imag()}); }

Scalar scalar_from_json(const Json& j) {
    if (j.is_number()) return Scalar(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2) return Scalar(as_double(j[0], "real part"), as_double(j[1], "imaginary part"));
    if (j.is_object() && j.contains("re"))
        return Scalar(as_double(j.at("re"), "re"), j.contains("im") ? as_double(j.at("im"), "im") : 0.0);
    parse_error("a scalar is a number, [re, im] or {\"re\":..,\"im\":..}");
}

Json color_to_json(const Color& c) {
    Json j = Json::object();
    if (c.is_typical())
        j["typical"] = Json{{"re", c.alpha.real()}, {"im", c.alpha.imag()}};
    else
        j["sigma"] = c.k;
    return j;
}

Color color_from_json(const Json& j) {
    if (j.is_object() && j.contains("typical")) return Color::typical(scalar_from_json(j.at("typical")));
    if (j.is_object() && j.contains("sigma")) {
        if (!j.at("sigma").is_number_integer()) parse_error("sigma weight must be an integer");
        return Color::sigma(j.at("sigma").get<long>());
    }
    parse_error("a color is {\"typical\": scalar} or {\"sigma\": k}");
}

Json label_to_json(const EdgeLabel& l) {
    if (std::holds_alternative<Uncolored>(l)) return "uncolored";
    if (const auto* c = std::get_if<Color>(&l)) return color_to_json(*c);
    const auto& f = std::get<FormalColorSum>(l);
    Json terms = Json::array();
    for (const auto& [coef, col] : f.terms) terms.push_back(Json{{"coef", scalar_to_json(coef)}, {"color", color_to_json(col)}});
    return Json{{"formal", Json{{"degree", scalar_to_json(f.degree.value())}, {"terms", terms}}}};
}

EdgeLabel label_from_json(const Json& j) {
    if (j.is_null() || (j.is_string() && j.get<std::string>() == "uncolored")) return Uncolored{};
    if (j.is_object() && j.contains("formal")) {
        const Json& f = j.at("formal");
        FormalColorSum out;
        out.degree = Degree(scalar_from_json(field(f, "degree")));
        const Json& terms = field(f, "terms");
        if (!terms.is_array()) parse_error("formal terms must be an array");
        for (const auto& t : terms) out.terms.emplace_back(scalar_from_json(field(t, "coef")), color_from_json(field(t, "color")));
        return out;
    }
    return color_from_json(j);
}

Json diagram_to_json(const Diagram& d) {
    Json j = Json::object();
    Json src = Json::array();
    for (const auto& l : d.source) src.push_back(letter_to_json(l));
    j["source"] = src;
    Json edges = Json::array();
    for (const auto& e : d.edges) edges.push_back(label_to_json(e));
    j["edges"] = edges;
    Json slices = Json::array();
    for (const auto& c : d.cells) {
        Json cell = Json::object();
        cell["kind"] = cell_kind_name(c.kind);
        cell["pos"] = c.pos;
        if (c.kind == CellKind::CupL || c.kind == CellKind::CupR) cell["edge"] = c.edge;
        if (c.kind == CellKind::Coupon) {
            cell["n_in"] = c.n_in;
            Json out = Json::array();
            for (const auto& l : c.out) out.push_back(letter_to_json(l));
            cell["out"] = out;
            Json rows = Json::array();
            for (Eigen::Index r = 0; r < c.matrix.rows(); ++r) {
                Json row = Json::array();
                for (Eigen::Index k = 0; k < c.matrix.cols(); ++k) row.push_back(scalar_to_json(c.matrix(r, k)));
                rows.push_back(row);
            }
            cell["matrix"] = rows;
        }
        slices.push_back(Json{{"cells", Json::array({cell})}});
    }
    j["slices"] = slices;
    j["prefactor"] = scalar_to_json(d.prefactor);
    return j;
}

Diagram diagram_from_json(const Json& j) {
    if (!j.is_object()) parse_error("a diagram must be a JSON object");
    Diagram d;
    if (j.contains("source")) {
        if (!j.at("source").is_array()) parse_error("source must be an array");
        for (const auto& l : j.at("source")) d.source.push_back(letter_from_json(l));
    }
    const Json& edges = field(j, "edges");
    if (!edges.is_array()) parse_error("edges must be an array");
    for (const auto& e : edges) d.edges.push_back(label_from_json(e));
    const Json& slices = field(j, "slices");
    if (!slices.is_array()) parse_error("slices must be an array");
    for (const auto& s : slices) {
        const Json& cells = field(s, "cells");
        if (!cells.is_array()) parse_error("slice cells must be an array");
        for (const auto& cj : cells) {
            const std::string kind = field(cj, "kind").is_string() ? cj.at("kind").get<std::string>() : "";
            if (kind == "Id") continue;
            Cell c;
            c.kind = kind_from_name(kind);
            c.pos = as_int(field(cj, "pos"), "cell position");
            if (c.kind == CellKind::CupL || c.kind == CellKind::CupR) c.edge = as_int(field(cj, "edge"), "cup edge");
            if (c.kind == CellKind::Coupon) {
                c.n_in = as_int(field(cj, "n_in"), "coupon n_in");
                for (const auto& l : field(cj, "out")) c.out.push_back(letter_from_json(l));
                const Json& rows = field(cj, "matrix");
                if (!rows.is_array()) parse_error("coupon matrix must be an array of rows");
                const Eigen::Index nr = static_cast<Eigen::Index>(rows.size());
                const Eigen::Index nc = nr ? static_cast<Eigen::Index>(rows[0].size()) : 0;
                c.matrix = Matrix::Zero(nr, nc);
                for (Eigen::Index r = 0; r < nr; ++r) {
                    if (!rows[r].is_array() || static_cast<Eigen::Index>(rows[r].size()) != nc)
                        parse_error("coupon matrix rows must have equal length");
                    for (Eigen::Index k = 0; k < nc; ++k) c.matrix(r, k) = scalar_from_json(rows[r][k]);
                }
            }
            d.cells.push_back(c);
        }
    }
    if (j.contains("prefactor")) d.prefactor = scalar_from_json(j.at("prefactor"));
    for (const auto& c : d.cells)
        if ((c.kind == CellKind::CupL || c.kind == CellKind::CupR) && (c.edge < 0 || c.edge >= d.num_edges()))
            parse_error("cup refers to an unknown edge");
    for (const auto& l : d.source)
        if (l.edge < 0 || l.edge >= d.num_edges()) parse_error("source letter refers to an unknown edge");
    return d;
}

Json presentation_to_json(const SurgeryPresentation& p) {
    Json j = Json::object();
    j["diagram"] = diagram_to_json(p.diagram);
    j["surgery_components"] = p.surgery_components;
    Json md = Json::object();
    for (std::size_t i = 0; i < p.surgery_components.size(); ++i)
        md[std::to_string(p.surgery_components[i])] = scalar_to_json(p.meridian_degrees[i].value());
    j["meridian_degrees"] = md;
    j["signature_defect"] = p.signature_defect;
    return j;
}

SurgeryPresentation presentation_from_json(const Json& j) {
    if (!j.is_object()) parse_error("a presentation must be a JSON object");
    SurgeryPresentation p;
    p.diagram = diagram_from_json(field(j, "diagram"));
    if (j.contains("surgery_components")) {
        if (!j.at("surgery_components").is_array()) parse_error("surgery_components must be an array");
        for (const auto& e : j.at("surgery_components")) {
            const int id = as_int(e, "surgery component");
            if (id < 0 || id >= p.diagram.num_edges()) parse_error("surgery component refers to an unknown edge");
            p.surgery_components.push_back(id);
        }
    }
    if (j.contains("graph_colors")) {
        const Json& gc = j.at("graph_colors");
        if (!gc.is_object()) parse_error("graph_colors must be an object keyed by edge id");
        for (auto it = gc.begin(); it != gc.end(); ++it) {
            int id = -1;
            try {
                id = std::stoi(it.key());
            } catch (const std::exception&) {
                parse_error("graph_colors key \"" + it.key() + "\" is not an edge id");
            }
            if (id < 0 || id >= p.diagram.num_edges()) parse_error("graph_colors refers to an unknown edge");
            p.diagram.edges[id] = color_from_json(it.value());
        }
    }
    const Json empty = Json::object();
    const Json& md = j.contains("meridian_degrees") ? j.at("meridian_degrees") : empty;
    if (md.is_array()) {
        if (md.size() != p.surgery_components.size()) parse_error("one meridian degree per surgery component");
        for (const auto& g : md) p.meridian_degrees.emplace_back(scalar_from_json(g));
    } else if (md.is_object()) {
        for (int e : p.surgery_components) {
            const std::string key = std::to_string(e);
            if (!md.contains(key)) parse_error("missing meridian degree for surgery edge " + key);
            p.meridian_degrees.emplace_back(scalar_from_json(md.at(key)));
        }
    } else {
        parse_error("meridian_degrees must be an object or an array");
    }
    if (j.contains("signature_defect")) p.signature_defect = as_int(j.at("signature_defect"), "signature_defect");
    return p;
}

InputFile parse_input(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        parse_error(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) parse_error("input must be a JSON object");
    InputFile in;
    in.level = as_int(field(j, "level"), "level");
    if (in.level < 4 || in.level % 2 != 0) parse_error("level must be an even integer >= 4");
    if (j.contains("precision")) {
        const int p = as_int(j.at("precision"), "precision");
        if (p < 53) parse_error("precision must be at least 53 bits");
        in.precision = static_cast<unsigned>(p);
    }
    in.presentation = presentation_from_json(field(j, "presentation"));
    return in;
}

Json input_to_json(const InputFile& in) {
    Json j = Json::object();
    j["level"] = in.level;
    j["precision"] = in.precision;
    j["presentation"] = presentation_to_json(in.presentation);
    return j;
}

Json constants_to_json(const InvariantConstants& k) {
    Json j = Json::object();
    j["delta_minus"] = scalar_to_json(k.delta_minus);
    j["delta_plus"] = scalar_to_json(k.delta_plus);
    j["D"] = scalar_to_json(k.D);
    j["eta"] = scalar_to_json(k.eta);
    j["delta"] = scalar_to_json(k.delta);
    j["zeta"] = scalar_to_json(k.zeta);
    j["z_mod_zplus"] = k.z_mod_zplus;
    return j;
}

std::string dump_canonical(const Json& j, int indent) {
    std::ostringstream out;
    write(out, j, indent, 0);
    return out.str();
}

}  // namespace cgp
