#include "cgp/fixtures.hpp"

#include "cgp/builders.hpp"
#include "cgp/errors.hpp"

namespace cgp::fixtures {

namespace {

SurgeryPresentation presentation(Diagram d, std::vector<int> comps, std::vector<Scalar> degrees) {
    SurgeryPresentation p;
    p.diagram = std::move(d);
    p.surgery_components = std::move(comps);
    for (const auto& g : degrees) p.meridian_degrees.emplace_back(g);
    return p;
}

}  // namespace

SurgeryPresentation s3_unknot(Scalar alpha) { return presentation(unknot(Color::typical(alpha), 0), {}, {}); }

SurgeryPresentation s3_blowup(Scalar alpha, int sign) {
    DiagramBuilder b;
    const int v = b.add_edge(Color::typical(alpha));
    b.cup_left(0, v);
    add_curl(b, 0, sign);
    const int s = add_meridian(b, 0, 1, Uncolored{}, sign);
    b.cap_right(0);
    SurgeryPresentation p = presentation(b.build(), {s}, {Scalar(0.0, 0.0)});
    // framing * x + residual = 0
    p.meridian_degrees[0] = Degree(-consistency_residuals(p)[0] / static_cast<double>(sign));
    return p;
}

SurgeryPresentation s3_hopf_critical(Scalar alpha) {
    DiagramBuilder b;
    const int e0 = b.add_edge(Uncolored{}), e1 = b.add_edge(Uncolored{});
    b.cup_left(0, e0);
    b.cup_left(1, e1);
    add_meridian(b, 0, 1, Color::typical(alpha), 0);
    b.xpos(0);
    b.xpos(0);
    b.cap_right(1);
    b.cap_right(0);
    SurgeryPresentation p = presentation(b.build(), {e0, e1}, {Scalar(0.0, 0.0), Scalar(0.0, 0.0)});
    // Lk = [[0,1],[1,0]]: the second degree cancels the meridian's contribution to the first longitude.
    p.meridian_degrees[1] = Degree(-consistency_residuals(p)[0]);
    return p;
}

SurgeryPresentation s1s2_meridians(Scalar alpha, Scalar g) {
    DiagramBuilder b;
    const int l = b.add_edge(Uncolored{});
    b.cup_left(0, l);
    add_meridian(b, 0, 1, Color::typical(alpha), 0, +1);
    add_meridian(b, 0, 1, Color::typical(alpha), 0, -1);
    b.cap_right(0);
    return presentation(b.build(), {l}, {g});
}

SurgeryPresentation lens51_unknot(Scalar g1) { return presentation(unknot(Uncolored{}, -5), {0}, {g1}); }

SurgeryPresentation lens51_hopf(Scalar g1) {
    return presentation(braid_closure_framed(2, {1, 1}, {Uncolored{}, Uncolored{}}, {-4, 1}), {0, 1}, {g1, -g1});
}

SurgeryPresentation lens51_slide(Scalar g1) {
    return presentation(braid_closure_framed(2, {1, 1, 1, 1}, {Uncolored{}, Uncolored{}}, {-1, 1}), {0, 1},
                        {g1, -2.0 * g1});
}

SurgeryPresentation lens52_hopf(Scalar g1) {
    return presentation(braid_closure_framed(2, {1, 1}, {Uncolored{}, Uncolored{}}, {-3, -2}), {0, 1},
                        {g1, 3.0 * g1});
}

Diagram trefoil(Scalar alpha) { return braid_closure_framed(2, {1, 1, 1}, {Color::typical(alpha)}, {-3}); }

Diagram figure_eight(Scalar alpha) {
    return braid_closure_framed(3, {1, -2, 1, -2}, {Color::typical(alpha)}, {0});
}

Diagram hopf(Scalar alpha, Scalar beta) {
    return braid_closure(2, {1, 1}, {Color::typical(alpha), Color::typical(beta)});
}

Diagram close_endomorphism(const Diagram& endo) {
    const Word t = target(endo);
    if (endo.source.size() != 1 || t.size() != 1 || endo.source[0].sign != +1 || t[0].sign != +1)
        throw Error(ErrorKind::BoundaryMismatch, "closure needs an endomorphism of one upward letter");
    const EdgeLabel label = endo.edges[endo.source[0].edge];
    DiagramBuilder cup;
    cup.cup_left(0, cup.add_edge(label));
    const Diagram id_dual = identity_diagram({Letter{-1, 0}}, {label});
    const Diagram mid = tensor(endo, id_dual);
    DiagramBuilder cap(Word{Letter{+1, 0}, Letter{-1, 0}}, {label});
    cap.cap_right(0);
    return compose(compose(cup.build(), mid), cap.build());
}

Diagram edge_connected_sum(const ScalarContext& ctx, const Diagram& a, int edge_a, const Diagram& b, int edge_b) {
    return close_endomorphism(compose(cut(ctx, a, edge_a), cut(ctx, b, edge_b)));
}

SurgeryPresentation as_surgery(const SurgeryPresentation& p, int edge, const Degree& g, int extra_defect) {
    SurgeryPresentation out = p;
    out.diagram.edges.at(edge) = Uncolored{};
    out.surgery_components.push_back(edge);
    out.meridian_degrees.push_back(g);
    out.signature_defect += extra_defect;
    return out;
}

std::vector<KirbyPair> kirby_pairs(Scalar alpha) {
    std::vector<KirbyPair> pairs;
    pairs.push_back({"S3 blow-up +1", s3_unknot(alpha), s3_blowup(alpha, +1)});
    pairs.push_back({"S3 blow-up -1", s3_unknot(alpha), s3_blowup(alpha, -1)});
    for (int j = 1; j <= 4; ++j) {
        const Scalar g(0.4 * j, 0.0);
        const std::string tag = " g1=" + std::to_string(2 * j) + "/5";
        pairs.push_back({"L(5,1) handle slide" + tag, lens51_hopf(g), lens51_slide(g)});
        pairs.push_back({"L(5,1) blow-up" + tag, lens51_unknot(g), lens51_hopf(g)});
    }
    return pairs;
}

}  // namespace cgp::fixtures
