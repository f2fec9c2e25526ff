#include <doctest.h>

#include <set>

#include "openbook/homogeneity.hpp"
#include "openbook/newton.hpp"
#include "openbook/parse.hpp"
#include "openbook/search.hpp"

using namespace openbook;

namespace {

std::vector<Int> iv(std::initializer_list<long> v) {
    std::vector<Int> out;
    for (long x : v) out.push_back(Int(x));
    return out;
}

const NewtonFace* find_face(const NewtonPolyhedron& np, const std::set<std::vector<Int>>& pts) {
    for (const auto& f : np.faces) {
        std::set<std::vector<Int>> s;
        for (int i : f.support) s.insert(np.support[i]);
        if (s == pts) return &f;
    }
    return nullptr;
}

}  // namespace

TEST_CASE("detect_radial: certificates and refusals") {
    auto f = parse_mixed("(2*z1^2 + z1*conj(z1))*z2").f;
    auto c = detect_radial(f);
    REQUIRE(c.has_value());
    CHECK(c->weights == iv({1, 1}));
    CHECK(c->degree == Int(3));

    auto broughton_real = parse_real_map("vars: x, y\nx + x^2*y").map;
    CHECK_FALSE(detect_radial(broughton_real).has_value());
    auto broughton_cx = parse_mixed("vars: x, y\nx + x^2*y").f;
    CHECK_FALSE(detect_radial(broughton_cx).has_value());

    auto z1 = parse_mixed("z1").f;
    auto cz = detect_radial(z1);
    REQUIRE(cz.has_value());
    CHECK(cz->weights == iv({1}));
    CHECK(cz->degree == Int(1));
}

TEST_CASE("radial identity holds exactly for detected certificates") {
    for (const char* text : {"(2*z1^2 + z1*conj(z1))*z2", "z1*conj(z1)*z2", "z1^3*z2 + z2^4"}) {
        auto f = parse_mixed(text).f;
        auto c = detect_radial(f);
        if (!c) continue;
        RadialCertificate rc{expand_weights_to_real(c->weights), c->degree};
        CHECK(radial_identity_holds(realify(f), rc));
    }
    // a real map: the scaled identity in an auxiliary variable
    auto m = parse_real_map("x1^2*x2; x2^3").map;
    auto c = detect_radial(m);
    REQUIRE(c.has_value());
    CHECK(radial_identity_holds(m, *c));
}

TEST_CASE("detect_polar: certificates, preferences, refusals") {
    auto f1 = parse_mixed("z1*conj(z1)*z2").f;  // |z1|^2 z2
    auto c1 = detect_polar(f1);
    REQUIRE(c1.has_value());
    CHECK(c1->degree > 0);
    CHECK(c1->all_positive);
    CHECK(c1->weights == iv({1, 1}));
    CHECK(c1->degree == Int(1));

    auto f2 = parse_mixed("(z1 + z3^5)*conj(z1)*z2").f;
    auto c2 = detect_polar(f2);
    REQUIRE(c2.has_value());
    CHECK(c2->weights[0] == 5 * c2->weights[2]);
    CHECK(c2->all_positive);
    CHECK(c2->degree == Int(1));

    CHECK_FALSE(detect_polar(parse_mixed("z1 + conj(z1)").f).has_value());

    // forced zero weight: (2 z1^2 + z1 conj(z1)) z2 has p1 = 0
    auto c3 = detect_polar(parse_mixed("(2*z1^2 + z1*conj(z1))*z2").f);
    REQUIRE(c3.has_value());
    CHECK(c3->weights == iv({0, 1}));
    CHECK_FALSE(c3->all_positive);

    // forced negative weight: z1(1 + |z2|^2 + z1 z2^4)
    auto c4 = detect_polar(parse_mixed("z1*(1 + z2*conj(z2) + z1*z2^4)").f);
    REQUIRE(c4.has_value());
    CHECK_FALSE(c4->all_positive);
    CHECK(c4->degree == Int(4));
    CHECK(c4->weights == iv({4, -1}));
}

TEST_CASE("polar identity holds exactly for detected certificates") {
    for (const char* text :
         {"z1*conj(z1)*z2", "(z1 + z3^5)*conj(z1)*z2", "z1*(1 + z2*conj(z2) + z1*z2^4)",
          "(2*z1^2 + z1*conj(z1))*z2"}) {
        auto f = parse_mixed(text).f;
        auto c = detect_polar(f);
        REQUIRE(c.has_value());
        CHECK(polar_identity_holds(f, *c));
    }
}

TEST_CASE("polar degree of conj products of radial holomorphic factors") {
    // g, h holomorphic and radial with compatible weights: the polar degree
    // of g*conj(h) is deg g - deg h
    auto g = parse_mixed("vars: z1, z2\nz1^3*z2").f;  // degree 4
    auto h = parse_mixed("vars: z1, z2\nz1").f;       // degree 1
    auto f = conj_product(g, h);
    auto c = detect_polar(f);
    REQUIRE(c.has_value());
    // with weights (1,1): k = 4 - 1 = 3, shared by every term
    for (const auto& [e, coef] : f.poly().terms()) {
        Int s = 0;
        for (int j = 0; j < 2; ++j) s += Int(e[j]) - Int(e[2 + j]);
        CHECK(s == Int(3));
    }
    CHECK(c->degree == Int(3));
}

TEST_CASE("newton polyhedron: the two-face example") {
    auto f = parse_mixed("z1*(1 + z2*conj(z2) + z1*z2^4)").f;
    auto np = newton_polyhedron(f);
    CHECK(np.n == 2);
    REQUIRE(np.support.size() == 3);
    CHECK(np.support[0] == iv({1, 0}));
    CHECK(np.support[1] == iv({1, 2}));
    CHECK(np.support[2] == iv({2, 4}));
    CHECK(np.hull_dim == 2);
    CHECK(np.vertices.size() == 3);

    // the "infinity-facing" edge through (1,2) and (2,4)
    const NewtonFace* edge = find_face(np, {iv({1, 2}), iv({2, 4})});
    REQUIRE(edge != nullptr);
    CHECK(edge->dim == 1);
    CHECK(edge->at_infinity);

    // the x = 1 edge is a hull facet but faces the finite side
    const NewtonFace* finite_edge = find_face(np, {iv({1, 0}), iv({1, 2})});
    REQUIRE(finite_edge != nullptr);
    CHECK_FALSE(finite_edge->at_infinity);

    // face polynomial on the bad face
    auto fd = face_polynomial(f, np, *edge);
    CHECK(fd == parse_mixed("z1*z2*conj(z2) + z1^2*z2^4").f);

    // vertex face at (1,0) gives back z1
    const NewtonFace* v = find_face(np, {iv({1, 0})});
    REQUIRE(v != nullptr);
    CHECK(face_polynomial(f, np, *v) == parse_mixed("vars: z1, z2\nz1").f);

    // heuristic candidates include the bad edge
    auto cands = bad_face_candidates(np);
    bool found = false;
    for (int idx : cands) found = found || &np.faces[idx] == edge;
    CHECK(found);
}

TEST_CASE("newton polyhedron: degenerate hulls") {
    auto single = newton_polyhedron(parse_mixed("vars: z1, z2\nz1").f);
    CHECK(single.hull_dim == 0);
    REQUIRE(single.support.size() == 1);
    CHECK(single.support[0] == iv({1, 0}));
    REQUIRE(single.faces.size() == 1);
    CHECK(single.faces[0].at_infinity);

    // x + x^2 y: segment hull, two vertices plus the edge
    auto seg = newton_polyhedron(parse_mixed("vars: x, y\nx + x^2*y").f);
    CHECK(seg.hull_dim == 1);
    CHECK(seg.support.size() == 2);
    int vertex_faces = 0, edge_faces = 0;
    for (const auto& f : seg.faces) {
        if (f.dim == 0) ++vertex_faces;
        if (f.dim == 1) ++edge_faces;
    }
    CHECK(vertex_faces == 2);
    CHECK(edge_faces == 1);
    for (const auto& f : seg.faces) CHECK(f.at_infinity);  // lineality available

    // single-term polynomial: its face polynomial is itself
    auto one = newton_polyhedron(parse_mixed("z1^2*conj(z2)").f);
    REQUIRE(one.faces.size() == 1);
    CHECK(face_polynomial(parse_mixed("z1^2*conj(z2)").f, one, one.faces[0]) ==
          parse_mixed("z1^2*conj(z2)").f);
}

TEST_CASE("facet polynomials cover the hull boundary support") {
    auto f = parse_mixed("z1*(1 + z2*conj(z2) + z1*z2^4)").f;
    auto np = newton_polyhedron(f);
    std::set<int> covered;
    for (const auto& face : np.faces)
        if (face.facet)
            for (int i : face.support) covered.insert(i);
    for (int v : np.vertices) CHECK(covered.count(v));
}

TEST_CASE("foreign face is rejected") {
    auto f = parse_mixed("z1*(1 + z2*conj(z2) + z1*z2^4)").f;
    auto g = parse_mixed("vars: z1, z2, z3\nz1*z2*z3").f;
    auto np = newton_polyhedron(f);
    CHECK_THROWS(face_polynomial(g, np, np.faces[0]));
    NewtonFace fake;
    fake.support = {17};
    CHECK_THROWS(face_polynomial(f, np, fake));
}

TEST_CASE("torus criticality search") {
    SearchBudget budget;
    budget.starts = 64;
    budget.seed = 5;
    budget.tol = 1e-6;

    // real-valued face polynomial: everything on the torus is critical
    auto r = quotient_critical_on_torus(parse_mixed("z1*conj(z1)").f, budget);
    CHECK(r.witness_found);

    // z1: the phase map is regular on the torus
    auto e = quotient_critical_on_torus(parse_mixed("z1").f, budget);
    CHECK_FALSE(e.witness_found);
    CHECK(e.min_residual > 1e-3);
}

TEST_CASE("codim at infinity") {
    SearchBudget budget;
    budget.starts = 64;
    budget.seed = 3;

    auto two_lines = codim_at_infinity(realify(parse_mixed("z1*z2").f), 1e3, budget);
    CHECK(two_lines.status == CodimStatus::Confirmed);
    CHECK(two_lines.codim == 2);

    auto empty = codim_at_infinity(parse_real_map("x1^2 + x2^2").map, 1e3, budget);
    CHECK(empty.status == CodimStatus::Unknown);
    CHECK(empty.note.find("empty") != std::string::npos);

    auto broughton_mixed = codim_at_infinity(realify(parse_mixed("z1*(1 + conj(z1)*z2)").f), 1e3,
                                             budget);
    CHECK(broughton_mixed.status == CodimStatus::Confirmed);
    CHECK(broughton_mixed.codim == 2);
}

TEST_CASE("singular locus survey: |z1|^2 z2 has unbounded Sing inside V") {
    SearchBudget budget;
    budget.starts = 96;
    budget.seed = 17;
    auto survey = survey_singular_locus(realify(parse_mixed("z1*conj(z1)*z2").f), budget);
    CHECK(survey.found_any);
    CHECK(survey.subset_V);
    CHECK_FALSE(survey.cap_V_bounded);
}
