// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line. Run via ctest or directly: ./acceptance_tests -d yes

#include <doctest.h>

#include <iostream>
#include <random>

#include "helpers.hpp"
#include "openbook/decision.hpp"
#include "openbook/newton.hpp"
#include "openbook/parse.hpp"
#include "openbook/report.hpp"

using namespace openbook;
using openbook::testhelp::proportionality;

namespace {

struct Criterion {
    const char* id;
    bool passed = false;
    ~Criterion() { std::cout << (passed ? "[PASS] " : "[FAIL] ") << id << "\n"; }
};

const char* kExample32 = "vars: x, y, z\ny*(2*x^2*y^2 - 9*x*y + 12); z";
const char* kExample44 = "vars: x, y\n(2 + x)*x^2*y*conj(x)";
const char* kExample12 = "(2*z1^2 + z1*conj(z1))*z2";
const char* kExample411 = "z1*(1 + z2*conj(z2) + z1*z2^4)";
const char* kBroughtonMixed = "vars: x, y\nx*(1 + conj(x)*y)";

AssembleOptions accept_options(std::uint64_t seed = 2026) {
    AssembleOptions o;
    o.wmax = 4;
    o.order = 6;
    o.starts = 128;
    o.seed = seed;
    return o;
}

AsymptoticOptions arc_options(std::uint64_t seed = 2026) {
    AsymptoticOptions o;
    o.wmax = 4;
    o.order = 6;
    o.starts = 128;
    o.seed = seed;
    return o;
}

bool chain_cites(const OpenBookVerdict& v, const std::string& needle) {
    for (const auto& f : v.chain)
        if (f.citation.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("criterion 1: Milnor generator exactness (Example 3.2)") {
    Criterion c{"1 Milnor generator exactness"};
    auto m = parse_real_map(kExample32).map;
    auto sys = milnor_system(m);
    REQUIRE(sys.generators.size() == 1);
    auto target = parse_real_map("vars: x, y, z\n4*x*y^4 - 9*y^3 - 6*x^3*y^2 + 18*x^2*y - 12*x")
                      .map.components[0];
    auto ratio = proportionality(sys.generators[0], target);
    REQUIRE(ratio.has_value());
    CHECK(*ratio != 0);
    c.passed = ratio.has_value() && *ratio != 0;
}

TEST_CASE("criterion 2: singular locus of Example 4.4") {
    Criterion c{"2 singular locus reproduction"};
    auto f = parse_mixed(kExample44).f;
    auto map = realify(f);
    auto sing = sing_system(map);
    CompiledSystem ssys = compile_system(sing.generators);

    Rng rng(424242);
    int found = 0, misses = 0;
    for (int s = 0; s < 256; ++s) {
        double radius = std::pow(10.0, rng.uniform(-0.5, 1.2));
        Eigen::VectorXd x0 = radius * rng.unit_vector(4);
        LMResult lm = lm_minimize(as_function(ssys), x0);
        if (ssys.relative_residual(lm.x) > 1e-10) continue;
        ++found;
        // distance to {x = 0} union {(-2, 0)} (in complex x-coordinates)
        double d_line = std::hypot(lm.x(0), lm.x(1));
        double d_point = std::sqrt(std::pow(lm.x(0) + 2, 2) + std::pow(lm.x(1), 2) +
                                   std::pow(lm.x(2), 2) + std::pow(lm.x(3), 2));
        if (std::min(d_line, d_point) > 1e-6) ++misses;
    }
    REQUIRE(found >= 50);
    CHECK(misses == 0);
    c.passed = found >= 50 && misses == 0;
}

TEST_CASE("criterion 3: homogeneity certificates") {
    Criterion c{"3 homogeneity certificates"};
    bool ok = true;

    auto r = detect_radial(parse_mixed(kExample12).f);
    ok = ok && r.has_value() && r->weights == std::vector<Int>{Int(1), Int(1)} &&
         r->degree == Int(3);

    auto p1 = detect_polar(parse_mixed("z1*conj(z1)*z2").f);
    ok = ok && p1.has_value() && p1->degree > 0;

    auto p2 = detect_polar(parse_mixed("(z1 + z3^5)*conj(z1)*z2").f);
    ok = ok && p2.has_value() && p2->weights[0] == 5 * p2->weights[2];

    ok = ok && !detect_radial(parse_real_map("vars: x, y\nx + x^2*y").map).has_value();

    CHECK(ok);
    c.passed = ok;
}

TEST_CASE("criterion 4: Euler identity for radial certificates") {
    Criterion c{"4 Euler identity"};
    bool ok = true;
    // mixed inputs where detection succeeds
    for (const char* text : {kExample12, "z1*conj(z1)*z2", "z1", "z1^2*z2 + z2^3"}) {
        auto f = parse_mixed(text).f;
        auto cert = detect_radial(f);
        if (!cert) continue;
        RadialCertificate rc{expand_weights_to_real(cert->weights), cert->degree};
        for (const auto& res : euler_residues(realify(f), rc)) ok = ok && res.is_zero();
    }
    // real maps
    for (const char* text : {"x1^2*x2; x2^3", "x1*x2", "x1^3 + x1*x2^2; x1^2*x2"}) {
        auto m = parse_real_map(text).map;
        auto cert = detect_radial(m);
        if (!cert) continue;
        for (const auto& res : euler_residues(m, *cert)) ok = ok && res.is_zero();
    }
    CHECK(ok);
    c.passed = ok;
}

TEST_CASE("criterion 5: witness arcs for Example 3.2") {
    Criterion c{"5 witness arcs"};
    auto m = parse_real_map(kExample32).map;
    bool ok = true;

    auto check_witness = [&](const BoundednessVerdict& v) {
        if (v.status != BoundednessStatus::Unbounded || !v.witness) return false;
        const auto& w = *v.witness;
        if (!(w.arc.active(0) && w.arc.active(1))) return false;
        if (!(w.arc.lead_exp[0] == 1 && w.arc.lead_exp[1] == -1)) return false;
        if (!w.exact_arc) return false;
        Rational cc = w.exact_arc->coeffs[1][0] / w.exact_arc->coeffs[0][0];
        if (-6 * cc * cc + 18 * cc - 12 != 0) return false;
        if (!(cc == Rational(1) || cc == Rational(2))) return false;
        // independent recheck through arc_substitute on the exact arc
        for (const auto& g : milnor_system(m).generators) {
            auto bound = arc_degree_bound(g, *w.exact_arc);
            if (!bound) continue;
            auto series = arc_substitute(g, *w.exact_arc);
            for (const auto& [e, coeff] : series.coeffs)
                if (e > *bound - w.cancelled_orders && coeff != 0) return false;
        }
        return w.check_residual < 1e-7;
    };

    auto milnor_v = boundedness(milnor_system(m), &m, arc_options());
    ok = ok && check_witness(milnor_v);

    AsymptoticOptions qopts = arc_options();
    qopts.constraint = VConstraint::ExcludeV;
    auto quotient_v = boundedness(milnor_quotient_system(m), &m, qopts);
    ok = ok && quotient_v.status == BoundednessStatus::Unbounded && quotient_v.witness &&
         quotient_v.witness->arc.lead_exp[0] == 1 && quotient_v.witness->arc.lead_exp[1] == -1;
    if (ok && quotient_v.witness->exact_arc) {
        Rational cc =
            quotient_v.witness->exact_arc->coeffs[1][0] / quotient_v.witness->exact_arc->coeffs[0][0];
        ok = ok && (-6 * cc * cc + 18 * cc - 12 == 0);
    }

    CHECK(ok);
    c.passed = ok;
}

TEST_CASE("criterion 6: S(f) circle of Example 4.11") {
    Criterion c{"6 S(f) circle"};
    auto f = parse_mixed(kExample411).f;
    auto vs = estimate_S(realify(f), arc_options());
    int good = 0;
    for (const auto& l : vs.limits) {
        double mod = std::hypot(l[0], l[1]);
        if (std::abs(mod - 0.25) < 1e-3) ++good;
    }
    CHECK(good >= 8);
    CHECK(vs.shape == AsymptoticValueSet::Shape::Circle);
    CHECK(std::abs(vs.circle_radius - 0.25) < 1e-3);
    c.passed = good >= 8 && std::abs(vs.circle_radius - 0.25) < 1e-3;
}

TEST_CASE("criterion 7: semi-tame detection for the mixed Broughton example") {
    Criterion c{"7 semi-tame detection"};
    auto f = parse_mixed(kBroughtonMixed).f;
    auto vs = estimate_S(realify(f), arc_options());
    bool has_samples = !vs.limits.empty();
    bool all_zero = true;
    for (const auto& l : vs.limits) {
        double n = std::hypot(l[0], l[1]);
        if (n > 1e-6) all_zero = false;
    }
    CHECK(has_samples);
    CHECK(all_zero);
    c.passed = has_samples && all_zero;
}

TEST_CASE("criterion 8: face machinery of Example 4.11") {
    Criterion c{"8 face machinery"};
    auto f = parse_mixed(kExample411).f;
    auto np = newton_polyhedron(f);
    const NewtonFace* bad = nullptr;
    for (const auto& face : np.faces) {
        if (face.dim != 1) continue;
        std::set<std::vector<Int>> pts;
        for (int i : face.support) pts.insert(np.support[i]);
        if (pts == std::set<std::vector<Int>>{{Int(1), Int(2)}, {Int(2), Int(4)}}) bad = &face;
    }
    REQUIRE(bad != nullptr);
    auto fd = face_polynomial(f, np, *bad);
    bool exact = fd == parse_mixed("z1*z2*conj(z2) + z1^2*z2^4").f;
    CHECK(exact);

    SearchBudget budget;
    budget.starts = 512;
    budget.seed = 2026;
    budget.tol = 1e-6;
    auto torus = quotient_critical_on_torus(fd, budget);
    CHECK_FALSE(torus.witness_found);
    c.passed = exact && !torus.witness_found;
}

TEST_CASE("criterion 9: verdict regression table") {
    Criterion c{"9 verdict regression table"};
    bool ok = true;
    auto proved = [](const OpenBookVerdict& v) {
        return v.status == VerdictStatus::Proved || v.status == VerdictStatus::ProvedQualified;
    };

    {  // Example 1.2: proved, singular binding
        auto parsed = parse_mixed(kExample12);
        auto v = decide(make_input(parsed.f, parsed.vars), accept_options());
        ok = ok && proved(v) && v.binding == BindingType::Singular;
    }
    {  // Example 3.2: refuted
        auto parsed = parse_real_map(kExample32);
        auto v = decide(make_input(parsed.map, parsed.vars), accept_options());
        ok = ok && v.status == VerdictStatus::Refuted;
    }
    {  // Example 4.4: proved
        auto parsed = parse_mixed(kExample44);
        auto v = decide(make_input(parsed.f, parsed.vars), accept_options());
        ok = ok && proved(v);
    }
    {  // mixed Broughton: proved with smooth binding via the corollary path
        auto parsed = parse_mixed(kBroughtonMixed);
        auto v = decide(make_input(parsed.f, parsed.vars), accept_options());
        ok = ok && proved(v) && v.binding == BindingType::Smooth &&
             chain_cites(v, "Corollary 3.5");
    }
    {  // |z1|^2 z2 via the circle action
        auto parsed = parse_mixed("z1*conj(z1)*z2");
        auto v = decide(make_input(parsed.f, parsed.vars), accept_options());
        ok = ok && proved(v) && v.binding == BindingType::Singular &&
             chain_cites(v, "Theorem 4.9");
    }
    {  // (z1 + z3^5) conj(z1) z2 via the circle action
        auto parsed = parse_mixed("(z1 + z3^5)*conj(z1)*z2");
        auto v = decide(make_input(parsed.f, parsed.vars), accept_options());
        ok = ok && proved(v) && chain_cites(v, "Theorem 4.9");
    }
    {  // Example 4.11: bounded-qualified condition (ii), semi-tame false,
       // chain through the main equivalence
        auto parsed = parse_mixed(kExample411);
        auto v = decide(make_input(parsed.f, parsed.vars), accept_options());
        ok = ok && proved(v) && chain_cites(v, "Theorem 3.3");
        ok = ok && v.report.cond_ii.status == BoundednessStatus::BoundedSearch;
        ok = ok && v.report.semi_tame.value == Tri::False;
    }
    CHECK(ok);
    c.passed = ok;
}

TEST_CASE("criterion 10: property suites") {
    Criterion c{"10 property suites"};
    bool ok = true;

    // nabla/omega bridge on 20 random mixed polynomials
    std::mt19937_64 rng(10101);
    auto random_mixed = [&](int n, int deg, int terms) {
        std::uniform_int_distribution<int> coef(-4, 4);
        std::uniform_int_distribution<int> expo(0, deg);
        CPoly p(2 * n);
        for (int t = 0; t < terms; ++t) {
            Expo e(2 * n, 0);
            int budget = deg;
            for (int j = 0; j < 2 * n; ++j) {
                int k = expo(rng) % (budget + 1);
                e[j] = k;
                budget -= k;
            }
            GaussianRational cc(Rational(coef(rng)), Rational(coef(rng)));
            if (!cc.is_zero()) p.add_term(e, cc);
        }
        return MixedPolynomial(n, p);
    };
    int bridged = 0;
    while (bridged < 20) {
        int n = 1 + bridged % 3;
        auto f = random_mixed(n, 4, 5);
        if (f.is_zero()) continue;
        auto nf = nabla(f);
        auto om = omega_matrix(realify(f));
        for (int j = 0; j < n; ++j) {
            auto [re, im] = realify_parts(nf[j]);
            ok = ok && re == om.rows[0][2 * j] * Rational(-1);
            ok = ok && im == om.rows[0][2 * j + 1] * Rational(-1);
        }
        ++bridged;
    }

    // containment M(Psi/|Psi|) subset M(Psi)\V on 1000 sampled points
    auto m = parse_real_map(kExample32).map;
    CompiledSystem qsys = compile_system(milnor_quotient_system(m).generators);
    CompiledSystem msys = compile_system(milnor_system(m).generators);
    CompiledSystem vsys = compile_system(m.components);
    Rng prng(5050);
    int contained = 0;
    while (contained < 1000) {
        Eigen::VectorXd x0 = prng.uniform(1.0, 50.0) * prng.unit_vector(3);
        LMResult lm = lm_minimize(as_function(qsys), x0);
        if (qsys.relative_residual(lm.x) > 1e-10) continue;
        if (vsys.relative_residual(lm.x) < 1e-6) continue;
        ok = ok && msys.relative_residual(lm.x) < 1e-9;
        ++contained;
        // spread new starts from perturbed solutions to cover the branch
        (void)0;
    }

    // SVD rank oracle against exact rank on 1000 random integer matrices
    std::uniform_int_distribution<int> entry(-9, 9);
    std::uniform_int_distribution<int> dim(2, 5);
    for (int round = 0; round < 1000; ++round) {
        int rows = dim(rng), cols = dim(rng), planted = std::min({rows, cols, 1 + round % 4});
        // rank-planted product of integer matrices
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, cols);
        Matrix<Rational> aq(rows, std::vector<Rational>(cols, Rational(0)));
        std::vector<std::vector<int>> left(rows, std::vector<int>(planted));
        std::vector<std::vector<int>> right(planted, std::vector<int>(cols));
        for (auto& row : left)
            for (auto& v : row) v = entry(rng);
        for (auto& row : right)
            for (auto& v : row) v = entry(rng);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                long s = 0;
                for (int k = 0; k < planted; ++k) s += long(left[i][k]) * right[k][j];
                a(i, j) = double(s);
                aq[i][j] = Rational(s);
            }
        int exact = rational_rank(aq);
        int numeric = numeric_rank(a, 1e-8);
        ok = ok && exact == numeric;
    }

    CHECK(ok);
    c.passed = ok;
}

TEST_CASE("criterion 11: sweep corroboration") {
    Criterion c{"11 sweep corroboration"};
    std::vector<double> radii{10.0, 100.0, 1000.0};

    auto empty_case = radius_sweep(realify(parse_mixed(kExample44).f), radii, 96, 2026);
    bool ok = true;
    for (const auto& row : empty_case.rows) ok = ok && row.solutions == 0;

    auto full_case = radius_sweep(parse_real_map(kExample32).map, radii, 96, 2026);
    for (const auto& row : full_case.rows) ok = ok && row.solutions >= 1;

    CHECK(ok);
    c.passed = ok;
}
