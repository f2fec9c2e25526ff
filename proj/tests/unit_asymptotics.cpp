#include <doctest.h>

#include "openbook/asymptotics.hpp"
#include "openbook/parse.hpp"

using namespace openbook;

namespace {

const char* kExample32 = "vars: x, y, z\ny*(2*x^2*y^2 - 9*x*y + 12); z";

AsymptoticOptions fast_opts(int wmax = 3, int order = 4) {
    AsymptoticOptions o;
    o.wmax = wmax;
    o.order = order;
    o.starts = 48;
    o.seed = 11;
    return o;
}

}  // namespace

TEST_CASE("leading systems: hyperbola keeps its tied form") {
    auto m = parse_real_map("x1*x2 - 1").map;
    MilnorSystem sys{SystemKind::ZeroLocus, 2, m.components, {}, "test"};
    auto all = leading_systems(sys, 1);
    bool found = false;
    for (const auto& ls : all) {
        if (ls.dir.active != std::vector<int>{0, 1}) continue;
        if (ls.dir.weights != std::vector<long long>{1, -1}) continue;
        REQUIRE(ls.equations.size() == 1);
        CHECK(ls.equations[0] == m.components[0]);  // both terms tie at weight 0
        CHECK(ls.degrees[0] == 0);
        found = true;
    }
    CHECK(found);
}

TEST_CASE("leading systems: the Milnor generator of the 3-variable example") {
    auto m = parse_real_map(kExample32).map;
    auto sys = milnor_system(m);
    auto all = leading_systems(sys, 3);
    bool found = false;
    for (const auto& ls : all) {
        if (ls.dir.active != std::vector<int>{0, 1}) continue;
        if (ls.dir.weights[0] != 1 || ls.dir.weights[1] != -1) continue;
        REQUIRE(ls.equations.size() == 1);
        auto expected =
            parse_real_map("vars: x, y, z\n-6*x^3*y^2 + 18*x^2*y - 12*x").map.components[0];
        // the generator sign depends on the minor convention
        CHECK((ls.equations[0] == expected || ls.equations[0] == -expected));
        found = true;
    }
    CHECK(found);
}

TEST_CASE("leading systems: sums of squares leave no viable direction") {
    auto m = parse_real_map("x1^2 + x2^2").map;
    MilnorSystem sys{SystemKind::ZeroLocus, 2, m.components, {}, "test"};
    auto all = leading_systems(sys, 2);
    // directions exist (ties of the two squares) but none admits a real
    // solution with nonzero coordinates; boundedness must come back bounded
    AsymptoticOptions opts = fast_opts(2, 3);
    auto verdict = boundedness(sys, nullptr, opts);
    CHECK(verdict.status == BoundednessStatus::BoundedSearch);
    (void)all;
}

TEST_CASE("boundedness: the 3-variable example is unbounded with the expected witness") {
    auto m = parse_real_map(kExample32).map;
    auto milnor = milnor_system(m);

    AsymptoticOptions opts = fast_opts(3, 5);
    auto v = boundedness(milnor, &m, opts);
    REQUIRE(v.status == BoundednessStatus::Unbounded);
    REQUIRE(v.witness.has_value());
    const auto& w = *v.witness;
    // witness leading exponents (1, -1, anything)
    CHECK(w.arc.active(0));
    CHECK(w.arc.active(1));
    CHECK(w.arc.lead_exp[0] == 1);
    CHECK(w.arc.lead_exp[1] == -1);
    // exact leading coefficient satisfying -6c^2 + 18c - 12 = 0
    REQUIRE(w.exact_arc.has_value());
    Rational c = w.exact_arc->coeffs[1][0] / w.exact_arc->coeffs[0][0];
    CHECK((-6 * c * c + 18 * c - 12) == Rational(0));

    auto quotient = milnor_quotient_system(m);
    AsymptoticOptions qopts = fast_opts(3, 5);
    qopts.constraint = VConstraint::ExcludeV;
    auto qv = boundedness(quotient, &m, qopts);
    REQUIRE(qv.status == BoundednessStatus::Unbounded);
    REQUIRE(qv.witness.has_value());
    CHECK(qv.witness->arc.lead_exp[0] == 1);
    CHECK(qv.witness->arc.lead_exp[1] == -1);
}

TEST_CASE("boundedness: monotone refinement never flips unbounded back") {
    auto m = parse_real_map(kExample32).map;
    auto milnor = milnor_system(m);
    auto v2 = boundedness(milnor, &m, fast_opts(2, 3));
    auto v4 = boundedness(milnor, &m, fast_opts(4, 6));
    if (v2.status == BoundednessStatus::Unbounded)
        CHECK(v4.status == BoundednessStatus::Unbounded);
}

TEST_CASE("boundedness: certificate claims short-circuit") {
    auto m = parse_real_map("x1; x2").map;
    auto quotient = milnor_quotient_system(m);
    CertificateClaim claim{"Proposition 4.1", {"radial", "Sing inside V"}};
    auto v = boundedness(quotient, &m, fast_opts(), claim);
    CHECK(v.status == BoundednessStatus::BoundedCert);
    CHECK(v.certificate == "Proposition 4.1");
}

TEST_CASE("boundedness: quotient of z1 is empty (exact)") {
    auto m = realify(parse_mixed("z1").f);
    auto quotient = milnor_quotient_system(m);
    auto v = boundedness(quotient, &m, fast_opts());
    CHECK(v.status == BoundednessStatus::Empty);
}

TEST_CASE("witness validity: the recheck is mechanical and independent") {
    auto m = parse_real_map(kExample32).map;
    auto milnor = milnor_system(m);
    auto v = boundedness(milnor, &m, fast_opts(3, 5));
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->check_residual < 1e-7);
    CHECK(v.witness->cancelled_orders >= 3);
    // exact arc: substitute and confirm the drop symbolically
    REQUIRE(v.witness->exact_arc.has_value());
    const Arc& arc = *v.witness->exact_arc;
    for (const auto& g : milnor.generators) {
        auto bound = arc_degree_bound(g, arc);
        if (!bound) continue;
        auto series = arc_substitute(g, arc);
        for (const auto& [e, c] : series.coeffs) {
            if (e > *bound - v.witness->cancelled_orders) CHECK(c == Rational(0));
        }
    }
}

TEST_CASE("estimate_S: proper-map anchor cases") {
    // Psi = x1^2 + x2^2: the Milnor set is the whole plane but Psi grows
    // along every escaping arc: no finite limits
    auto proper = parse_real_map("x1^2 + x2^2").map;
    auto s1 = estimate_S(proper, fast_opts(2, 3));
    CHECK(s1.semi_tame());

    // holomorphic power map: every reported limit is 0
    auto power = realify(parse_mixed("z1^3").f);
    auto s2 = estimate_S(power, fast_opts(2, 3));
    for (const auto& l : s2.limits) {
        double n = 0;
        for (double v : l) n += v * v;
        CHECK(std::sqrt(n) < 1e-6);
    }
    CHECK(s2.semi_tame());
}

TEST_CASE("radius sweep: angular map of z1 has no quotient solutions") {
    auto m = realify(parse_mixed("z1").f);
    auto rep = radius_sweep(m, {10.0, 100.0}, 24, 7);
    REQUIRE(rep.rows.size() == 2);
    CHECK(rep.rows[0].solutions == 0);
    CHECK(rep.rows[1].solutions == 0);
}

TEST_CASE("direction order prefers sparse slow escapes") {
    Direction a{{0, 1}, {1, -1, 0}};
    Direction b{{0, 1}, {-1, 1, 0}};
    Direction c{{0, 1}, {1, 1, 0}};
    Direction d{{0, 1, 2}, {1, -1, 0}};
    CHECK(direction_precedes(a, b));   // positive set {0} before {1}
    CHECK(direction_precedes(a, c));   // one positive before two
    CHECK(direction_precedes(b, c));
    CHECK(direction_precedes(a, d));   // smaller active set first
}
