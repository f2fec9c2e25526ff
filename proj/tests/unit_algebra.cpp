#include <doctest.h>

#include <complex>
#include <random>

#include "openbook/arc.hpp"
#include "openbook/mixed.hpp"
#include "openbook/parse.hpp"

using namespace openbook;

namespace {

Expo ee(std::initializer_list<std::uint32_t> v) { return Expo(v); }

// deterministic random mixed polynomial: n vars, total degree <= deg
MixedPolynomial random_mixed(std::mt19937_64& rng, int n, int deg, int terms) {
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
        GaussianRational c(Rational(coef(rng)), Rational(coef(rng)));
        if (!c.is_zero()) p.add_term(e, c);
    }
    return {n, p};
}

std::vector<GaussianRational> random_point(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> num(-5, 5);
    std::vector<GaussianRational> z;
    for (int j = 0; j < n; ++j)
        z.push_back({Rational(num(rng), 3), Rational(num(rng), 2)});
    return z;
}

}  // namespace

TEST_CASE("gaussian rational arithmetic") {
    GaussianRational a(Rational(1, 2), Rational(3));
    GaussianRational b(Rational(2), Rational(-1, 3));
    CHECK(a * b == GaussianRational(Rational(2), Rational(35, 6)));
    CHECK((a - a).is_zero());
    CHECK(a.conj().im == Rational(-3));
    GaussianRational q = a / b;
    CHECK(q * b == a);
}

TEST_CASE("parse_mixed: paper examples") {
    // x(1 + conj(x) y) in z-variables
    auto p = parse_mixed("z1*(1 + conj(z1)*z2)");
    CHECK(p.f.nvars() == 2);
    const auto& terms = p.f.poly().terms();
    REQUIRE(terms.size() == 2);
    CHECK(terms.at(ee({1, 0, 0, 0})) == GaussianRational(Rational(1)));
    CHECK(terms.at(ee({1, 1, 1, 0})) == GaussianRational(Rational(1)));

    auto zero = parse_mixed("0");
    CHECK(zero.f.is_zero());

    auto q = parse_mixed("vars: x, y\n(2 + x)*x^2*y*conj(x)");
    REQUIRE(q.f.poly().terms().size() == 2);
    CHECK(q.f.poly().terms().at(ee({2, 1, 1, 0})) == GaussianRational(Rational(2)));
    CHECK(q.f.poly().terms().at(ee({3, 1, 1, 0})) == GaussianRational(Rational(1)));
}

TEST_CASE("parse_real_map: declared and undeclared variables") {
    auto m = parse_real_map("vars: x, y, z\ny*(2*x^2*y^2 - 9*x*y + 12); z");
    CHECK(m.map.m == 3);
    CHECK(m.map.p() == 2);

    auto one = parse_real_map("x1");
    CHECK(one.map.m == 1);
    CHECK(one.map.p() == 1);

    auto two = parse_real_map("x1^2+x2^2; x1*x2");
    CHECK(two.map.m == 2);
    CHECK(two.map.p() == 2);

    CHECK_THROWS_AS(parse_real_map("x1; x1; x1"), ParseError);  // p > m
    CHECK_THROWS_AS(parse_real_map("x1 + *"), ParseError);
    CHECK_THROWS_AS(parse_mixed("z1^"), ParseError);
    CHECK_THROWS_AS(parse_mixed("z1^999999"), ParseError);
}

TEST_CASE("parse error carries a position") {
    try {
        parse_mixed("z1 + %");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.pos == 5);
    }
}

TEST_CASE("wirtinger derivatives") {
    auto f = parse_mixed("z1*conj(z1)*z2").f;
    auto w = wirtinger(f);
    CHECK(w.dz[0] == parse_mixed("conj(z1)*z2").f);
    CHECK(w.dz[1] == parse_mixed("vars: z1, z2\nz1*conj(z1)").f);
    CHECK(w.dzbar[0] == parse_mixed("z1*z2").f);
    CHECK(w.dzbar[1].is_zero());

    auto z1 = parse_mixed("z1").f;
    CHECK(wirtinger(z1).dz[0] == MixedPolynomial::constant(1, GaussianRational(Rational(1))));
    CHECK(wirtinger(z1).dzbar[0].is_zero());

    auto g = parse_mixed("z1*(1 + conj(z1)*z2)").f;
    auto wg = wirtinger(g);
    CHECK(wg.dz[0] == parse_mixed("1 + conj(z1)*z2").f);
    CHECK(wg.dz[1] == parse_mixed("vars: z1, z2\nz1*conj(z1)").f);
    CHECK(wg.dzbar[0] == parse_mixed("z1*z2").f);
    CHECK(wg.dzbar[1].is_zero());
}

TEST_CASE("wirtinger Leibniz rule on random inputs") {
    std::mt19937_64 rng(42);
    for (int round = 0; round < 30; ++round) {
        int n = 1 + round % 3;
        auto f = random_mixed(rng, n, 3, 4);
        auto g = random_mixed(rng, n, 3, 4);
        auto fg = f * g;
        for (int j = 0; j < n; ++j) {
            CHECK(fg.dz(j) == f * g.dz(j) + g * f.dz(j));
            CHECK(fg.dzbar(j) == f * g.dzbar(j) + g * f.dzbar(j));
        }
    }
}

TEST_CASE("holomorphic iff no conjugated exponent; dbar vanishes") {
    std::mt19937_64 rng(7);
    auto f = parse_mixed("z1^3*z2 + (2+3*i)*z2^2").f;
    CHECK(f.is_holomorphic());
    for (int j = 0; j < 2; ++j) CHECK(f.dzbar(j).is_zero());
    CHECK(!parse_mixed("z1*conj(z2)").f.is_holomorphic());
    for (int round = 0; round < 10; ++round) {
        auto g = random_mixed(rng, 2, 4, 5);
        if (!g.is_holomorphic()) {
            bool has_conj = false;
            for (const auto& [e, c] : g.poly().terms())
                if (e[2] || e[3]) has_conj = true;
            CHECK(has_conj);
        }
    }
}

TEST_CASE("realify: spec examples") {
    auto n1 = default_x_names(2);
    auto r1 = realify(parse_mixed("z1").f);
    CHECK(to_string(r1.components[0], n1) == "x1");
    CHECK(to_string(r1.components[1], n1) == "x2");

    auto r2 = realify(parse_mixed("z1^2").f);
    CHECK(to_string(r2.components[0], n1) == "x1^2 - x2^2");
    CHECK(to_string(r2.components[1], n1) == "2*x1*x2");

    auto r3 = realify(parse_mixed("z1*conj(z1)").f);
    CHECK(to_string(r3.components[0], n1) == "x1^2 + x2^2");
    CHECK(r3.components[1].is_zero());
}

TEST_CASE("realify commutes with multiplication at random rational points") {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 100; ++round) {
        int n = 1 + round % 2;
        auto f = random_mixed(rng, n, 3, 3);
        auto g = random_mixed(rng, n, 3, 3);
        auto z = random_point(rng, n);
        std::vector<Rational> x;
        for (const auto& v : z) {
            x.push_back(v.re);
            x.push_back(v.im);
        }
        auto rf = realify(f), rg = realify(g), rfg = realify(f * g);
        // complex product of the realified pairs
        Rational re_f = rf.components[0].eval<Rational>(x), im_f = rf.components[1].eval<Rational>(x);
        Rational re_g = rg.components[0].eval<Rational>(x), im_g = rg.components[1].eval<Rational>(x);
        CHECK(rfg.components[0].eval<Rational>(x) == re_f * re_g - im_f * im_g);
        CHECK(rfg.components[1].eval<Rational>(x) == re_f * im_g + im_f * re_g);
    }
}

TEST_CASE("conj_product: spec examples and random identity") {
    auto g1 = parse_mixed("z2").f;
    auto h1 = parse_mixed("vars: z1, z2\nz1").f;
    CHECK(to_string(conj_product(g1, h1), default_z_names(2)) == "z2*conj(z1)");

    auto g2 = parse_mixed("z1*z2").f;
    auto h2 = parse_mixed("vars: z1, z2\nz1").f;
    CHECK(conj_product(g2, h2) == parse_mixed("z1*conj(z1)*z2").f);

    auto g3 = parse_mixed("vars: z1, z2, z3\n(z1+z3^5)*z2").f;
    auto h3 = parse_mixed("vars: z1, z2, z3\nz1").f;
    CHECK(conj_product(g3, h3) == parse_mixed("vars: z1, z2, z3\n(z1+z3^5)*conj(z1)*z2").f);

    CHECK_THROWS(conj_product(parse_mixed("conj(z1)").f, parse_mixed("z1").f));

    std::mt19937_64 rng(13);
    for (int round = 0; round < 40; ++round) {
        // strip conjugated exponents to force holomorphic factors
        auto raw_g = random_mixed(rng, 2, 3, 3);
        auto raw_h = random_mixed(rng, 2, 3, 3);
        CPoly pg(4), ph(4);
        for (const auto& [e, c] : raw_g.poly().terms())
            if (!e[2] && !e[3]) pg.add_term(e, c);
        for (const auto& [e, c] : raw_h.poly().terms())
            if (!e[2] && !e[3]) ph.add_term(e, c);
        MixedPolynomial g(2, pg), h(2, ph);
        auto z = random_point(rng, 2);
        GaussianRational lhs = conj_product(g, h).eval(z);
        GaussianRational rhs = g.eval(z) * h.eval(z).conj();
        CHECK(lhs == rhs);
    }
}

TEST_CASE("eval: spec examples") {
    auto f = parse_mixed("z1*conj(z1)").f;
    GaussianRational v = f.eval({GaussianRational(Rational(3), Rational(4))});
    CHECK(v == GaussianRational(Rational(25)));

    auto m = parse_real_map("vars: x, y, z\ny*(2*x^2*y^2 - 9*x*y + 12); z").map;
    auto at0 = m.eval(std::vector<Rational>{Rational(0), Rational(0), Rational(0)});
    CHECK(at0[0] == 0);
    CHECK(at0[1] == 0);

    auto g = parse_mixed("z1*(1 + conj(z1)*z2)").f;
    CHECK(g.eval({GaussianRational(Rational(1)), GaussianRational(Rational(0))}) ==
          GaussianRational(Rational(1)));

    CHECK_THROWS(g.eval({GaussianRational(Rational(1))}));  // dimension mismatch
}

TEST_CASE("canonical print-parse round trip") {
    std::mt19937_64 rng(17);
    for (int round = 0; round < 60; ++round) {
        int n = 1 + round % 3;
        auto f = random_mixed(rng, n, 4, 5);
        auto names = default_z_names(n);
        std::string s = to_string(f, names);
        auto re = parse_mixed("vars: " + [&] {
            std::string v;
            for (int j = 0; j < n; ++j) v += (j ? ", " : "") + names[j];
            return v;
        }() + "\n" + s);
        CHECK(re.f == f);
        CHECK(to_string(re.f, names) == s);  // idempotent
    }
}

TEST_CASE("arc_substitute: spec examples") {
    // g = x*y, arc x = t, y = 1/t: constant 1
    auto g = parse_real_map("vars: x, y\nx*y").map.components[0];
    Arc arc;
    arc.nvars = 2;
    arc.lead_exp = {1, -1};
    arc.coeffs = {{Rational(1)}, {Rational(1)}};
    arc.exact_tail = true;
    auto s = arc_substitute(g, arc);
    CHECK(s.leading_exponent().value() == 0);
    CHECK(s.at(0) == Rational(1));

    // the Milnor generator of the running 3-variable example along x = t,
    // y = c/t: leading term (-6c^2 + 18c - 12) t
    auto gen =
        parse_real_map("vars: x, y\n4*x*y^4 - 9*y^3 - 6*x^3*y^2 + 18*x^2*y - 12*x").map.components[0];
    for (Rational c : {Rational(1), Rational(2), Rational(1, 3), Rational(-2)}) {
        Arc a;
        a.nvars = 2;
        a.lead_exp = {1, -1};
        a.coeffs = {{Rational(1)}, {c}};
        a.exact_tail = true;
        auto series = arc_substitute(gen, a);
        Rational expected = -6 * c * c + 18 * c - 12;
        CHECK(series.at(1) == expected);
        if (expected != 0) CHECK(series.leading_exponent().value() == 1);
        // independent numeric oracle at large t
        double t = 1e7;
        double numeric = gen.eval<double>({t, to_double(c) / t});
        CHECK(numeric / t == doctest::Approx(to_double(expected)).epsilon(1e-4));
    }

    // complex arc z1 = (1+i) t^2
    auto z1 = parse_mixed("z1").f;
    ComplexArc ca;
    ca.nvars = 2;  // slots for z1 and conj(z1)
    ca.ring = ArcRing::Complex;
    ca.lead_exp = {2, 2};
    ca.coeffs = {{GaussianRational(Rational(1), Rational(1))},
                 {GaussianRational(Rational(1), Rational(-1))}};
    ca.exact_tail = true;
    auto cs = arc_substitute(z1.poly(), ca);
    CHECK(cs.leading_exponent().value() == 2);
    CHECK(cs.at(2) == GaussianRational(Rational(1), Rational(1)));
}

TEST_CASE("arc truncation bookkeeping") {
    // x = t + a/t truncated at order 1: squaring is exact down to exponent 0
    auto g = parse_real_map("vars: x\nx^2").map.components[0];
    NumericArc arc;
    arc.nvars = 1;
    arc.lead_exp = {1};
    arc.coeffs = {{1.0, 0.0}};  // t + 0*t^0, truncated
    arc.exact_tail = false;
    auto s = arc_substitute(g, arc);
    CHECK(s.valid_down == 1);  // 2*1 - (K=1) = 1
    CHECK(s.at(2) == 1.0);
}

TEST_CASE("exponent cap is enforced") {
    auto f = parse_mixed("z1^2").f;
    CHECK_THROWS_AS(f.poly().pow(40000), ExponentOverflow);
}
