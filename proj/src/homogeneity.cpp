#include "openbook/homogeneity.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdlib>

#include "openbook/linalg.hpp"

namespace openbook {

namespace {

using boost::multiprecision::abs;
using boost::multiprecision::gcd;

// Support rows grouped so each group shares the weighted degree; the degree
// is also shared across groups.
struct SupportGroups {
    int nvars = 0;
    std::vector<std::vector<std::vector<Int>>> groups;
};

// Difference lattice: within-group differences plus cross-group base-point
// differences. q must annihilate all rows.
Matrix<Int> difference_rows(const SupportGroups& s) {
    Matrix<Int> rows;
    const std::vector<Int>* first_base = nullptr;
    for (const auto& g : s.groups) {
        if (g.empty()) continue;
        const auto& base = g[0];
        for (std::size_t i = 1; i < g.size(); ++i) {
            std::vector<Int> d(s.nvars);
            for (int j = 0; j < s.nvars; ++j) d[j] = g[i][j] - base[j];
            rows.push_back(std::move(d));
        }
        if (first_base) {
            std::vector<Int> d(s.nvars);
            for (int j = 0; j < s.nvars; ++j) d[j] = base[j] - (*first_base)[j];
            rows.push_back(std::move(d));
        } else {
            first_base = &g[0];
        }
    }
    return rows;
}

Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Enumerate integer combinations of the kernel basis within a coefficient
// box and keep the best candidate under `better`. Returns nullopt if no
// combination satisfies `feasible`.
std::optional<std::vector<Int>> search_lattice(
    const std::vector<std::vector<Int>>& basis, int nvars,
    const std::function<bool(const std::vector<Int>&)>& feasible,
    const std::function<bool(const std::vector<Int>&, const std::vector<Int>&)>& better) {
    const int k = static_cast<int>(basis.size());
    if (k == 0) return std::nullopt;
    int box = k <= 2 ? 24 : k == 3 ? 12 : k == 4 ? 8 : 3;
    while (box > 1 && std::pow(2.0 * box + 1.0, k) > 2e6) --box;

    std::optional<std::vector<Int>> best;
    std::vector<int> t(k, -box);
    while (true) {
        std::vector<Int> q(nvars, 0);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < nvars; ++j) q[j] += Int(t[i]) * basis[i][j];
        if (feasible(q) && (!best || better(q, *best))) best = q;
        int i = 0;
        while (i < k && t[i] == box) t[i++] = -box;
        if (i == k) break;
        ++t[i];
    }
    return best;
}

std::optional<RadialCertificate> detect_radial_on(const SupportGroups& s) {
    bool any = false;
    for (const auto& g : s.groups) any = any || !g.empty();
    if (!any) return std::nullopt;

    const std::vector<Int>* base = nullptr;
    for (const auto& g : s.groups)
        if (!g.empty()) {
            base = &g[0];
            break;
        }

    auto rows = difference_rows(s);
    auto basis = integer_kernel(rows);
    if (basis.empty()) {
        if (!rows.empty()) return std::nullopt;
        // no constraints: kernel is the whole lattice
        for (int j = 0; j < s.nvars; ++j) {
            std::vector<Int> e(s.nvars, 0);
            e[j] = 1;
            basis.push_back(std::move(e));
        }
    }

    auto feasible = [&](const std::vector<Int>& q) {
        for (const auto& x : q)
            if (x < 1) return false;
        return dot(q, *base) > 0;
    };
    auto better = [&](const std::vector<Int>& a, const std::vector<Int>& b) {
        Int da = dot(a, *base), db = dot(b, *base);
        if (da != db) return da < db;
        return a < b;
    };
    auto q = search_lattice(basis, s.nvars, feasible, better);
    if (!q) return std::nullopt;
    make_primitive(*q);  // minimal d already implies gcd 1; normalize anyway
    return RadialCertificate{*q, dot(*q, *base)};
}

}  // namespace

std::optional<RadialCertificate> detect_radial(const MixedPolynomial& f) {
    if (f.is_zero()) return std::nullopt;
    const int n = f.nvars();
    SupportGroups s;
    s.nvars = n;
    s.groups.resize(1);
    for (const auto& [e, c] : f.poly().terms()) {
        std::vector<Int> row(n);
        for (int j = 0; j < n; ++j) row[j] = Int(e[j]) + Int(e[n + j]);
        s.groups[0].push_back(std::move(row));
    }
    return detect_radial_on(s);
}

std::optional<RadialCertificate> detect_radial(const RealPolyMap& map) {
    SupportGroups s;
    s.nvars = map.m;
    bool any = false;
    for (const auto& comp : map.components) {
        std::vector<std::vector<Int>> g;
        for (const auto& [e, c] : comp.terms()) {
            std::vector<Int> row(map.m);
            for (int j = 0; j < map.m; ++j) row[j] = Int(e[j]);
            g.push_back(std::move(row));
        }
        any = any || !g.empty();
        s.groups.push_back(std::move(g));
    }
    if (!any) return std::nullopt;
    return detect_radial_on(s);
}

std::optional<PolarCertificate> detect_polar(const MixedPolynomial& f) {
    if (f.is_zero()) return std::nullopt;
    const int n = f.nvars();
    SupportGroups s;
    s.nvars = n;
    s.groups.resize(1);
    for (const auto& [e, c] : f.poly().terms()) {
        std::vector<Int> row(n);
        for (int j = 0; j < n; ++j) row[j] = Int(e[j]) - Int(e[n + j]);
        s.groups[0].push_back(std::move(row));
    }
    const auto& base = s.groups[0][0];

    auto rows = difference_rows(s);
    auto basis = integer_kernel(rows);
    if (basis.empty() && !rows.empty()) return std::nullopt;
    if (basis.empty()) {
        for (int j = 0; j < n; ++j) {
            std::vector<Int> e(n, 0);
            e[j] = 1;
            basis.push_back(std::move(e));
        }
    }

    auto normalize = [&](std::vector<Int> p) -> std::pair<std::vector<Int>, Int> {
        Int k = dot(p, base);
        if (k < 0) {
            for (auto& x : p) x = -x;
            k = -k;
        }
        Int g = 0;
        for (const auto& x : p) g = gcd(g, abs(x));
        if (g > 1) {
            for (auto& x : p) x /= g;
            k /= g;
        }
        return {p, k};
    };

    auto norm1 = [](const std::vector<Int>& p) {
        Int s = 0;
        for (const auto& x : p) s += abs(x);
        return s;
    };

    // pass 1: all-positive weights
    auto feas_pos = [&](const std::vector<Int>& p) {
        for (const auto& x : p)
            if (x < 1) return false;
        return dot(p, base) != 0;
    };
    // pass 2: any integer weights with k != 0
    auto feas_any = [&](const std::vector<Int>& p) {
        bool nonzero = false;
        for (const auto& x : p) nonzero = nonzero || x != 0;
        return nonzero && dot(p, base) != 0;
    };
    auto better = [&](const std::vector<Int>& a, const std::vector<Int>& b) {
        auto [pa, ka] = normalize(a);
        auto [pb, kb] = normalize(b);
        if (ka != kb) return ka < kb;
        if (norm1(pa) != norm1(pb)) return norm1(pa) < norm1(pb);
        return pa < pb;
    };

    auto found = search_lattice(basis, n, feas_pos, better);
    bool all_positive = found.has_value();
    if (!found) found = search_lattice(basis, n, feas_any, better);
    if (!found) return std::nullopt;
    auto [p, k] = normalize(*found);
    return PolarCertificate{p, k, all_positive};
}

bool radial_identity_holds(const RealPolyMap& map, const RadialCertificate& cert) {
    const int m = map.m;
    // variables 0..m-1 are x, variable m is rho
    std::vector<RealPoly> repl;
    for (int j = 0; j < m; ++j) {
        RealPoly r = RealPoly::variable(m + 1, j) *
                     RealPoly::variable(m + 1, m, static_cast<std::uint32_t>(cert.weights[j].convert_to<long>()));
        repl.push_back(r);
    }
    RealPoly rho_d = RealPoly::variable(m + 1, m, static_cast<std::uint32_t>(cert.degree.convert_to<long>()));
    for (const auto& comp : map.components) {
        RealPoly lifted(m + 1);
        for (const auto& [e, c] : comp.terms()) {
            Expo f(e);
            f.push_back(0);
            lifted.add_term(f, c);
        }
        if (lifted.substitute(repl) != rho_d * lifted) return false;
    }
    return true;
}

bool polar_identity_holds(const MixedPolynomial& f, const PolarCertificate& cert) {
    const int n = f.nvars();
    // extended mixed polynomial in n+1 variables; slot n is lambda
    auto lift = [&](const MixedPolynomial& g) {
        CPoly out(2 * (n + 1));
        for (const auto& [e, c] : g.poly().terms()) {
            Expo x(2 * (n + 1), 0);
            for (int j = 0; j < n; ++j) {
                x[j] = e[j];
                x[n + 1 + j] = e[n + j];
            }
            out.add_term(x, c);
        }
        return MixedPolynomial(n + 1, out);
    };
    auto reduce_unit = [&](const MixedPolynomial& g) {
        // cancel lambda * conj(lambda) = 1
        CPoly out(2 * (n + 1));
        for (const auto& [e, c] : g.poly().terms()) {
            Expo x(e);
            std::uint32_t cancel = std::min(x[n], x[2 * n + 1]);
            x[n] -= cancel;
            x[2 * n + 1] -= cancel;
            out.add_term(x, c);
        }
        return MixedPolynomial(n + 1, out);
    };

    MixedPolynomial lambda = MixedPolynomial::z(n + 1, n);
    MixedPolynomial lambda_bar = MixedPolynomial::zbar(n + 1, n);
    auto lambda_pow = [&](Int p) {
        // lambda^p for negative p uses conj(lambda)^(-p), valid on the circle
        MixedPolynomial r = MixedPolynomial::constant(n + 1, GaussianRational(Rational(1)));
        long e = p.convert_to<long>();
        const MixedPolynomial& base = e >= 0 ? lambda : lambda_bar;
        for (long i = 0; i < std::abs(e); ++i) r = r * base;
        return r;
    };

    // substitution values for z_j and conj(z_j)
    std::vector<CPoly> repl(2 * (n + 1), CPoly(2 * (n + 1)));
    for (int j = 0; j < n; ++j) {
        repl[j] = (lambda_pow(cert.weights[j]) * MixedPolynomial::z(n + 1, j)).poly();
        repl[n + 1 + j] = (lambda_pow(-cert.weights[j]) * MixedPolynomial::zbar(n + 1, j)).poly();
    }
    repl[n] = CPoly::variable(2 * (n + 1), n);
    repl[2 * n + 1] = CPoly::variable(2 * (n + 1), 2 * n + 1);

    // repl indices are in the lifted 2(n+1)-slot layout; build the lifted f
    // and substitute.
    MixedPolynomial lf = lift(f);
    CPoly substituted = lf.poly().substitute(repl);
    MixedPolynomial lhs = reduce_unit(MixedPolynomial(n + 1, substituted));
    MixedPolynomial rhs = reduce_unit(lambda_pow(cert.degree) * lf);
    return lhs == rhs;
}

std::vector<RealPoly> euler_residues(const RealPolyMap& map, const RadialCertificate& cert) {
    std::vector<RealPoly> out;
    for (const auto& comp : map.components) {
        RealPoly acc(map.m);
        for (int j = 0; j < map.m; ++j) {
            RealPoly term = RealPoly::variable(map.m, j) * comp.derivative(j);
            Rational w(cert.weights[j]);
            acc += term * w;
        }
        acc -= comp * Rational(cert.degree);
        out.push_back(std::move(acc));
    }
    return out;
}

std::vector<Int> expand_weights_to_real(const std::vector<Int>& q) {
    std::vector<Int> out;
    out.reserve(2 * q.size());
    for (const auto& w : q) {
        out.push_back(w);
        out.push_back(w);
    }
    return out;
}

}  // namespace openbook
