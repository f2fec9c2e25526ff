#include "openbook/asymptotics.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "openbook/linalg.hpp"

namespace openbook {

std::string to_string(BoundednessStatus s) {
    switch (s) {
        case BoundednessStatus::BoundedCert: return "BOUNDED_CERT";
        case BoundednessStatus::BoundedSearch: return "BOUNDED_SEARCH";
        case BoundednessStatus::Unbounded: return "UNBOUNDED";
        case BoundednessStatus::Empty: return "EMPTY";
        case BoundednessStatus::Unknown: return "UNKNOWN";
    }
    return "?";
}

bool direction_precedes(const Direction& a, const Direction& b) {
    if (a.positives() != b.positives()) return a.positives() < b.positives();
    if (a.max_weight() != b.max_weight()) return a.max_weight() < b.max_weight();
    if (a.norm1() != b.norm1()) return a.norm1() < b.norm1();
    auto pos_list = [](const Direction& d) {
        std::vector<int> v;
        for (int j : d.active)
            if (d.weights[j] > 0) v.push_back(j);
        return v;
    };
    auto pa = pos_list(a), pb = pos_list(b);
    if (pa != pb) return pa < pb;
    if (a.active != b.active) return a.active < b.active;
    std::vector<long long> wa, wb;
    for (int j : a.active) wa.push_back(a.weights[j]);
    for (int j : b.active) wb.push_back(b.weights[j]);
    return wa < wb;
}

namespace {

long long gcd_ll(long long a, long long b) {
    a = std::llabs(a);
    b = std::llabs(b);
    while (b) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Terms of g that survive on the coordinate subspace of `mask`; nullopt when
// nothing survives (g vanishes identically there).
std::optional<RealPoly> restrict_to_subset(const RealPoly& g, const std::vector<bool>& mask) {
    RealPoly out(g.nvars());
    bool any = false;
    for (const auto& [e, c] : g.terms()) {
        bool alive = true;
        for (int j = 0; j < g.nvars(); ++j)
            if (e[j] && !mask[j]) {
                alive = false;
                break;
            }
        if (alive) {
            out.add_term(e, c);
            any = true;
        }
    }
    if (!any) return std::nullopt;
    return out;
}

struct LeadingForm {
    RealPoly form;
    long long degree;
};

LeadingForm leading_form(const RealPoly& g, const Direction& dir) {
    long long best = LLONG_MIN;
    for (const auto& [e, c] : g.terms()) {
        long long d = 0;
        for (int j : dir.active) d += static_cast<long long>(e[j]) * dir.weights[j];
        best = std::max(best, d);
    }
    RealPoly form(g.nvars());
    for (const auto& [e, c] : g.terms()) {
        long long d = 0;
        for (int j : dir.active) d += static_cast<long long>(e[j]) * dir.weights[j];
        if (d == best) form.add_term(e, c);
    }
    return {form, best};
}

}  // namespace

std::vector<LeadingSystem> leading_systems(const MilnorSystem& system, int wmax) {
    const int m = system.m;
    std::vector<LeadingSystem> out;

    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        std::vector<bool> active_mask(m, false);
        std::vector<int> active;
        for (int j = 0; j < m; ++j)
            if (mask & (1u << j)) {
                active_mask[j] = true;
                active.push_back(j);
            }

        // restrict the generators once per subset
        std::vector<RealPoly> restricted;
        std::vector<int> gen_index;
        bool subset_dead = false;
        for (std::size_t gi = 0; gi < system.generators.size(); ++gi) {
            auto r = restrict_to_subset(system.generators[gi], active_mask);
            if (!r) continue;  // generator vanishes on the subspace
            if (r->term_count() == 1) {
                // single surviving monomial: nonzero whenever all active
                // coordinates are nonzero, for every weight choice
                subset_dead = true;
                break;
            }
            restricted.push_back(std::move(*r));
            gen_index.push_back(static_cast<int>(gi));
        }
        if (subset_dead) continue;

        const int a = static_cast<int>(active.size());
        std::vector<int> w(a, -wmax);
        while (true) {
            // canonical representatives only: gcd-reduced, some positive weight
            long long g = 0, wmaxv = LLONG_MIN;
            for (int i = 0; i < a; ++i) {
                g = gcd_ll(g, w[i]);
                wmaxv = std::max(wmaxv, static_cast<long long>(w[i]));
            }
            if (wmaxv >= 1 && g == 1) {
                Direction dir;
                dir.active = active;
                dir.weights.assign(m, 0);
                for (int i = 0; i < a; ++i) dir.weights[active[i]] = w[i];

                LeadingSystem ls;
                ls.dir = dir;
                for (std::size_t gi = 0; gi < restricted.size(); ++gi) {
                    LeadingForm lf = leading_form(restricted[gi], dir);
                    if (lf.form.term_count() == 1) {
                        ls.infeasible_monomial = true;
                        break;
                    }
                    ls.equations.push_back(std::move(lf.form));
                    ls.degrees.push_back(lf.degree);
                    ls.generator_index.push_back(gen_index[gi]);
                }
                if (!ls.infeasible_monomial) out.push_back(std::move(ls));
            }
            int i = 0;
            while (i < a && w[i] == wmax) w[i++] = -wmax;
            if (i == a) break;
            ++w[i];
        }
    }

    std::sort(out.begin(), out.end(),
              [](const LeadingSystem& x, const LeadingSystem& y) {
                  return direction_precedes(x.dir, y.dir);
              });
    return out;
}

namespace {

// Continued-fraction rational reconstruction of a double.
std::optional<Rational> snap_rational(double x, long max_den = 64) {
    if (!std::isfinite(x)) return std::nullopt;
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double v = x;
    for (int it = 0; it < 40; ++it) {
        double fl = std::floor(v);
        long long ai = static_cast<long long>(fl);
        long long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double rem = v - fl;
        if (std::abs(static_cast<double>(p1) / q1 - x) < 1e-12 * std::max(1.0, std::abs(x))) break;
        if (rem < 1e-14) break;
        v = 1.0 / rem;
    }
    if (q1 == 0) return std::nullopt;
    Rational r(p1, q1);
    if (std::abs(to_double(r) - x) > 1e-9 * std::max(1.0, std::abs(x))) return std::nullopt;
    return r;
}

struct LeadingSolution {
    std::vector<double> a;                        // per active variable
    std::optional<std::vector<Rational>> exact;   // exactly verified values
};

// Evaluate the leading equations at a full-arity point assembled from the
// active coordinates.
Eigen::VectorXd assemble_point(const Direction& dir, int m, const std::vector<double>& a) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(m);
    for (std::size_t i = 0; i < dir.active.size(); ++i) x(dir.active[i]) = a[i];
    return x;
}

bool exact_zero_on_equations(const LeadingSystem& ls, const std::vector<Rational>& a_exact) {
    const int m = ls.equations.empty() ? 0 : ls.equations[0].nvars();
    std::vector<Rational> x(m, Rational(0));
    for (std::size_t i = 0; i < ls.dir.active.size(); ++i) x[ls.dir.active[i]] = a_exact[i];
    for (const auto& eq : ls.equations)
        if (eq.eval<Rational>(x) != 0) return false;
    return true;
}

// Real roots of a univariate rational polynomial via its companion matrix.
std::vector<double> univariate_real_roots(const std::vector<Rational>& coeffs) {
    int deg = static_cast<int>(coeffs.size()) - 1;
    while (deg > 0 && coeffs[deg] == 0) --deg;
    std::vector<double> roots;
    if (deg <= 0) return roots;
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
    double lead = to_double(coeffs[deg]);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -to_double(coeffs[i]) / lead;
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
    for (int i = 0; i < deg; ++i) {
        std::complex<double> ev = es.eigenvalues()(i);
        if (std::abs(ev.imag()) < 1e-8 * std::max(1.0, std::abs(ev.real())))
            roots.push_back(ev.real());
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// Coefficients of eq as a univariate polynomial in `var`, with gauge_var
// frozen to gauge_val; all other variables must be absent.
std::optional<std::vector<Rational>> univariate_coeffs(const RealPoly& eq, int var, int gauge_var,
                                                       const Rational& gauge_val) {
    std::vector<Rational> coeffs;
    for (const auto& [e, c] : eq.terms()) {
        Rational v = c;
        for (int j = 0; j < eq.nvars(); ++j) {
            if (!e[j]) continue;
            if (j == var) continue;
            if (j == gauge_var) {
                for (std::uint32_t k = 0; k < e[j]; ++k) v *= gauge_val;
            } else {
                return std::nullopt;  // a third variable appears
            }
        }
        std::uint32_t d = e[var];
        if (coeffs.size() <= d) coeffs.resize(d + 1, Rational(0));
        coeffs[d] += v;
    }
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    return coeffs;
}

std::vector<LeadingSolution> solve_leading_system(const LeadingSystem& ls, int starts, Rng& rng) {
    std::vector<LeadingSolution> sols;
    const auto& dir = ls.dir;
    const int m = ls.equations.empty() ? 0 : ls.equations[0].nvars();
    const int na = static_cast<int>(dir.active.size());

    // gauge: pin the first active variable with nonzero weight to +-1
    int gauge_pos = -1;
    for (int i = 0; i < na; ++i)
        if (dir.weights[dir.active[i]] != 0) {
            gauge_pos = i;
            break;
        }
    if (gauge_pos < 0) return sols;  // cannot happen: max weight >= 1

    auto residual_ok = [&](const std::vector<double>& a) {
        Eigen::VectorXd x = assemble_point(dir, m, a);
        for (const auto& eq : ls.equations) {
            CompiledPoly cp = compile(eq);
            double s = cp.scale(x);
            if (s == 0) continue;
            if (std::abs(cp.eval(x)) > 1e-9 * s) return false;
        }
        return true;
    };

    auto try_add = [&](std::vector<double> a) {
        for (double v : a)
            if (std::abs(v) < 1e-3) return;  // active coordinates must stay nonzero
        if (!residual_ok(a)) return;
        for (const auto& s : sols) {
            double d = 0;
            for (int i = 0; i < na; ++i) d += (s.a[i] - a[i]) * (s.a[i] - a[i]);
            if (std::sqrt(d) < 1e-6) return;  // duplicate
        }
        LeadingSolution sol;
        sol.a = a;
        // exact rational reconstruction, verified exactly
        std::vector<Rational> ex(na);
        bool all_snapped = true;
        for (int i = 0; i < na && all_snapped; ++i) {
            auto r = snap_rational(a[i]);
            if (r)
                ex[i] = *r;
            else
                all_snapped = false;
        }
        if (all_snapped && exact_zero_on_equations(ls, ex)) sol.exact = ex;
        sols.push_back(std::move(sol));
    };

    if (ls.equations.empty()) {
        // no constraints: the whole subspace lies in the zero set
        std::vector<double> a(na, 1.0);
        try_add(a);
        return sols;
    }

    for (double gauge : {1.0, -1.0}) {
        if (na == 1) {
            std::vector<double> a{gauge};
            try_add(a);
            continue;
        }
        if (na == 2) {
            // univariate in the non-gauge variable: companion-matrix roots of
            // the first usable equation, cross-checked on the rest
            int other = gauge_pos == 0 ? 1 : 0;
            std::vector<double> roots;
            for (const auto& eq : ls.equations) {
                auto coeffs = univariate_coeffs(eq, dir.active[other], dir.active[gauge_pos],
                                                Rational(gauge > 0 ? 1 : -1));
                if (!coeffs) continue;
                if (coeffs->empty()) continue;  // identically zero: no constraint
                if (coeffs->size() == 1) {
                    roots.clear();  // nonzero constant: no solution on this gauge
                    break;
                }
                roots = univariate_real_roots(*coeffs);
                break;
            }
            for (double r : roots) {
                std::vector<double> a(2);
                a[gauge_pos] = gauge;
                a[other] = r;
                try_add(a);
            }
            continue;
        }

        // general case: multistart Levenberg-Marquardt over the free
        // coordinates
        std::vector<int> free_pos;
        for (int i = 0; i < na; ++i)
            if (i != gauge_pos) free_pos.push_back(i);

        CompiledSystem sys = compile_system(ls.equations);
        VectorFunction fn;
        fn.in_dim = static_cast<int>(free_pos.size());
        fn.out_dim = sys.out_dim();
        auto to_full = [&, gauge](const Eigen::VectorXd& xfree) {
            std::vector<double> a(na);
            a[gauge_pos] = gauge;
            for (std::size_t i = 0; i < free_pos.size(); ++i) a[free_pos[i]] = xfree(i);
            return assemble_point(dir, m, a);
        };
        fn.eval = [&, gauge](const Eigen::VectorXd& xf, Eigen::VectorXd& f) {
            sys.eval(to_full(xf), f);
        };
        fn.jacobian = [&, gauge](const Eigen::VectorXd& xf, Eigen::MatrixXd& jf) {
            Eigen::MatrixXd jfull;
            sys.eval_jacobian(to_full(xf), jfull);
            jf.resize(sys.out_dim(), fn.in_dim);
            for (std::size_t i = 0; i < free_pos.size(); ++i)
                jf.col(i) = jfull.col(dir.active[free_pos[i]]);
        };

        for (int s = 0; s < starts; ++s) {
            Eigen::VectorXd x0(fn.in_dim);
            double span = s % 2 ? 8.0 : 2.5;
            for (int i = 0; i < fn.in_dim; ++i) {
                double v = rng.uniform(-span, span);
                if (std::abs(v) < 0.05) v = v < 0 ? -0.05 : 0.05;
                x0(i) = v;
            }
            LMResult lm = lm_minimize(fn, x0);
            std::vector<double> a(na);
            a[gauge_pos] = gauge;
            for (std::size_t i = 0; i < free_pos.size(); ++i) a[free_pos[i]] = lm.x(i);
            try_add(a);
        }
    }

    std::sort(sols.begin(), sols.end(),
              [](const LeadingSolution& x, const LeadingSolution& y) { return x.a < y.a; });
    return sols;
}

// ---------------------------------------------------------------------------
// arc extension

struct ExtensionResult {
    NumericArc arc;
    std::optional<Arc> exact_arc;
    int cancelled_orders = 0;  // layers solved including the leading one
    bool complete = false;     // reached the requested order
};

ExtensionResult extend_arc(const LeadingSystem& ls, const std::vector<RealPoly>& generators,
                           const LeadingSolution& sol, int order) {
    const auto& dir = ls.dir;
    const int m = static_cast<int>(dir.weights.size());
    const int na = static_cast<int>(dir.active.size());

    ExtensionResult res;
    res.arc.nvars = m;
    res.arc.ring = ArcRing::Real;
    res.arc.lead_exp.assign(m, 0);
    res.arc.coeffs.assign(m, {});
    for (int i = 0; i < na; ++i) {
        res.arc.lead_exp[dir.active[i]] = dir.weights[dir.active[i]];
        res.arc.coeffs[dir.active[i]] = {sol.a[i]};
    }
    res.cancelled_orders = 1;

    if (ls.equations.empty()) {
        // the subspace is contained in the zero set: the arc is exact as is
        res.arc.exact_tail = true;
        res.cancelled_orders = order + 1;
        res.complete = true;
        if (sol.exact) {
            Arc ex;
            ex.nvars = m;
            ex.ring = ArcRing::Real;
            ex.lead_exp = res.arc.lead_exp;
            ex.coeffs.assign(m, {});
            for (int i = 0; i < na; ++i) ex.coeffs[dir.active[i]] = {(*sol.exact)[i]};
            ex.exact_tail = true;
            res.exact_arc = ex;
        }
        return res;
    }

    // Jacobian of the leading forms with respect to the active coordinates
    Eigen::VectorXd a0 = assemble_point(dir, m, sol.a);
    const int ne = static_cast<int>(ls.equations.size());
    Eigen::MatrixXd jac(ne, na);
    for (int g = 0; g < ne; ++g)
        for (int i = 0; i < na; ++i)
            jac(g, i) = compile(ls.equations[g].derivative(dir.active[i])).eval(a0);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(jac);

    // exact twin when the leading solution snapped to rationals
    bool exact_alive = sol.exact.has_value();
    std::vector<std::vector<Rational>> exact_coeffs(m);
    if (exact_alive)
        for (int i = 0; i < na; ++i) exact_coeffs[dir.active[i]] = {(*sol.exact)[i]};

    for (int k = 1; k <= order; ++k) {
        for (int i = 0; i < na; ++i) res.arc.coeffs[dir.active[i]].push_back(0.0);
        Eigen::VectorXd c(ne);
        for (int g = 0; g < ne; ++g) {
            auto series = arc_substitute(generators[ls.generator_index[g]], res.arc);
            c(g) = series.at(ls.degrees[g] - k);
        }
        Eigen::VectorXd u = cod.solve(-c);
        double consistency = (jac * u + c).norm();
        if (consistency > 1e-7 * (c.norm() + 1e-30) && c.norm() > 1e-12) {
            // obstruction at this order: roll back the empty layer
            for (int i = 0; i < na; ++i) res.arc.coeffs[dir.active[i]].pop_back();
            return res;
        }
        for (int i = 0; i < na; ++i) res.arc.coeffs[dir.active[i]].back() = u(i);
        res.cancelled_orders = k + 1;

        if (exact_alive) {
            // mirror the layer in exact arithmetic
            Arc ex;
            ex.nvars = m;
            ex.ring = ArcRing::Real;
            ex.lead_exp = res.arc.lead_exp;
            ex.coeffs = exact_coeffs;
            for (int i = 0; i < na; ++i) ex.coeffs[dir.active[i]].push_back(Rational(0));
            // exact residual coefficients
            Matrix<Rational> jq(ne, std::vector<Rational>(na));
            std::vector<Rational> x(m, Rational(0));
            for (int i = 0; i < na; ++i) x[dir.active[i]] = (*sol.exact)[i];
            for (int g = 0; g < ne; ++g)
                for (int i = 0; i < na; ++i)
                    jq[g][i] = ls.equations[g].derivative(dir.active[i]).eval<Rational>(x);
            std::vector<Rational> cq(ne);
            bool any_nonzero = false;
            for (int g = 0; g < ne; ++g) {
                auto series = arc_substitute(generators[ls.generator_index[g]], ex);
                cq[g] = series.at(ls.degrees[g] - k);
                any_nonzero = any_nonzero || cq[g] != 0;
            }
            // solve jq * u = -cq exactly (free variables zero); fall back to
            // the numeric path when inconsistent
            Matrix<Rational> aug = jq;
            for (int g = 0; g < ne; ++g) aug[g].push_back(-cq[g]);
            // gaussian elimination
            int rank = 0;
            std::vector<int> pivot_col;
            for (int col = 0; col < na && rank < ne; ++col) {
                int pr = -1;
                for (int r2 = rank; r2 < ne; ++r2)
                    if (aug[r2][col] != 0) {
                        pr = r2;
                        break;
                    }
                if (pr < 0) continue;
                std::swap(aug[rank], aug[pr]);
                Rational inv = aug[rank][col];
                for (int cc = col; cc <= na; ++cc) aug[rank][cc] /= inv;
                for (int r2 = 0; r2 < ne; ++r2) {
                    if (r2 == rank || aug[r2][col] == 0) continue;
                    Rational f = aug[r2][col];
                    for (int cc = col; cc <= na; ++cc) aug[r2][cc] -= f * aug[rank][cc];
                }
                pivot_col.push_back(col);
                ++rank;
            }
            bool consistent = true;
            for (int r2 = rank; r2 < ne; ++r2)
                if (aug[r2][na] != 0) consistent = false;
            if (!consistent) {
                exact_alive = false;
            } else {
                std::vector<Rational> uq(na, Rational(0));
                for (int r2 = 0; r2 < rank; ++r2) uq[pivot_col[r2]] = aug[r2][na];
                for (int i = 0; i < na; ++i) exact_coeffs[dir.active[i]].push_back(uq[i]);
                (void)any_nonzero;
            }
        }
    }
    res.complete = true;
    if (exact_alive) {
        Arc ex;
        ex.nvars = m;
        ex.ring = ArcRing::Real;
        ex.lead_exp = res.arc.lead_exp;
        ex.coeffs = exact_coeffs;
        ex.exact_tail = false;
        res.exact_arc = ex;
    }
    return res;
}

// ---------------------------------------------------------------------------
// witness verification

// Reference magnitude of g along the arc at t = 1 scale: sum over terms of
// |coef| prod |a_{j,0}|^{e_j}, for terms alive on the arc's support.
double term_scale_on_arc(const RealPoly& g, const NumericArc& arc) {
    double s = 0;
    for (const auto& [e, c] : g.terms()) {
        double v = std::abs(to_double(c));
        bool dead = false;
        for (int j = 0; j < g.nvars(); ++j) {
            if (!e[j]) continue;
            if (!arc.active(j)) {
                dead = true;
                break;
            }
            v *= std::pow(std::abs(arc.coeffs[j][0]), static_cast<double>(e[j]));
        }
        if (!dead) s += v;
    }
    return s;
}

// Mechanical recheck, independent of the solver: substituting the arc must
// drop the leading exponent of every generator by the claimed number of
// cancelled orders.
bool verify_cancellation(const std::vector<RealPoly>& generators, const NumericArc& arc,
                         int cancelled, double* worst_rel) {
    *worst_rel = 0.0;
    for (const auto& g : generators) {
        auto bound = arc_degree_bound(g, arc);
        if (!bound) continue;  // generator dies on the arc support
        auto series = arc_substitute(g, arc);
        double scale = term_scale_on_arc(g, arc);
        if (scale == 0) continue;
        for (const auto& [e, c] : series.coeffs) {
            if (e <= *bound - cancelled) break;  // below the claimed drop
            *worst_rel = std::max(*worst_rel, std::abs(c) / scale);
        }
    }
    return *worst_rel < 1e-7;
}

struct PsiAlongArc {
    bool unbounded = false;
    bool identically_zero = true;
    bool limit_known = true;
    std::vector<double> limit;
};

PsiAlongArc psi_along_arc(const RealPolyMap& psi, const NumericArc& arc) {
    PsiAlongArc out;
    for (const auto& comp : psi.components) {
        auto series = arc_substitute(comp, arc);
        double scale = term_scale_on_arc(comp, arc);
        double thresh = 1e-9 * std::max(scale, 1e-300);
        long long lead = LLONG_MIN;
        for (const auto& [e, c] : series.coeffs)
            if (std::abs(c) > thresh) {
                lead = e;
                break;
            }
        if (lead != LLONG_MIN) out.identically_zero = false;
        if (lead > 0) {
            out.unbounded = true;
            out.limit.push_back(std::numeric_limits<double>::infinity());
            continue;
        }
        if (series.valid_down != kExactTail && series.valid_down > 0) {
            out.limit_known = false;
            out.limit.push_back(0.0);
            continue;
        }
        out.limit.push_back(series.at(0));
    }
    return out;
}

bool constraint_satisfied(VConstraint c, const PsiAlongArc& p) {
    switch (c) {
        case VConstraint::None: return true;
        case VConstraint::ExcludeV: {
            if (p.unbounded) return true;
            if (!p.limit_known) return false;
            double n = 0;
            for (double v : p.limit) n += v * v;
            return std::sqrt(n) > 1e-6;
        }
        case VConstraint::IntersectV: {
            if (p.unbounded) return false;
            if (!p.limit_known) return false;
            if (p.identically_zero) return false;  // the arc sits inside V
            double n = 0;
            for (double v : p.limit) n += v * v;
            return std::sqrt(n) <= 1e-6;
        }
    }
    return false;
}

std::string describe_direction(const Direction& dir) {
    std::ostringstream os;
    os << "active {";
    for (std::size_t i = 0; i < dir.active.size(); ++i)
        os << (i ? "," : "") << "x" << dir.active[i] + 1;
    os << "} weights (";
    for (std::size_t i = 0; i < dir.active.size(); ++i)
        os << (i ? "," : "") << dir.weights[dir.active[i]];
    os << ")";
    return os.str();
}

// Sign-definite diagonal generator: q = c1 x_{j1}^{2k1} + ... with uniform
// coefficient sign forces those variables to vanish. When the forced
// subspace lies inside the excluded locus, the constrained zero set is empty.
bool empty_by_definite_generator(const MilnorSystem& system) {
    if (system.excluded_locus.empty()) return false;
    for (const auto& g : system.generators) {
        bool diagonal = true, uniform = true;
        int sign = 0;
        std::vector<bool> forced(system.m, false);
        for (const auto& [e, c] : g.terms()) {
            int nz = 0, var = -1;
            for (int j = 0; j < system.m; ++j)
                if (e[j]) {
                    ++nz;
                    var = j;
                }
            if (nz != 1 || e[var] % 2 != 0) {
                diagonal = false;
                break;
            }
            int s = c > 0 ? 1 : -1;
            if (sign == 0) sign = s;
            if (s != sign) uniform = false;
            forced[var] = true;
        }
        if (!diagonal || !uniform || g.is_zero()) continue;
        // zero set of g is {x_j = 0 for all forced j}; check it lies in V
        bool inside_V = true;
        for (const auto& v : system.excluded_locus) {
            bool vanishes = true;
            for (const auto& [e, c] : v.terms()) {
                bool killed = false;
                for (int j = 0; j < system.m; ++j)
                    if (e[j] && forced[j]) killed = true;
                if (!killed) {
                    vanishes = false;
                    break;
                }
            }
            if (!vanishes) inside_V = false;
        }
        if (inside_V) return true;
    }
    return false;
}

struct FamilyCollector {
    std::vector<ArcWitness> witnesses;
    int directions_total = 0;
    int refuted_leading = 0;
    int refuted_extension = 0;
    int refuted_constraint = 0;
};

FamilyCollector collect_families(const MilnorSystem& system, const RealPolyMap* psi,
                                 const AsymptoticOptions& opts, bool stop_at_first) {
    FamilyCollector fc;
    Rng rng(opts.seed ^ 0x61726373ull);

    std::vector<LeadingSystem> systems = leading_systems(system, opts.wmax);
    fc.directions_total = static_cast<int>(systems.size());

    for (const auto& ls : systems) {
        if (static_cast<int>(fc.witnesses.size()) >= opts.max_families) break;
        Rng dir_rng = rng.split();
        auto sols = solve_leading_system(ls, opts.starts, dir_rng);
        if (sols.empty()) {
            ++fc.refuted_leading;
            continue;
        }
        bool any_verified = false;
        int taken = 0;
        for (const auto& sol : sols) {
            if (taken >= opts.samples_per_family) break;
            ExtensionResult ext = extend_arc(ls, system.generators, sol, opts.order);
            if (!ext.complete && ext.cancelled_orders < 3) {
                continue;  // obstructed early: not a credible branch
            }
            double worst = 0;
            if (!verify_cancellation(system.generators, ext.arc, ext.cancelled_orders, &worst))
                continue;
            ArcWitness w;
            w.arc = ext.arc;
            w.exact_arc = ext.exact_arc;
            w.dir = ls.dir;
            w.cancelled_orders = ext.cancelled_orders;
            w.check_residual = worst;
            if (psi) {
                PsiAlongArc pa = psi_along_arc(*psi, ext.arc);
                if (!constraint_satisfied(opts.constraint, pa)) {
                    ++taken;
                    continue;
                }
                w.psi_unbounded = pa.unbounded;
                if (pa.limit_known && !pa.unbounded) w.psi_limit = pa.limit;
            } else if (opts.constraint != VConstraint::None) {
                continue;  // cannot check the constraint without the map
            }
            any_verified = true;
            fc.witnesses.push_back(std::move(w));
            ++taken;
            if (stop_at_first) return fc;
        }
        if (!any_verified) ++fc.refuted_extension;
    }
    return fc;
}

}  // namespace

BoundednessVerdict boundedness(const MilnorSystem& system, const RealPolyMap* psi,
                               const AsymptoticOptions& opts,
                               const std::optional<CertificateClaim>& claim) {
    BoundednessVerdict verdict;
    verdict.wmax = opts.wmax;
    verdict.order = opts.order;

    if (claim) {
        verdict.status = BoundednessStatus::BoundedCert;
        verdict.certificate = claim->rule;
        verdict.hypotheses = claim->hypotheses;
        verdict.evidence = "bounded by " + claim->rule;
        return verdict;
    }

    if (empty_by_definite_generator(system)) {
        verdict.status = BoundednessStatus::Empty;
        verdict.evidence =
            "a sign-definite diagonal generator forces coordinates that lie inside the excluded "
            "locus: the set is empty";
        return verdict;
    }

    AsymptoticOptions eff = opts;
    // keep the direction enumeration at desk scale
    while (eff.wmax > 1 && std::pow(2.0 * eff.wmax + 2.0, system.m) > 4e5) --eff.wmax;
    verdict.wmax = eff.wmax;

    FamilyCollector fc = collect_families(system, psi, eff, /*stop_at_first=*/true);
    std::ostringstream ev;
    if (!fc.witnesses.empty()) {
        const ArcWitness& w = fc.witnesses.front();
        verdict.status = BoundednessStatus::Unbounded;
        verdict.witness = w;
        ev << "unbounded: verified arc along " << describe_direction(w.dir) << ", "
           << w.cancelled_orders << " orders cancelled, recheck residual " << w.check_residual;
        if (w.exact_arc) ev << ", exact rational arc";
        verdict.evidence = ev.str();
        return verdict;
    }

    verdict.status = BoundednessStatus::BoundedSearch;
    ev << "no unbounded branch with leading exponents <= " << eff.wmax
       << " and expansion order <= " << eff.order << " (directions: " << fc.directions_total
       << ", refuted at leading order: " << fc.refuted_leading
       << ", refuted at extension: " << fc.refuted_extension << ")";
    if (eff.wmax != opts.wmax) ev << "; weight cap reduced from " << opts.wmax;
    verdict.evidence = ev.str();
    return verdict;
}

std::vector<ArcWitness> unbounded_milnor_arcs(const RealPolyMap& psi,
                                              const AsymptoticOptions& opts) {
    MilnorSystem ms = milnor_system(psi);
    AsymptoticOptions eff = opts;
    eff.constraint = VConstraint::None;
    while (eff.wmax > 1 && std::pow(2.0 * eff.wmax + 2.0, psi.m) > 4e5) --eff.wmax;
    return collect_families(ms, &psi, eff, /*stop_at_first=*/false).witnesses;
}

AsymptoticValueSet estimate_S(const RealPolyMap& psi, const AsymptoticOptions& opts) {
    AsymptoticValueSet out;
    MilnorSystem ms = milnor_system(psi);

    AsymptoticOptions eff = opts;
    eff.constraint = VConstraint::None;
    while (eff.wmax > 1 && std::pow(2.0 * eff.wmax + 2.0, psi.m) > 4e5) --eff.wmax;

    FamilyCollector fc = collect_families(ms, &psi, eff, /*stop_at_first=*/false);
    out.arcs_found = static_cast<int>(fc.witnesses.size());
    out.method = "limits of Psi along verified unbounded Milnor arcs (wmax " +
                 std::to_string(eff.wmax) + ", order " + std::to_string(eff.order) + ")";

    for (const auto& w : fc.witnesses) {
        if (w.psi_unbounded || w.psi_limit.empty()) continue;
        out.limits.push_back(w.psi_limit);
    }
    if (out.limits.empty()) {
        out.shape = AsymptoticValueSet::Shape::NoFiniteLimits;
        return out;
    }

    bool all_zero = true;
    for (const auto& l : out.limits) {
        double n = 0;
        for (double v : l) n += v * v;
        if (std::sqrt(n) > 1e-6) all_zero = false;
    }
    if (all_zero) {
        out.shape = AsymptoticValueSet::Shape::AllZero;
        return out;
    }

    if (psi.p() == 2) {
        // circle centered at the origin?
        std::vector<double> moduli, angles;
        for (const auto& l : out.limits) {
            moduli.push_back(std::hypot(l[0], l[1]));
            angles.push_back(std::atan2(l[1], l[0]));
        }
        double mean = std::accumulate(moduli.begin(), moduli.end(), 0.0) / moduli.size();
        double spread = 0;
        for (double v : moduli) spread = std::max(spread, std::abs(v - mean));
        double angle_span = 0;
        for (double a : angles)
            for (double b : angles) {
                double d = std::abs(a - b);
                angle_span = std::max(angle_span, std::min(d, 2 * M_PI - d));
            }
        if (mean > 1e-6 && spread <= std::max(1e-3, 0.02 * mean) && angle_span > M_PI / 2 &&
            out.limits.size() >= 6) {
            out.shape = AsymptoticValueSet::Shape::Circle;
            out.circle_radius = mean;
            return out;
        }
    }

    // cluster into a finite set when few distinct values
    std::vector<Eigen::VectorXd> pts;
    for (const auto& l : out.limits)
        pts.push_back(Eigen::Map<const Eigen::VectorXd>(l.data(), l.size()));
    auto reps = cluster_representatives(pts, 1e-4);
    out.shape = reps.size() <= 8 ? AsymptoticValueSet::Shape::FiniteSet
                                 : AsymptoticValueSet::Shape::UnknownCurve;
    return out;
}

SweepReport radius_sweep(const RealPolyMap& psi, const std::vector<double>& radii, int starts,
                         std::uint64_t seed) {
    if (psi.p() < 2) throw std::invalid_argument("radius_sweep requires p >= 2");
    SweepReport report;
    MilnorSystem quotient = milnor_quotient_system(psi);
    CompiledSystem qsys = compile_system(quotient.generators);
    CompiledSystem vsys = compile_system(psi.components);
    const int m = psi.m;
    Rng rng(seed ^ 0x73776565ull);

    std::vector<double> sorted_radii = radii;
    std::sort(sorted_radii.begin(), sorted_radii.end());

    for (double radius : sorted_radii) {
        SweepRow row;
        row.radius = radius;

        // optimize over u and evaluate at R u/|u|
        VectorFunction fn;
        fn.in_dim = m;
        fn.out_dim = qsys.out_dim();
        auto to_sphere = [radius](const Eigen::VectorXd& u) {
            return Eigen::VectorXd(radius * u / u.norm());
        };
        fn.eval = [&](const Eigen::VectorXd& u, Eigen::VectorXd& f) { qsys.eval(to_sphere(u), f); };
        fn.jacobian = [&](const Eigen::VectorXd& u, Eigen::MatrixXd& j) {
            Eigen::MatrixXd jfull;
            Eigen::VectorXd x = to_sphere(u);
            qsys.eval_jacobian(x, jfull);
            double n = u.norm();
            Eigen::MatrixXd proj =
                radius * (Eigen::MatrixXd::Identity(m, m) / n - u * u.transpose() / (n * n * n));
            j = jfull * proj;
        };

        std::vector<Eigen::VectorXd> found;
        for (int s = 0; s < starts; ++s) {
            Eigen::VectorXd u0 = rng.unit_vector(m);
            LMResult lm = lm_minimize(fn, u0);
            Eigen::VectorXd x = to_sphere(lm.x);
            double rel = qsys.relative_residual(x);
            row.min_residual = std::min(row.min_residual, rel);
            if (rel > 1e-9) continue;
            // stay out of the tube around V
            LMResult vproj = lm_minimize(as_function(vsys), x);
            double dist = vsys.relative_residual(vproj.x) < 1e-9
                              ? (vproj.x - x).norm()
                              : std::numeric_limits<double>::infinity();
            if (dist < 1e-3 * radius) continue;
            row.min_dist_to_V = std::min(row.min_dist_to_V, dist);
            found.push_back(x);
        }
        row.solutions = static_cast<int>(cluster_representatives(found, 1e-4 * radius).size());
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace openbook
