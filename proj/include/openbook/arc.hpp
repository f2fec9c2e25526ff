#pragma once

#include <climits>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "openbook/poly.hpp"

namespace openbook {

// Sentinel for "exact down to -infinity".
constexpr long long kExactTail = LLONG_MIN / 4;

/// Truncated Laurent series in t around t = infinity. Stored coefficients
/// cover exponents >= valid_down; anything below valid_down is unknown
/// (truncation error region). valid_down == kExactTail means the series is
/// exact.
template <class C>
struct LaurentSeries {
    std::map<long long, C, std::greater<long long>> coeffs;
    long long valid_down = kExactTail;

    static LaurentSeries zero() { return {}; }

    static LaurentSeries monomial(long long e, C c) {
        LaurentSeries s;
        if (!coeff_is_zero(c)) s.coeffs.emplace(e, std::move(c));
        return s;
    }

    bool known_zero() const { return coeffs.empty() && valid_down == kExactTail; }

    void set(long long e, const C& c) {
        if (coeff_is_zero(c))
            coeffs.erase(e);
        else
            coeffs[e] = c;
    }

    C at(long long e) const {
        auto it = coeffs.find(e);
        return it == coeffs.end() ? C(0) : it->second;
    }

    /// Largest exponent that could carry a nonzero coefficient.
    long long upper_bound_exp() const {
        if (!coeffs.empty()) return coeffs.begin()->first;
        if (valid_down == kExactTail) return kExactTail;  // identically zero
        return valid_down - 1;
    }

    std::optional<long long> leading_exponent() const {
        if (coeffs.empty()) return std::nullopt;
        return coeffs.begin()->first;
    }

    void trim() {
        if (valid_down == kExactTail) return;
        for (auto it = coeffs.begin(); it != coeffs.end();) {
            if (it->first < valid_down)
                it = coeffs.erase(it);
            else
                ++it;
        }
    }

    LaurentSeries& operator+=(const LaurentSeries& o) {
        valid_down = std::max(valid_down, o.valid_down);
        for (const auto& [e, c] : o.coeffs) {
            auto it = coeffs.find(e);
            if (it == coeffs.end()) {
                coeffs.emplace(e, c);
            } else {
                it->second += c;
                if (coeff_is_zero(it->second)) coeffs.erase(it);
            }
        }
        trim();
        return *this;
    }
    friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }

    LaurentSeries operator-() const {
        LaurentSeries r = *this;
        for (auto& [e, c] : r.coeffs) c = -c;
        return r;
    }
    LaurentSeries& operator-=(const LaurentSeries& o) { return *this += -o; }
    friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }

    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
        LaurentSeries r;
        if (a.known_zero() || b.known_zero()) return r;
        long long ua = a.upper_bound_exp(), ub = b.upper_bound_exp();
        if (a.valid_down == kExactTail && b.valid_down == kExactTail)
            r.valid_down = kExactTail;
        else {
            long long va = a.valid_down == kExactTail ? kExactTail : a.valid_down + ub;
            long long vb = b.valid_down == kExactTail ? kExactTail : b.valid_down + ua;
            r.valid_down = std::max(va, vb);
        }
        for (const auto& [ea, ca] : a.coeffs)
            for (const auto& [eb, cb] : b.coeffs) {
                C prod = ca * cb;
                if (coeff_is_zero(prod)) continue;
                auto it = r.coeffs.find(ea + eb);
                if (it == r.coeffs.end()) {
                    r.coeffs.emplace(ea + eb, prod);
                } else {
                    it->second += prod;
                    if (coeff_is_zero(it->second)) r.coeffs.erase(it);
                }
            }
        r.trim();
        return r;
    }
    LaurentSeries& operator*=(const LaurentSeries& o) { return *this = *this * o; }

    LaurentSeries pow(std::uint32_t k) const {
        LaurentSeries r = monomial(0, C(1));
        LaurentSeries base = *this;
        while (k) {
            if (k & 1) r *= base;
            k >>= 1;
            if (k) base = base * base;
        }
        return r;
    }

    /// Finite limit as t -> infinity, when determinable from the known part.
    /// nullopt = grows, or not determinable from the truncation.
    std::optional<C> finite_limit() const {
        long long u = upper_bound_exp();
        if (u == kExactTail) return C(0);  // identically zero
        if (u > 0) return std::nullopt;
        if (valid_down != kExactTail && valid_down > 0) return std::nullopt;
        return at(0);
    }

    double eval_at(double t) const {
        double acc = 0;
        for (const auto& [e, c] : coeffs) acc += to_num(c) * std::pow(t, static_cast<double>(e));
        return acc;
    }

private:
    static double to_num(double c) { return c; }
    static double to_num(const Rational& c) { return to_double(c); }
    static double to_num(const GaussianRational& c) { return to_double(c.re); }
};

enum class ArcRing { Real, Complex };

/// Truncated parametrized curve x_j(t) = sum_k a_{j,k} t^(w_j - k) with
/// t -> infinity. Variables with an empty coefficient list are identically
/// zero (inactive). exact_tail declares that the stored coefficients are the
/// whole series, not a truncation.
template <class C>
struct ArcT {
    int nvars = 0;
    ArcRing ring = ArcRing::Real;
    std::vector<long long> lead_exp;           // w_j, meaningful when active
    std::vector<std::vector<C>> coeffs;        // a_{j,0..K}; empty = inactive
    bool exact_tail = false;

    bool active(int j) const { return !coeffs[j].empty(); }

    int truncation_order() const {
        std::size_t k = 0;
        for (const auto& c : coeffs)
            if (!c.empty()) k = std::max(k, c.size() - 1);
        return static_cast<int>(k);
    }

    bool unbounded() const {
        for (int j = 0; j < nvars; ++j)
            if (active(j) && lead_exp[j] > 0 && !coeff_is_zero(coeffs[j][0])) return true;
        return false;
    }

    void validate() const {
        if (static_cast<int>(lead_exp.size()) != nvars ||
            static_cast<int>(coeffs.size()) != nvars)
            throw std::invalid_argument("arc arity mismatch");
        for (int j = 0; j < nvars; ++j)
            if (active(j) && coeff_is_zero(coeffs[j][0]))
                throw std::invalid_argument("active arc variable with zero leading coefficient");
    }

    LaurentSeries<C> variable_series(int j) const {
        LaurentSeries<C> s;
        if (!active(j)) return s;
        for (std::size_t k = 0; k < coeffs[j].size(); ++k)
            if (!coeff_is_zero(coeffs[j][k])) s.coeffs.emplace(lead_exp[j] - static_cast<long long>(k), coeffs[j][k]);
        if (!exact_tail)
            s.valid_down = lead_exp[j] - static_cast<long long>(coeffs[j].size()) + 1;
        return s;
    }

    std::vector<double> eval_at(double t) const {
        std::vector<double> x(nvars, 0.0);
        for (int j = 0; j < nvars; ++j) {
            double acc = 0;
            for (std::size_t k = 0; k < coeffs[j].size(); ++k)
                acc += num(coeffs[j][k]) * std::pow(t, static_cast<double>(lead_exp[j]) - static_cast<double>(k));
            x[j] = acc;
        }
        return x;
    }

private:
    static double num(double c) { return c; }
    static double num(const Rational& c) { return to_double(c); }
    static double num(const GaussianRational& c) { return to_double(c.re); }
};

using Arc = ArcT<Rational>;
using ComplexArc = ArcT<GaussianRational>;
using NumericArc = ArcT<double>;

/// Substitute an arc into a polynomial. The result records the exponent
/// below which truncation error may appear.
template <class C, class PC>
LaurentSeries<C> arc_substitute(const Poly<PC>& g, const ArcT<C>& arc) {
    if (g.nvars() != arc.nvars) throw std::invalid_argument("arc/polynomial arity mismatch");
    std::vector<LaurentSeries<C>> var_series;
    var_series.reserve(arc.nvars);
    for (int j = 0; j < arc.nvars; ++j) var_series.push_back(arc.variable_series(j));

    LaurentSeries<C> acc;
    for (const auto& [e, craw] : g.terms()) {
        C c;
        convert_coeff(craw, c);
        LaurentSeries<C> term = LaurentSeries<C>::monomial(0, c);
        bool dead = false;
        for (int j = 0; j < arc.nvars && !dead; ++j) {
            if (!e[j]) continue;
            if (!arc.active(j)) {
                dead = true;
                break;
            }
            term *= var_series[j].pow(e[j]);
        }
        if (!dead) acc += term;
    }
    return acc;
}

/// Weighted degree bound of g along the arc's exponent pattern: the largest
/// t-exponent any single term of g can contribute (inactive variables kill a
/// term). nullopt when every term dies.
template <class C, class PC>
std::optional<long long> arc_degree_bound(const Poly<PC>& g, const ArcT<C>& arc) {
    std::optional<long long> best;
    for (const auto& [e, c] : g.terms()) {
        long long d = 0;
        bool dead = false;
        for (int j = 0; j < arc.nvars; ++j) {
            if (!e[j]) continue;
            if (!arc.active(j)) {
                dead = true;
                break;
            }
            d += static_cast<long long>(e[j]) * arc.lead_exp[j];
        }
        if (!dead && (!best || d > *best)) best = d;
    }
    return best;
}

}  // namespace openbook
