#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "openbook/rational.hpp"

namespace openbook {

// Per-variable exponents above this bound are rejected instead of wrapped.
constexpr std::uint32_t kExponentCap = 1u << 16;

using Expo = std::vector<std::uint32_t>;

struct ExponentOverflow : std::runtime_error {
    ExponentOverflow() : std::runtime_error("per-variable exponent exceeds 2^16") {}
};

inline std::uint32_t expo_total(const Expo& e) {
    std::uint32_t s = 0;
    for (auto x : e) s += x;
    return s;
}

// Graded-lex: compare by total degree, then lexicographically. Returns true
// when a precedes b in descending canonical order (a "larger" than b).
inline bool grlex_greater(const Expo& a, const Expo& b) {
    std::uint32_t ta = expo_total(a), tb = expo_total(b);
    if (ta != tb) return ta > tb;
    return a > b;
}

/// Sparse multivariate polynomial over an exact coefficient ring C.
///
/// Terms are a map from exponent vectors (one slot per variable) to nonzero
/// coefficients. All arithmetic is exact; nothing here touches floating
/// point except the eval<T>() conversion path.
template <class C>
class Poly {
public:
    using Terms = std::map<Expo, C>;

    Poly() : nvars_(0) {}
    explicit Poly(int nvars) : nvars_(nvars) {}

    static Poly zero(int nvars) { return Poly(nvars); }

    static Poly constant(int nvars, C c) {
        Poly p(nvars);
        if (!coeff_is_zero(c)) p.terms_.emplace(Expo(nvars, 0), std::move(c));
        return p;
    }

    static Poly variable(int nvars, int j, std::uint32_t power = 1) {
        Poly p(nvars);
        Expo e(nvars, 0);
        e.at(j) = power;
        p.terms_.emplace(std::move(e), C(1));
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const Terms& terms() const { return terms_; }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && expo_total(terms_.begin()->first) == 0);
    }

    std::uint32_t total_degree() const {
        std::uint32_t d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, expo_total(e));
        return d;
    }

    std::uint32_t degree_in(int j) const {
        std::uint32_t d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[j]);
        return d;
    }

    void add_term(const Expo& e, const C& c) {
        if (static_cast<int>(e.size()) != nvars_) throw std::invalid_argument("exponent arity mismatch");
        for (auto x : e)
            if (x > kExponentCap) throw ExponentOverflow();
        if (coeff_is_zero(c)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (coeff_is_zero(it->second)) terms_.erase(it);
        }
    }

    Poly operator-() const {
        Poly r(nvars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    Poly& operator+=(const Poly& o) {
        check_arity(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        check_arity(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check_arity(b);
        Poly r(a.nvars_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Expo e(a.nvars_);
                for (int j = 0; j < a.nvars_; ++j) {
                    e[j] = ea[j] + eb[j];
                    if (e[j] > kExponentCap) throw ExponentOverflow();
                }
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly& operator*=(const C& s) {
        if (coeff_is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }
    friend Poly operator*(Poly a, const C& s) { return a *= s; }
    friend Poly operator*(const C& s, Poly a) { return a *= s; }

    Poly pow(std::uint32_t k) const {
        Poly r = constant(nvars_, C(1));
        Poly base = *this;
        while (k) {
            if (k & 1) r *= base;
            k >>= 1;
            if (k) base = base * base;
        }
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Formal partial derivative with respect to variable j.
    Poly derivative(int j) const {
        Poly r(nvars_);
        for (const auto& [e, c] : terms_) {
            if (e[j] == 0) continue;
            Expo d = e;
            d[j] -= 1;
            r.add_term(d, c * C(static_cast<long>(e[j])));
        }
        return r;
    }

    /// Evaluate with coefficients converted into T (exact when T is exact).
    template <class T>
    T eval(const std::vector<T>& point) const {
        if (static_cast<int>(point.size()) != nvars_) throw std::invalid_argument("point arity mismatch");
        T acc{};
        for (const auto& [e, c] : terms_) {
            T t;
            convert_coeff(c, t);
            for (int j = 0; j < nvars_; ++j) {
                for (std::uint32_t k = 0; k < e[j]; ++k) t = t * point[j];
            }
            acc += t;
        }
        return acc;
    }

    /// Substitute each variable by a polynomial (in a possibly different
    /// variable set). All replacement polynomials must share an arity.
    Poly substitute(const std::vector<Poly>& repl) const {
        if (static_cast<int>(repl.size()) != nvars_) throw std::invalid_argument("substitution arity mismatch");
        int outvars = repl.empty() ? 0 : repl[0].nvars();
        Poly r(outvars);
        for (const auto& [e, c] : terms_) {
            Poly t = constant(outvars, c);
            for (int j = 0; j < nvars_; ++j) {
                if (e[j]) t *= repl[j].pow(e[j]);
            }
            r += t;
        }
        return r;
    }

    /// Leading term under graded-lex (largest). Polynomial must be nonzero.
    std::pair<Expo, C> leading_term() const {
        if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
        auto best = terms_.begin();
        for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it) {
            if (grlex_greater(it->first, best->first)) best = it;
        }
        return *best;
    }

    /// Exact division: *this = q * d with no remainder. Throws if d does not
    /// divide exactly (used by fraction-free elimination, where it must).
    Poly divide_exact(const Poly& d) const {
        if (d.is_zero()) throw std::invalid_argument("division by zero polynomial");
        Poly q(nvars_), r = *this;
        auto [de, dc] = d.leading_term();
        while (!r.is_zero()) {
            auto [re, rc] = r.leading_term();
            Expo e(nvars_);
            for (int j = 0; j < nvars_; ++j) {
                if (re[j] < de[j]) throw std::runtime_error("inexact polynomial division");
                e[j] = re[j] - de[j];
            }
            C c = rc / dc;
            Poly t(nvars_);
            t.add_term(e, c);
            q += t;
            r -= t * d;
        }
        return q;
    }

    /// Terms sorted in descending graded-lex order (canonical print order).
    std::vector<std::pair<Expo, C>> sorted_terms() const {
        std::vector<std::pair<Expo, C>> v(terms_.begin(), terms_.end());
        std::sort(v.begin(), v.end(),
                  [](const auto& a, const auto& b) { return grlex_greater(a.first, b.first); });
        return v;
    }

private:
    void check_arity(const Poly& o) const {
        if (nvars_ != o.nvars_) throw std::invalid_argument("polynomial arity mismatch");
    }

    int nvars_;
    Terms terms_;
};

using RealPoly = Poly<Rational>;
using CPoly = Poly<GaussianRational>;

}  // namespace openbook
