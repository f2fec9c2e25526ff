#pragma once

#include <complex>
#include <string>
#include <vector>

#include "openbook/poly.hpp"

namespace openbook {

/// Polynomial in z_1..z_n and their conjugates, with Gaussian-rational
/// coefficients. Stored as a polynomial in 2n formal variables: slot j is
/// z_{j+1}, slot n+j is the conjugate of z_{j+1}.
class MixedPolynomial {
public:
    MixedPolynomial() : n_(0), p_(0) {}
    explicit MixedPolynomial(int n) : n_(n), p_(2 * n) {}
    MixedPolynomial(int n, CPoly p) : n_(n), p_(std::move(p)) {
        if (p_.nvars() != 2 * n_) throw std::invalid_argument("mixed polynomial arity mismatch");
    }

    static MixedPolynomial zero(int n) { return MixedPolynomial(n); }
    static MixedPolynomial constant(int n, GaussianRational c) {
        return {n, CPoly::constant(2 * n, std::move(c))};
    }
    static MixedPolynomial z(int n, int j) { return {n, CPoly::variable(2 * n, j)}; }
    static MixedPolynomial zbar(int n, int j) { return {n, CPoly::variable(2 * n, n + j)}; }

    int nvars() const { return n_; }
    const CPoly& poly() const { return p_; }
    bool is_zero() const { return p_.is_zero(); }

    /// True exactly when no conjugated variable occurs.
    bool is_holomorphic() const {
        for (const auto& [e, c] : p_.terms()) {
            for (int j = n_; j < 2 * n_; ++j)
                if (e[j]) return false;
        }
        return true;
    }

    /// Complex conjugate: swaps z and conjugate exponents, conjugates
    /// coefficients.
    MixedPolynomial conj() const {
        CPoly q(2 * n_);
        for (const auto& [e, c] : p_.terms()) {
            Expo f(2 * n_);
            for (int j = 0; j < n_; ++j) {
                f[j] = e[n_ + j];
                f[n_ + j] = e[j];
            }
            q.add_term(f, c.conj());
        }
        return {n_, q};
    }

    friend MixedPolynomial operator+(const MixedPolynomial& a, const MixedPolynomial& b) {
        return {a.n_, a.p_ + b.p_};
    }
    friend MixedPolynomial operator-(const MixedPolynomial& a, const MixedPolynomial& b) {
        return {a.n_, a.p_ - b.p_};
    }
    friend MixedPolynomial operator*(const MixedPolynomial& a, const MixedPolynomial& b) {
        return {a.n_, a.p_ * b.p_};
    }
    MixedPolynomial operator-() const { return {n_, -p_}; }
    friend bool operator==(const MixedPolynomial& a, const MixedPolynomial& b) {
        return a.n_ == b.n_ && a.p_ == b.p_;
    }

    /// d/dz_j, treating z and conjugates as independent variables.
    MixedPolynomial dz(int j) const { return {n_, p_.derivative(j)}; }
    /// d/dzbar_j.
    MixedPolynomial dzbar(int j) const { return {n_, p_.derivative(n_ + j)}; }

    std::complex<double> eval(const std::vector<std::complex<double>>& z) const {
        return eval_impl(z);
    }
    GaussianRational eval(const std::vector<GaussianRational>& z) const { return eval_impl(z); }

private:
    template <class T>
    T eval_impl(const std::vector<T>& z) const {
        if (static_cast<int>(z.size()) != n_) throw std::invalid_argument("point arity mismatch");
        std::vector<T> full(z);
        full.reserve(2 * n_);
        for (int j = 0; j < n_; ++j) full.push_back(conj_value(z[j]));
        return p_.template eval<T>(full);
    }
    static std::complex<double> conj_value(const std::complex<double>& v) { return std::conj(v); }
    static GaussianRational conj_value(const GaussianRational& v) { return v.conj(); }

    int n_;
    CPoly p_;
};

/// Wirtinger gradient pair (df, dbar f).
struct WirtingerPair {
    std::vector<MixedPolynomial> dz;
    std::vector<MixedPolynomial> dzbar;
};

inline WirtingerPair wirtinger(const MixedPolynomial& f) {
    WirtingerPair w;
    for (int j = 0; j < f.nvars(); ++j) {
        w.dz.push_back(f.dz(j));
        w.dzbar.push_back(f.dzbar(j));
    }
    return w;
}

/// g * conj(h) for holomorphic g, h.
inline MixedPolynomial conj_product(const MixedPolynomial& g, const MixedPolynomial& h) {
    if (!g.is_holomorphic() || !h.is_holomorphic())
        throw std::invalid_argument("conj_product requires holomorphic factors");
    return g * h.conj();
}

/// Tuple of real polynomials x = (x_1..x_m) -> (P_1(x)..P_p(x)).
struct RealPolyMap {
    int m = 0;  // source dimension
    std::vector<RealPoly> components;

    int p() const { return static_cast<int>(components.size()); }

    std::vector<double> eval(const std::vector<double>& x) const {
        std::vector<double> v;
        v.reserve(components.size());
        for (const auto& c : components) v.push_back(c.eval<double>(x));
        return v;
    }
    std::vector<Rational> eval(const std::vector<Rational>& x) const {
        std::vector<Rational> v;
        v.reserve(components.size());
        for (const auto& c : components) v.push_back(c.eval<Rational>(x));
        return v;
    }
};

/// View a mixed polynomial as a real map R^{2n} -> R^2 under the convention
/// z_j = x_{2j-1} + i*x_{2j}.
RealPolyMap realify(const MixedPolynomial& f);

/// Realify a single component to its (Re, Im) pair.
std::pair<RealPoly, RealPoly> realify_parts(const MixedPolynomial& f);

/// Lift a real point of R^{2n} to the complex point it represents.
std::vector<std::complex<double>> complexify_point(const std::vector<double>& x);

/// Flatten a complex point into interleaved real coordinates.
std::vector<double> realify_point(const std::vector<std::complex<double>>& z);

}  // namespace openbook
