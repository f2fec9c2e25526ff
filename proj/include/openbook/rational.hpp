#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdint>
#include <sstream>
#include <string>

namespace openbook {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

/// A Gaussian rational a + b*i with exact rational parts.
struct GaussianRational {
    Rational re, im;

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(long r) : re(r) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational conj() const { return {re, -im}; }

    GaussianRational operator-() const { return {-re, -im}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }

    // division by a nonzero Gaussian rational
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        Rational n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
    friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    }
};

inline GaussianRational conj(const GaussianRational& z) { return z.conj(); }

inline std::complex<double> to_complex(const GaussianRational& z) {
    return {to_double(z.re), to_double(z.im)};
}

// Coefficient conversion hooks used by Poly::eval.
inline void convert_coeff(const Rational& c, double& out) { out = to_double(c); }
inline void convert_coeff(const Rational& c, Rational& out) { out = c; }
inline void convert_coeff(const Rational& c, std::complex<double>& out) { out = to_double(c); }
inline void convert_coeff(const Rational& c, GaussianRational& out) { out = GaussianRational(c); }
inline void convert_coeff(const GaussianRational& c, std::complex<double>& out) { out = to_complex(c); }
inline void convert_coeff(const GaussianRational& c, GaussianRational& out) { out = c; }

inline bool coeff_is_zero(const Rational& c) { return c == 0; }
inline bool coeff_is_zero(const GaussianRational& c) { return c.is_zero(); }
inline bool coeff_is_zero(double c) { return c == 0.0; }
inline bool coeff_is_zero(const std::complex<double>& c) { return c == std::complex<double>(0.0); }

}  // namespace openbook
