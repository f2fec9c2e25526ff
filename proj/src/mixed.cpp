#include "openbook/mixed.hpp"

namespace openbook {

std::pair<RealPoly, RealPoly> realify_parts(const MixedPolynomial& f) {
    const int n = f.nvars();
    const int m = 2 * n;
    // z_j -> x_{2j-1} + i x_{2j}, conj(z_j) -> x_{2j-1} - i x_{2j}
    std::vector<CPoly> repl;
    repl.reserve(2 * n);
    for (int j = 0; j < n; ++j) {
        CPoly re = CPoly::variable(m, 2 * j);
        CPoly im = CPoly::variable(m, 2 * j + 1);
        repl.push_back(re + GaussianRational::i() * im);
    }
    for (int j = 0; j < n; ++j) {
        CPoly re = CPoly::variable(m, 2 * j);
        CPoly im = CPoly::variable(m, 2 * j + 1);
        repl.push_back(re - GaussianRational::i() * im);
    }
    CPoly expanded = f.poly().substitute(repl);

    RealPoly re(m), im(m);
    for (const auto& [e, c] : expanded.terms()) {
        if (c.re != 0) re.add_term(e, c.re);
        if (c.im != 0) im.add_term(e, c.im);
    }
    return {re, im};
}

RealPolyMap realify(const MixedPolynomial& f) {
    auto [re, im] = realify_parts(f);
    RealPolyMap map;
    map.m = 2 * f.nvars();
    map.components = {re, im};
    return map;
}

std::vector<std::complex<double>> complexify_point(const std::vector<double>& x) {
    std::vector<std::complex<double>> z(x.size() / 2);
    for (std::size_t j = 0; j < z.size(); ++j) z[j] = {x[2 * j], x[2 * j + 1]};
    return z;
}

std::vector<double> realify_point(const std::vector<std::complex<double>>& z) {
    std::vector<double> x(2 * z.size());
    for (std::size_t j = 0; j < z.size(); ++j) {
        x[2 * j] = z[j].real();
        x[2 * j + 1] = z[j].imag();
    }
    return x;
}

}  // namespace openbook
