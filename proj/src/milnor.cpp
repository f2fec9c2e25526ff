#include "openbook/milnor.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace openbook {

std::string to_string(SystemKind k) {
    switch (k) {
        case SystemKind::Sing: return "SING";
        case SystemKind::Milnor: return "MILNOR";
        case SystemKind::MilnorQuotient: return "MILNOR_QUOTIENT";
        case SystemKind::ZeroLocus: return "ZERO_LOCUS";
    }
    return "?";
}

double MilnorSystem::residual(const std::vector<double>& x) const {
    double worst = 0.0;
    for (const auto& g : generators) {
        double val = 0.0, scale = 0.0;
        for (const auto& [e, c] : g.terms()) {
            double t = to_double(c);
            double mag = std::abs(t);
            for (int j = 0; j < g.nvars(); ++j)
                for (std::uint32_t k = 0; k < e[j]; ++k) {
                    t *= x[j];
                    mag *= std::abs(x[j]);
                }
            val += t;
            scale += mag;
        }
        if (scale == 0.0) continue;
        worst = std::max(worst, std::abs(val) / scale);
    }
    return worst;
}

Matrix<RealPoly> jacobian(const RealPolyMap& map) {
    Matrix<RealPoly> j;
    for (const auto& comp : map.components) {
        std::vector<RealPoly> row;
        for (int v = 0; v < map.m; ++v) row.push_back(comp.derivative(v));
        j.push_back(std::move(row));
    }
    return j;
}

MilnorSystem sing_system(const RealPolyMap& map) {
    const int p = map.p();
    MilnorSystem s{SystemKind::Sing, map.m, {}, {}, "p x p minors of the Jacobian"};
    s.generators = all_minors(jacobian(map), p);
    return s;
}

MilnorSystem milnor_system(const RealPolyMap& map) {
    const int p = map.p();
    MilnorSystem s{SystemKind::Milnor, map.m, {}, {},
                   "(p+1) x (p+1) minors of [Jacobian; position row]"};
    if (map.m == p) {
        // rank of a (p+1) x p matrix never exceeds p: condition holds everywhere
        s.provenance += "; m == p, vacuous condition, empty generator set (whole space)";
        return s;
    }
    Matrix<RealPoly> rows = jacobian(map);
    std::vector<RealPoly> pos;
    for (int v = 0; v < map.m; ++v) pos.push_back(RealPoly::variable(map.m, v));
    rows.push_back(std::move(pos));
    s.generators = all_minors(rows, p + 1);
    return s;
}

OmegaMatrix omega_matrix(const RealPolyMap& map) {
    const int p = map.p();
    if (p < 2) throw std::invalid_argument("omega_matrix requires p >= 2");
    OmegaMatrix om;
    om.m = map.m;
    om.p = p;
    Matrix<RealPoly> grads = jacobian(map);
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j) {
            std::vector<RealPoly> row;
            for (int v = 0; v < map.m; ++v)
                row.push_back(map.components[i] * grads[j][v] - map.components[j] * grads[i][v]);
            om.rows.push_back(std::move(row));
        }
    std::vector<RealPoly> pos;
    for (int v = 0; v < map.m; ++v) pos.push_back(RealPoly::variable(map.m, v));
    om.rows.push_back(std::move(pos));
    return om;
}

MilnorSystem milnor_quotient_system(const RealPolyMap& map) {
    const int p = map.p();
    if (p < 2) throw std::invalid_argument("milnor_quotient_system requires p >= 2");
    MilnorSystem s{SystemKind::MilnorQuotient, map.m, {}, {},
                   "p x p minors of [omega rows; position row]; interpreted off V"};
    s.generators = all_minors(omega_matrix(map).rows, p);
    s.excluded_locus = map.components;
    return s;
}

MilnorSystem zero_locus_system(const RealPolyMap& map) {
    return {SystemKind::ZeroLocus, map.m, map.components, {}, "components of the map"};
}

std::vector<MixedPolynomial> nabla(const MixedPolynomial& f) {
    const int n = f.nvars();
    MixedPolynomial fbar = f.conj();
    MixedPolynomial iu = MixedPolynomial::constant(n, GaussianRational::i());
    std::vector<MixedPolynomial> out;
    out.reserve(n);
    for (int j = 0; j < n; ++j)
        out.push_back(iu * (fbar * f.dzbar(j) - f * f.dz(j).conj()));
    return out;
}

MembershipResult mixed_milnor_membership(const MixedPolynomial& f,
                                         const std::vector<std::complex<double>>& z,
                                         double tol) {
    const int n = f.nvars();
    std::vector<double> x = realify_point(z);
    double xnorm = 0;
    for (double v : x) xnorm += v * v;
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) return {true, 0.0};  // origin: member by convention

    // grad(Re f) and grad(Im f) in realified coordinates, via Wirtinger
    // derivatives: block j of grad g is the complex number 2 * dg/dzbar_j.
    Eigen::MatrixXd a(2 * n, 2);
    for (int j = 0; j < n; ++j) {
        std::complex<double> dz = f.dz(j).eval(z);
        std::complex<double> dzb = f.dzbar(j).eval(z);
        std::complex<double> g_re = std::conj(dz) + dzb;
        std::complex<double> g_im = std::complex<double>(0, 1) * (std::conj(dz) - dzb);
        a(2 * j, 0) = g_re.real();
        a(2 * j + 1, 0) = g_re.imag();
        a(2 * j, 1) = g_im.real();
        a(2 * j + 1, 1) = g_im.imag();
    }
    Eigen::VectorXd xv(2 * n);
    for (int i = 0; i < 2 * n; ++i) xv(i) = x[i];

    // distance from x to the column span of a
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU);
    double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    Eigen::VectorXd proj = Eigen::VectorXd::Zero(2 * n);
    for (int k = 0; k < svd.singularValues().size(); ++k) {
        if (svd.singularValues()(k) <= 1e-13 * smax) continue;
        Eigen::VectorXd u = svd.matrixU().col(k);
        proj += u * (u.dot(xv));
    }
    double residual = (xv - proj).norm() / xnorm;
    return {residual < tol, residual};
}

}  // namespace openbook
