#include "openbook/search.hpp"

#include <cmath>

namespace openbook {

namespace {

std::vector<RealPoly> realified_nabla(const MixedPolynomial& f) {
    std::vector<RealPoly> out;
    for (const auto& comp : nabla(f)) {
        auto [re, im] = realify_parts(comp);
        out.push_back(re);
        out.push_back(im);
    }
    return out;
}

// Relative criticality residual of f/|f| at z: |nabla(z)| scaled by the
// natural magnitude |f| (|df| + |dbar f|).
double phase_residual(const MixedPolynomial& f, const std::vector<std::complex<double>>& z) {
    const int n = f.nvars();
    double nrm_nabla = 0, nrm_d = 0;
    std::complex<double> fv = f.eval(z);
    for (int j = 0; j < n; ++j) {
        std::complex<double> dz = f.dz(j).eval(z);
        std::complex<double> dzb = f.dzbar(j).eval(z);
        std::complex<double> nab =
            std::complex<double>(0, 1) * (std::conj(fv) * dzb - fv * std::conj(dz));
        nrm_nabla += std::norm(nab);
        nrm_d += std::norm(dz) + std::norm(dzb);
    }
    double scale = std::abs(fv) * std::sqrt(nrm_d);
    if (scale == 0.0) return std::sqrt(nrm_nabla) == 0.0 ? 0.0 : 1e300;
    return std::sqrt(nrm_nabla) / scale;
}

}  // namespace

TorusSearchResult quotient_critical_on_torus(const MixedPolynomial& f_delta,
                                             const SearchBudget& budget) {
    const int n = f_delta.nvars();
    TorusSearchResult result;
    result.starts = budget.starts;

    CompiledSystem sys = compile_system(realified_nabla(f_delta));
    VectorFunction fn = as_function(sys);
    Rng rng(budget.seed);

    const double min_mod = 0.05;  // stay on the torus
    for (int s = 0; s < budget.starts; ++s) {
        Eigen::VectorXd x0(2 * n);
        for (int j = 0; j < n; ++j) {
            double r = rng.uniform(0.3, 3.0);
            double phi = rng.uniform(0.0, 2 * M_PI);
            x0(2 * j) = r * std::cos(phi);
            x0(2 * j + 1) = r * std::sin(phi);
        }
        LMResult lm = lm_minimize(fn, x0);

        std::vector<double> xv(lm.x.data(), lm.x.data() + 2 * n);
        auto z = complexify_point(xv);
        bool on_torus = true;
        for (int j = 0; j < n; ++j) on_torus = on_torus && std::abs(z[j]) > min_mod;
        if (!on_torus) continue;
        std::complex<double> fv = f_delta.eval(z);
        double fscale = 0;
        for (int j = 0; j < n; ++j) fscale = std::max(fscale, std::abs(z[j]));
        if (std::abs(fv) < 1e-7 * std::max(1.0, fscale)) continue;  // too close to V

        double res = phase_residual(f_delta, z);
        result.min_residual = std::min(result.min_residual, res);
        if (res < budget.tol) {
            result.witness_found = true;
            result.witness = z;
            return result;
        }
    }
    return result;
}

namespace {

// Project a point onto V by least squares on the components.
std::optional<Eigen::VectorXd> project_to_V(const CompiledSystem& vsys, Eigen::VectorXd x0) {
    LMResult lm = lm_minimize(as_function(vsys), std::move(x0));
    if (vsys.relative_residual(lm.x) < 1e-9) return lm.x;
    return std::nullopt;
}

// Local dimension of V at x from a cloud of nearby projected points.
int local_dimension(const CompiledSystem& vsys, const Eigen::VectorXd& x, double delta, Rng& rng) {
    const int m = static_cast<int>(x.size());
    std::vector<Eigen::VectorXd> cloud;
    const int wanted = 6 * m;
    for (int i = 0; i < 4 * wanted && static_cast<int>(cloud.size()) < wanted; ++i) {
        Eigen::VectorXd pert = x + delta * rng.unit_vector(m);
        auto proj = project_to_V(vsys, pert);
        if (!proj) continue;
        if ((*proj - x).norm() > 3 * delta) continue;
        cloud.push_back(*proj);
    }
    if (cloud.size() < static_cast<std::size_t>(m + 1)) return -1;
    Eigen::MatrixXd a(cloud.size(), m);
    for (std::size_t i = 0; i < cloud.size(); ++i) a.row(i) = (cloud[i] - x) / delta;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const auto& s = svd.singularValues();
    double thresh = 0.05 * std::sqrt(static_cast<double>(cloud.size()));
    int dim = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > thresh) ++dim;
    return dim;
}

}  // namespace

CodimReport codim_at_infinity(const RealPolyMap& map, double r0, const SearchBudget& budget) {
    CodimReport report;
    const int m = map.m;
    const int p = map.p();
    CompiledSystem vsys = compile_system(map.components);
    Rng rng(budget.seed ^ 0x636f64696dull);

    std::vector<Eigen::VectorXd> base;
    for (int s = 0; s < budget.starts && static_cast<int>(base.size()) < 24; ++s) {
        double radius = r0 * (1.0 + rng.uniform(0.0, 1.0));
        Eigen::VectorXd x0 = radius * rng.unit_vector(m);
        auto proj = project_to_V(vsys, x0);
        if (!proj || proj->norm() < r0) continue;
        bool fresh = true;
        for (const auto& b : base)
            if ((b - *proj).norm() < 1e-3 * r0) fresh = false;
        if (fresh) base.push_back(*proj);
    }
    report.samples = static_cast<int>(base.size());
    if (base.empty()) {
        report.status = CodimStatus::Unknown;
        report.note = "V appears empty outside radius " + std::to_string(r0) + " (up to search)";
        return report;
    }

    int confirmed = 0;
    for (const auto& x : base) {
        double delta = 1e-3 * x.norm();
        int dim = local_dimension(vsys, x, delta, rng);
        if (dim < 0) continue;
        int codim = m - dim;
        if (codim == p) {
            ++confirmed;
        } else if (codim < p) {
            report.status = CodimStatus::Violated;
            report.codim = codim;
            report.witness.assign(x.data(), x.data() + m);
            report.note = "component of codimension " + std::to_string(codim) +
                          " found at radius " + std::to_string(x.norm());
            return report;
        }
        // codim > p would mean an overdetermined sheet; treated as consistent
        // with "every component has codim >= p" only when equal, so flag it.
        else {
            report.note = "sample with estimated codimension " + std::to_string(codim) +
                          " > p encountered";
        }
    }
    if (confirmed == static_cast<int>(base.size())) {
        report.status = CodimStatus::Confirmed;
        report.codim = p;
        return report;
    }
    report.status = CodimStatus::Unknown;
    if (report.note.empty()) report.note = "local dimension estimates inconclusive";
    return report;
}

SingSurvey survey_singular_locus(const RealPolyMap& map, const SearchBudget& budget) {
    SingSurvey survey;
    MilnorSystem sing = sing_system(map);
    bool trivially_empty = false;
    for (const auto& g : sing.generators)
        if (g.is_constant() && !g.is_zero()) trivially_empty = true;
    if (trivially_empty) return survey;  // a nonzero constant minor: Sing is empty

    CompiledSystem ssys = compile_system(sing.generators);
    CompiledSystem vsys = compile_system(map.components);
    if (ssys.out_dim() == 0) return survey;
    Rng rng(budget.seed ^ 0x73696e67ull);

    const double shells[] = {1.0, 10.0, 100.0, 1000.0};
    std::vector<Eigen::VectorXd> found;
    for (double shell : shells) {
        for (int s = 0; s < budget.starts / 4; ++s) {
            Eigen::VectorXd x0 = shell * rng.uniform(0.5, 1.5) * rng.unit_vector(map.m);
            LMResult lm = lm_minimize(as_function(ssys), x0);
            if (ssys.relative_residual(lm.x) > 1e-9) continue;
            found.push_back(lm.x);
        }
    }
    if (found.empty()) return survey;
    survey.found_any = true;

    std::vector<int> reps = cluster_representatives(found, 1e-4);
    for (int idx : reps) {
        const Eigen::VectorXd& x = found[idx];
        std::vector<double> xv(x.data(), x.data() + map.m);
        double vres = vsys.relative_residual(x);
        survey.samples.push_back(xv);
        survey.sample_radius.push_back(x.norm());
        survey.psi_residual.push_back(vres);
        survey.values.push_back(map.eval(xv));
        if (vres < 1e-7) {
            survey.max_on_V_radius = std::max(survey.max_on_V_radius, x.norm());
        } else {
            survey.subset_V = false;
            if (!survey.off_V_witness) survey.off_V_witness = xv;
        }
    }
    survey.cap_V_bounded = survey.max_on_V_radius <= 100.0;
    return survey;
}

PhaseCriticalSurvey survey_phase_critical(const MixedPolynomial& f, const SearchBudget& budget) {
    PhaseCriticalSurvey survey;
    const int n = f.nvars();
    CompiledSystem sys = compile_system(realified_nabla(f));
    if (sys.out_dim() == 0) return survey;
    Rng rng(budget.seed ^ 0x70686173ull);

    const double shells[] = {1.0, 10.0, 100.0};
    for (double shell : shells) {
        for (int s = 0; s < budget.starts / 3; ++s) {
            Eigen::VectorXd x0 = shell * rng.uniform(0.5, 1.5) * rng.unit_vector(2 * n);
            LMResult lm = lm_minimize(as_function(sys), x0);
            std::vector<double> xv(lm.x.data(), lm.x.data() + 2 * n);
            auto z = complexify_point(xv);
            std::complex<double> fv = f.eval(z);
            double fscale = 1.0;
            for (int j = 0; j < n; ++j) fscale = std::max(fscale, std::abs(z[j]));
            if (std::abs(fv) < 1e-9 * fscale) continue;  // on V: irrelevant for f/|f|
            if (phase_residual(f, z) > budget.tol) continue;
            survey.found_any = true;
            survey.values.push_back(fv);
        }
    }
    return survey;
}

}  // namespace openbook
