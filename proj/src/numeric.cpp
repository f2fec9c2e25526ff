#include "openbook/numeric.hpp"

#include <cmath>

namespace openbook {

double CompiledPoly::eval(const Eigen::VectorXd& x) const {
    double acc = 0;
    for (const auto& t : terms) {
        double v = t.c;
        for (int j = 0; j < nvars; ++j)
            for (std::uint32_t k = 0; k < t.e[j]; ++k) v *= x(j);
        acc += v;
    }
    return acc;
}

double CompiledPoly::scale(const Eigen::VectorXd& x) const {
    double acc = 0;
    for (const auto& t : terms) {
        double v = std::abs(t.c);
        for (int j = 0; j < nvars; ++j)
            for (std::uint32_t k = 0; k < t.e[j]; ++k) v *= std::abs(x(j));
        acc += v;
    }
    return acc;
}

CompiledPoly compile(const RealPoly& p) {
    CompiledPoly cp;
    cp.nvars = p.nvars();
    for (const auto& [e, c] : p.terms()) {
        CompiledPoly::Term t;
        t.c = to_double(c);
        t.e.assign(e.begin(), e.end());
        cp.terms.push_back(std::move(t));
    }
    return cp;
}

CompiledSystem compile_system(const std::vector<RealPoly>& gens) {
    CompiledSystem sys;
    if (gens.empty()) return sys;
    sys.nvars = gens[0].nvars();
    for (const auto& g : gens) {
        sys.polys.push_back(compile(g));
        std::vector<CompiledPoly> row;
        for (int j = 0; j < sys.nvars; ++j) row.push_back(compile(g.derivative(j)));
        sys.jac.push_back(std::move(row));
    }
    return sys;
}

void CompiledSystem::eval(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
    f.resize(out_dim());
    for (int i = 0; i < out_dim(); ++i) f(i) = polys[i].eval(x);
}

void CompiledSystem::eval_jacobian(const Eigen::VectorXd& x, Eigen::MatrixXd& j) const {
    j.resize(out_dim(), nvars);
    for (int i = 0; i < out_dim(); ++i)
        for (int v = 0; v < nvars; ++v) j(i, v) = jac[i][v].eval(x);
}

double CompiledSystem::relative_residual(const Eigen::VectorXd& x) const {
    double worst = 0;
    for (const auto& p : polys) {
        double s = p.scale(x);
        if (s == 0) continue;
        worst = std::max(worst, std::abs(p.eval(x)) / s);
    }
    return worst;
}

VectorFunction as_function(const CompiledSystem& sys) {
    VectorFunction fn;
    fn.in_dim = sys.nvars;
    fn.out_dim = sys.out_dim();
    fn.eval = [&sys](const Eigen::VectorXd& x, Eigen::VectorXd& f) { sys.eval(x, f); };
    fn.jacobian = [&sys](const Eigen::VectorXd& x, Eigen::MatrixXd& j) { sys.eval_jacobian(x, j); };
    return fn;
}

LMResult lm_minimize(const VectorFunction& fn, Eigen::VectorXd x, const LMOptions& opts) {
    Eigen::VectorXd f;
    Eigen::MatrixXd j;
    fn.eval(x, f);
    double cost = f.squaredNorm();
    double lambda = 1e-3;

    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        if (cost <= opts.residual_tol) break;
        fn.jacobian(x, j);
        Eigen::MatrixXd jtj = j.transpose() * j;
        Eigen::VectorXd jtf = j.transpose() * f;
        if (jtf.norm() <= 1e-300) break;

        bool stepped = false;
        for (int tries = 0; tries < 12; ++tries) {
            Eigen::MatrixXd damped = jtj;
            for (int d = 0; d < damped.rows(); ++d)
                damped(d, d) += lambda * (jtj(d, d) > 0 ? jtj(d, d) : 1.0);
            Eigen::VectorXd delta = damped.ldlt().solve(-jtf);
            if (!delta.allFinite()) {
                lambda *= 10;
                continue;
            }
            Eigen::VectorXd xn = x + delta;
            Eigen::VectorXd fnew;
            fn.eval(xn, fnew);
            double cost_new = fnew.squaredNorm();
            if (cost_new < cost) {
                double step = delta.norm();
                x = xn;
                f = fnew;
                cost = cost_new;
                lambda = std::max(lambda * 0.3, 1e-12);
                stepped = true;
                if (step <= opts.step_tol * (1.0 + x.norm())) iter = opts.max_iterations;
                break;
            }
            lambda *= 10;
            if (lambda > 1e12) break;
        }
        if (!stepped) break;
    }
    return {x, cost, cost <= opts.residual_tol};
}

std::vector<int> cluster_representatives(const std::vector<Eigen::VectorXd>& pts, double radius) {
    std::vector<int> reps;
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
        bool close = false;
        for (int r : reps)
            if ((pts[i] - pts[r]).norm() <= radius) {
                close = true;
                break;
            }
        if (!close) reps.push_back(i);
    }
    return reps;
}

int numeric_rank(const Eigen::MatrixXd& a, double rel_tol) {
    if (a.rows() == 0 || a.cols() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    int r = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > rel_tol * s(0)) ++r;
    return r;
}

}  // namespace openbook
