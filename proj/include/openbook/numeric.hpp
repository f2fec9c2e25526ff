#pragma once

#include <Eigen/Dense>
#include <functional>
#include <random>
#include <vector>

#include "openbook/poly.hpp"

namespace openbook {

/// Flattened polynomial for fast double evaluation in search loops.
struct CompiledPoly {
    struct Term {
        double c;
        std::vector<std::uint32_t> e;
    };
    int nvars = 0;
    std::vector<Term> terms;

    double eval(const Eigen::VectorXd& x) const;
    /// Sum of |c| * prod |x_j|^e_j: the natural magnitude scale at x.
    double scale(const Eigen::VectorXd& x) const;
};

CompiledPoly compile(const RealPoly& p);

/// A polynomial residual system together with its Jacobian.
struct CompiledSystem {
    int nvars = 0;
    std::vector<CompiledPoly> polys;
    std::vector<std::vector<CompiledPoly>> jac;  // [i][j] = d polys_i / d x_j

    int out_dim() const { return static_cast<int>(polys.size()); }
    void eval(const Eigen::VectorXd& x, Eigen::VectorXd& f) const;
    void eval_jacobian(const Eigen::VectorXd& x, Eigen::MatrixXd& j) const;
    /// max_i |g_i(x)| / scale_i(x), ignoring identically-zero generators.
    double relative_residual(const Eigen::VectorXd& x) const;
};

CompiledSystem compile_system(const std::vector<RealPoly>& gens);

/// Generic residual function for least-squares minimization.
struct VectorFunction {
    int in_dim = 0;
    int out_dim = 0;
    std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)> eval;
    std::function<void(const Eigen::VectorXd&, Eigen::MatrixXd&)> jacobian;
};

VectorFunction as_function(const CompiledSystem& sys);

struct LMOptions {
    int max_iterations = 200;
    double residual_tol = 1e-28;  // on |F|^2
    double step_tol = 1e-15;
};

struct LMResult {
    Eigen::VectorXd x;
    double residual2 = 0.0;  // |F(x)|^2 at the end
    bool converged = false;
};

/// Levenberg-Marquardt on F(x) ~ 0.
LMResult lm_minimize(const VectorFunction& fn, Eigen::VectorXd x0, const LMOptions& opts = {});

/// Deterministic RNG with stream splitting.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(mix(seed)) {}

    double uniform(double a, double b) {
        std::uniform_real_distribution<double> d(a, b);
        return d(gen_);
    }
    double normal() {
        std::normal_distribution<double> d(0.0, 1.0);
        return d(gen_);
    }
    int uniform_int(int a, int b) {
        std::uniform_int_distribution<int> d(a, b);
        return d(gen_);
    }
    Eigen::VectorXd unit_vector(int dim) {
        Eigen::VectorXd v(dim);
        for (int i = 0; i < dim; ++i) v(i) = normal();
        double n = v.norm();
        return n > 0 ? Eigen::VectorXd(v / n) : unit_vector(dim);
    }
    Rng split() { return Rng(gen_()); }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    std::mt19937_64 gen_;
};

/// Greedy clustering: returns representative indices, one per cluster.
std::vector<int> cluster_representatives(const std::vector<Eigen::VectorXd>& pts, double radius);

/// Numeric rank: singular values above rel_tol * sigma_max.
int numeric_rank(const Eigen::MatrixXd& a, double rel_tol = 1e-8);

}  // namespace openbook
