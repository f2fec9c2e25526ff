#pragma once

#include <complex>
#include <string>
#include <vector>

#include "openbook/linalg.hpp"
#include "openbook/mixed.hpp"

namespace openbook {

enum class SystemKind { Sing, Milnor, MilnorQuotient, ZeroLocus };

std::string to_string(SystemKind k);

/// Generator set cutting out one of the paper-facing loci: the singular set,
/// the Milnor set M(Psi), the Milnor set of Psi/|Psi| (off V), or V itself.
/// Systems are plain generator lists; no ideal-theoretic normalization.
struct MilnorSystem {
    SystemKind kind;
    int m = 0;
    std::vector<RealPoly> generators;
    std::vector<RealPoly> excluded_locus;  // V-generators when the set is defined off V
    std::string provenance;

    /// Max |g_i(x)| over generators, and the matching term-magnitude scale
    /// (sum of |coef| * |x|^e), for relative residual tests.
    double residual(const std::vector<double>& x) const;
};

/// Jacobian matrix of a real map: p x m, entry (i,j) = d comps_i / d x_j.
Matrix<RealPoly> jacobian(const RealPolyMap& map);

/// Sing(Psi): all p x p minors of the Jacobian.
MilnorSystem sing_system(const RealPolyMap& map);

/// M(Psi): all (p+1) x (p+1) minors of the Jacobian extended by the position
/// row (x_1..x_m). When m == p the rank condition is vacuous and the system
/// is empty (the whole space).
MilnorSystem milnor_system(const RealPolyMap& map);

/// Rows omega_{i,j} = Psi_i grad Psi_j - Psi_j grad Psi_i for i<j, plus the
/// position row as the last row.
struct OmegaMatrix {
    int m = 0;
    int p = 0;
    Matrix<RealPoly> rows;  // p(p-1)/2 + 1 rows, m columns
};

OmegaMatrix omega_matrix(const RealPolyMap& map);

/// M(Psi/|Psi|): all p x p minors of the omega matrix; interpreted off V.
MilnorSystem milnor_quotient_system(const RealPolyMap& map);

/// V = Psi^{-1}(0) as a generator list.
MilnorSystem zero_locus_system(const RealPolyMap& map);

/// The auxiliary field nabla(f) = i (conj(f) dbar f - f conj(df)),
/// componentwise, as mixed polynomials.
std::vector<MixedPolynomial> nabla(const MixedPolynomial& f);

struct MembershipResult {
    bool member = false;
    double residual = 0.0;
};

/// Numeric test for z in M(f): does the realified position vector lie in the
/// real span of {grad Re f, grad Im f} at z? z = 0 is treated as a member.
MembershipResult mixed_milnor_membership(const MixedPolynomial& f,
                                         const std::vector<std::complex<double>>& z,
                                         double tol = 1e-8);

}  // namespace openbook
