#pragma once

#include <optional>
#include <vector>

#include "openbook/mixed.hpp"

namespace openbook {

/// Positive integer weights with gcd 1 and the common weighted degree d:
/// Psi(rho^{q_1} x_1, ..) = rho^d Psi(x). For mixed inputs the weights act
/// on |z_j| and the constraint reads sum q_j (nu_j + mu_j) = d.
struct RadialCertificate {
    std::vector<Int> weights;
    Int degree;
};

/// Integer polar weights with gcd 1 and polar degree k > 0:
/// sum p_j (nu_j - mu_j) = k for every term. Negative weights are allowed;
/// all-positive solutions are preferred when they exist.
struct PolarCertificate {
    std::vector<Int> weights;
    Int degree;
    bool all_positive = false;
};

std::optional<RadialCertificate> detect_radial(const MixedPolynomial& f);
std::optional<RadialCertificate> detect_radial(const RealPolyMap& map);
std::optional<PolarCertificate> detect_polar(const MixedPolynomial& f);

/// Exact identity check: Psi(rho.x) - rho^d Psi(x) == 0 in an auxiliary
/// variable rho.
bool radial_identity_holds(const RealPolyMap& map, const RadialCertificate& cert);

/// Exact identity check for the circle action, reducing by lambda*conj(lambda)=1.
bool polar_identity_holds(const MixedPolynomial& f, const PolarCertificate& cert);

/// Euler identity residues: sum_j q_j x_j dPsi_i/dx_j - d Psi_i, one per
/// component; all must be zero for a valid certificate.
std::vector<RealPoly> euler_residues(const RealPolyMap& map, const RadialCertificate& cert);

/// Weights for realify(f) given weights on |z_j|: each q_j doubles up.
std::vector<Int> expand_weights_to_real(const std::vector<Int>& q);

}  // namespace openbook
