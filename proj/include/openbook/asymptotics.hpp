#pragma once

#include <optional>
#include <string>
#include <vector>

#include "openbook/arc.hpp"
#include "openbook/milnor.hpp"
#include "openbook/numeric.hpp"

namespace openbook {

/// An arc ansatz direction: which variables are active and their leading
/// exponents. Weights are gcd-reduced with max over active slots >= 1.
struct Direction {
    std::vector<int> active;          // ascending variable indices
    std::vector<long long> weights;   // full arity; meaningful on active slots

    int positives() const {
        int c = 0;
        for (int j : active) c += weights[j] > 0 ? 1 : 0;
        return c;
    }
    long long max_weight() const {
        long long m = LLONG_MIN;
        for (int j : active) m = std::max(m, weights[j]);
        return m;
    }
    long long norm1() const {
        long long s = 0;
        for (int j : active) s += std::llabs(weights[j]);
        return s;
    }
};

/// Canonical direction order: sparsest and slowest escape first. Determines
/// which witness is reported.
bool direction_precedes(const Direction& a, const Direction& b);

/// The leading-coefficient equations of a system along one direction.
struct LeadingSystem {
    Direction dir;
    std::vector<RealPoly> equations;     // leading forms of the alive generators
    std::vector<long long> degrees;      // matching w-degrees
    std::vector<int> generator_index;    // indices into the source system
    bool infeasible_monomial = false;    // a leading form is a single term
};

/// Enumerate directions (with weight cap wmax) and their leading systems.
/// Directions whose restricted system is structurally infeasible are
/// omitted; subsets where every generator restricts to zero yield systems
/// with no equations.
std::vector<LeadingSystem> leading_systems(const MilnorSystem& system, int wmax);

enum class VConstraint { None, ExcludeV, IntersectV };

/// A verified unbounded arc on the system's zero set.
struct ArcWitness {
    NumericArc arc;
    std::optional<Arc> exact_arc;     // rational arc verified exactly, when found
    Direction dir;
    int cancelled_orders = 0;         // leading + extension layers solved
    double check_residual = 0.0;      // worst relative residual in the recheck
    std::vector<double> psi_limit;    // limit of Psi along the arc (empty if none)
    bool psi_unbounded = false;
};

enum class BoundednessStatus { BoundedCert, BoundedSearch, Unbounded, Empty, Unknown };

std::string to_string(BoundednessStatus s);

struct BoundednessVerdict {
    BoundednessStatus status = BoundednessStatus::Unknown;
    std::string evidence;
    std::optional<ArcWitness> witness;
    int wmax = 0;
    int order = 0;
    std::string certificate;                 // rule name for BoundedCert
    std::vector<std::string> hypotheses;     // verified hypotheses of the certificate
};

struct CertificateClaim {
    std::string rule;
    std::vector<std::string> hypotheses;
};

struct AsymptoticOptions {
    int wmax = 4;
    int order = 6;               // expansion order K
    int starts = 128;
    std::uint64_t seed = 1;
    int samples_per_family = 24;
    int max_families = 64;
    VConstraint constraint = VConstraint::None;
};

/// Decide boundedness of the system's zero set (subject to the V constraint)
/// by arc enumeration. `psi` supplies the map for V-constraints and limits;
/// it may be null when constraint == None and no limits are needed.
BoundednessVerdict boundedness(const MilnorSystem& system, const RealPolyMap* psi,
                               const AsymptoticOptions& opts,
                               const std::optional<CertificateClaim>& claim = std::nullopt);

/// The sampled asymptotic value set S(Psi): limits of Psi along verified
/// unbounded Milnor arcs.
struct AsymptoticValueSet {
    enum class Shape { NoFiniteLimits, AllZero, FiniteSet, Circle, UnknownCurve };
    Shape shape = Shape::NoFiniteLimits;
    std::vector<std::vector<double>> limits;   // p-vectors
    double circle_radius = 0.0;
    int arcs_found = 0;
    std::string method;

    bool semi_tame() const { return shape == Shape::NoFiniteLimits || shape == Shape::AllZero; }
};

AsymptoticValueSet estimate_S(const RealPolyMap& psi, const AsymptoticOptions& opts);

/// All verified unbounded arc families on M(Psi), capped by the options.
std::vector<ArcWitness> unbounded_milnor_arcs(const RealPolyMap& psi,
                                              const AsymptoticOptions& opts);

/// Sphere-by-sphere corroboration of condition (ii): count quotient-Milnor
/// solutions on |x| = R off a tube around V.
struct SweepRow {
    double radius = 0.0;
    int solutions = 0;
    double min_residual = 1e300;
    double min_dist_to_V = 1e300;
};

struct SweepReport {
    std::vector<SweepRow> rows;
    double cluster_radius_factor = 1e-4;
    double tube_factor = 1e-3;
};

SweepReport radius_sweep(const RealPolyMap& psi, const std::vector<double>& radii, int starts,
                         std::uint64_t seed);

}  // namespace openbook
