#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "openbook/milnor.hpp"
#include "openbook/mixed.hpp"
#include "openbook/numeric.hpp"

namespace openbook {

struct SearchBudget {
    int starts = 128;
    std::uint64_t seed = 1;
    double tol = 1e-8;
};

/// Result of the multistart search for critical points of f/|f| on the
/// torus (C*)^n (criticality there is the vanishing of the nabla field).
struct TorusSearchResult {
    bool witness_found = false;
    std::vector<std::complex<double>> witness;
    double min_residual = 1e300;
    int starts = 0;
};

TorusSearchResult quotient_critical_on_torus(const MixedPolynomial& f_delta,
                                             const SearchBudget& budget);

enum class CodimStatus { Confirmed, Violated, Unknown };

struct CodimReport {
    CodimStatus status = CodimStatus::Unknown;
    int codim = -1;
    int samples = 0;
    std::string note;
    std::vector<double> witness;  // a sample of too-low codimension, when Violated
};

/// Sample V outside radius r0 and estimate the local codimension of each
/// sampled component (local-dimension estimate from a projected point cloud,
/// cross-checked against the Jacobian rank).
CodimReport codim_at_infinity(const RealPolyMap& map, double r0, const SearchBudget& budget);

/// Multistart survey of the singular locus over several radius shells.
struct SingSurvey {
    bool found_any = false;
    std::vector<std::vector<double>> samples;     // cluster representatives
    std::vector<double> sample_radius;            // |x| per sample
    std::vector<double> psi_residual;             // relative |Psi(x)| per sample
    bool subset_V = true;                         // all samples lie on V (up to search)
    std::optional<std::vector<double>> off_V_witness;
    bool cap_V_bounded = true;                    // no on-V sample at large radius
    double max_on_V_radius = 0.0;
    std::vector<std::vector<double>> values;      // Psi at the samples
};

SingSurvey survey_singular_locus(const RealPolyMap& map, const SearchBudget& budget);

/// Multistart survey of the vanishing locus of the nabla field off V
/// (Sing(f/|f|)); collects the f-values of the samples.
struct PhaseCriticalSurvey {
    bool found_any = false;
    std::vector<std::complex<double>> values;
    bool inconclusive = false;
};

PhaseCriticalSurvey survey_phase_critical(const MixedPolynomial& f, const SearchBudget& budget);

}  // namespace openbook
