#pragma once

#include <optional>
#include <string>
#include <vector>

#include "openbook/asymptotics.hpp"
#include "openbook/homogeneity.hpp"
#include "openbook/milnor.hpp"
#include "openbook/search.hpp"

namespace openbook {

enum class Tri { True, False, Unknown };

std::string to_string(Tri t);

/// A three-valued fact with provenance: which operation produced it and
/// whether the evidence is search-based (qualified) rather than exact.
struct Evidence {
    Tri value = Tri::Unknown;
    bool qualified = false;
    std::string source;
};

/// The analysis subject: a mixed polynomial, a plain real polynomial map,
/// or a declared g*conj(h) factorization.
struct AnalysisInput {
    enum class Kind { Mixed, RealMap, GhPair };
    Kind kind = Kind::RealMap;
    MixedPolynomial f;                  // mixed / product, when kind != RealMap
    std::optional<MixedPolynomial> g, h;
    RealPolyMap map;                    // the real map actually analyzed
    std::vector<std::string> vars;      // display names of the map variables
    std::vector<std::string> zvars;     // display names of the complex variables

    bool is_mixed() const { return kind != Kind::RealMap; }
};

AnalysisInput make_input(const MixedPolynomial& f, const std::vector<std::string>& zvars);
AnalysisInput make_input(const RealPolyMap& map, const std::vector<std::string>& vars);
/// Throws when g or h is non-holomorphic.
AnalysisInput make_gh_input(const MixedPolynomial& g, const MixedPolynomial& h,
                            const std::vector<std::string>& zvars);

struct AssembleOptions {
    int wmax = 4;
    int order = 6;
    int starts = 128;
    std::uint64_t seed = 1;
    double r0 = 1e3;
    int codim_starts = 64;
    bool full = false;  // evaluate every field even when a certificate decides early
};

/// Everything the rule engine consumes, each field with provenance.
struct ConditionReport {
    AnalysisInput input;
    AssembleOptions options;

    bool is_holomorphic = false;
    std::optional<RadialCertificate> radial;        // on |z_j| for mixed inputs
    std::optional<PolarCertificate> polar;
    Evidence gh_verified;

    CodimReport codim;
    bool codim_ok = false;       // Confirmed, or V empty at infinity (vacuous)
    bool codim_vacuous = false;

    Evidence sing_subset_V;
    Evidence sing_cap_V_bounded;
    Evidence star_condition;     // condition (*) (via (**) or directly)
    Evidence semi_tame;
    std::optional<AsymptoticValueSet> value_set;

    BoundednessVerdict cond_i;   // cl(M(Psi)\V) ∩ V bounded
    BoundednessVerdict cond_ii;  // M(Psi/|Psi|) bounded

    std::vector<std::string> notes;
};

ConditionReport assemble_conditions(const AnalysisInput& input, const AssembleOptions& options);

enum class VerdictStatus { Proved, ProvedQualified, Refuted, Unknown };
enum class BindingType { Singular, Smooth, NA };

std::string to_string(VerdictStatus s);
std::string to_string(BindingType b);

struct RuleFired {
    std::string rule;
    std::string citation;
    std::vector<std::string> hypotheses;
};

struct OpenBookVerdict {
    VerdictStatus status = VerdictStatus::Unknown;
    BindingType binding = BindingType::NA;
    std::vector<RuleFired> chain;
    ConditionReport report;
    std::string qualification;  // which search-based evidence the proof leans on
};

/// Apply the decision rules to an assembled report.
OpenBookVerdict verdict(const ConditionReport& report);

/// Convenience: assemble + decide.
OpenBookVerdict decide(const AnalysisInput& input, const AssembleOptions& options);

}  // namespace openbook
