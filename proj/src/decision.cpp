#include "openbook/decision.hpp"

#include <cmath>
#include <sstream>

#include "openbook/parse.hpp"

namespace openbook {

std::string to_string(Tri t) {
    switch (t) {
        case Tri::True: return "true";
        case Tri::False: return "false";
        case Tri::Unknown: return "unknown";
    }
    return "?";
}

std::string to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::Proved: return "PROVED";
        case VerdictStatus::ProvedQualified: return "PROVED_QUALIFIED";
        case VerdictStatus::Refuted: return "REFUTED";
        case VerdictStatus::Unknown: return "UNKNOWN";
    }
    return "?";
}

std::string to_string(BindingType b) {
    switch (b) {
        case BindingType::Singular: return "singular";
        case BindingType::Smooth: return "smooth";
        case BindingType::NA: return "n/a";
    }
    return "?";
}

AnalysisInput make_input(const MixedPolynomial& f, const std::vector<std::string>& zvars) {
    AnalysisInput in;
    in.kind = AnalysisInput::Kind::Mixed;
    in.f = f;
    in.map = realify(f);
    in.zvars = zvars;
    for (const auto& z : zvars) {
        in.vars.push_back("Re(" + z + ")");
        in.vars.push_back("Im(" + z + ")");
    }
    return in;
}

AnalysisInput make_input(const RealPolyMap& map, const std::vector<std::string>& vars) {
    AnalysisInput in;
    in.kind = AnalysisInput::Kind::RealMap;
    in.map = map;
    in.vars = vars;
    return in;
}

AnalysisInput make_gh_input(const MixedPolynomial& g, const MixedPolynomial& h,
                            const std::vector<std::string>& zvars) {
    AnalysisInput in = make_input(conj_product(g, h), zvars);
    in.kind = AnalysisInput::Kind::GhPair;
    in.g = g;
    in.h = h;
    return in;
}

namespace {

std::string budget_tag(const AssembleOptions& o) {
    std::ostringstream os;
    os << "starts=" << o.starts << ", seed=" << o.seed;
    return os.str();
}

// Gap test on sampled image values: bounded, with 0 isolated (or absent).
bool zero_isolated_in(const std::vector<std::vector<double>>& values) {
    double near = 0.0;                  // largest |v| among near-zero samples
    double far = 1e300;                 // smallest |v| among the rest
    bool has_far = false;
    for (const auto& v : values) {
        double n = 0;
        for (double x : v) n += x * x;
        n = std::sqrt(n);
        if (n < 1e-6) {
            near = std::max(near, n);
        } else {
            far = std::min(far, n);
            has_far = true;
        }
    }
    if (!has_far) return true;          // image is {0} (or empty)
    return far >= 10.0 * std::max(near, 1e-7);
}

// Leading behaviour of a complex-valued mixed polynomial along a real arc:
// exponent and complex coefficient of the dominant term.
std::optional<std::pair<long long, std::complex<double>>> complex_lead(
    const MixedPolynomial& g, const NumericArc& arc) {
    auto [re, im] = realify_parts(g);
    auto sre = arc_substitute(re, arc);
    auto sim = arc_substitute(im, arc);
    double scale = 0;
    for (const auto& [e, c] : sre.coeffs) scale = std::max(scale, std::abs(c));
    for (const auto& [e, c] : sim.coeffs) scale = std::max(scale, std::abs(c));
    if (scale == 0) return std::nullopt;  // identically zero along the arc
    long long lead = LLONG_MIN;
    for (const auto& [e, c] : sre.coeffs)
        if (std::abs(c) > 1e-9 * scale) lead = std::max(lead, e);
    for (const auto& [e, c] : sim.coeffs)
        if (std::abs(c) > 1e-9 * scale) lead = std::max(lead, e);
    if (lead == LLONG_MIN) return std::nullopt;
    return std::make_pair(lead, std::complex<double>(sre.at(lead), sim.at(lead)));
}

// Semi-tameness of the meromorphic g/h, estimated along verified unbounded
// Milnor arcs of f = g conj(h): no arc may carry g/h to a finite nonzero
// limit.
bool ratio_semi_tame(const AnalysisInput& input, const AssembleOptions& options,
                     std::string* source) {
    AsymptoticOptions ao;
    ao.wmax = options.wmax;
    ao.order = options.order;
    ao.starts = options.starts;
    ao.seed = options.seed;
    auto arcs = unbounded_milnor_arcs(input.map, ao);
    int finite_nonzero = 0;
    for (const auto& w : arcs) {
        auto lg = complex_lead(*input.g, w.arc);
        auto lh = complex_lead(*input.h, w.arc);
        if (!lg || !lh) continue;
        if (lg->first == lh->first && std::abs(lg->second) > 1e-8 * std::abs(lh->second))
            ++finite_nonzero;
    }
    std::ostringstream os;
    os << "ratio limits of g/h along " << arcs.size() << " Milnor arcs (" << budget_tag(options)
       << "): " << finite_nonzero << " finite nonzero";
    *source = os.str();
    return finite_nonzero == 0;
}

}  // namespace

ConditionReport assemble_conditions(const AnalysisInput& input, const AssembleOptions& options) {
    ConditionReport r;
    r.input = input;
    r.options = options;
    const RealPolyMap& map = input.map;
    const int p = map.p();

    // -- exact, parse-level facts ------------------------------------------
    if (input.is_mixed()) {
        r.is_holomorphic = input.f.is_holomorphic();
        r.radial = detect_radial(input.f);
        r.polar = detect_polar(input.f);
        if (input.kind == AnalysisInput::Kind::GhPair) {
            r.gh_verified = {Tri::True, false, "f == g * conj(h) verified exactly"};
        }
    } else {
        r.radial = detect_radial(map);
    }

    // -- codimension of V at infinity --------------------------------------
    SearchBudget codim_budget{options.codim_starts, options.seed ^ 0x636full, 1e-8};
    r.codim = codim_at_infinity(map, options.r0, codim_budget);
    if (r.codim.status == CodimStatus::Confirmed && r.codim.codim == p) {
        r.codim_ok = true;
    } else if (r.codim.status == CodimStatus::Unknown &&
               r.codim.note.find("empty") != std::string::npos) {
        r.codim_ok = true;  // V empty at infinity: the codimension condition is vacuous
        r.codim_vacuous = true;
        r.notes.push_back("V appears empty outside R0: codimension condition vacuous");
    }

    // -- singular locus survey ----------------------------------------------
    SearchBudget sing_budget{options.starts, options.seed ^ 0x5349ull, 1e-8};
    SingSurvey sing = survey_singular_locus(map, sing_budget);
    {
        std::ostringstream os;
        os << "survey_singular_locus(" << budget_tag(options) << "): "
           << (sing.found_any ? std::to_string(sing.samples.size()) + " sample clusters"
                              : "no singular points found");
        std::string src = os.str();
        if (!sing.found_any) {
            r.sing_subset_V = {Tri::True, true, src + "; Sing empty up to search"};
            r.sing_cap_V_bounded = {Tri::True, true, src + "; Sing empty up to search"};
        } else {
            r.sing_subset_V = {sing.subset_V ? Tri::True : Tri::False, true, src};
            r.sing_cap_V_bounded = {sing.cap_V_bounded ? Tri::True : Tri::False, true, src};
            if (!sing.cap_V_bounded)
                r.sing_cap_V_bounded.source +=
                    "; on-V singular points out to radius " + std::to_string(sing.max_on_V_radius);
            if (!sing.subset_V && sing.off_V_witness) {
                double radius = 0;
                for (double v : *sing.off_V_witness) radius += v * v;
                if (std::sqrt(radius) > 100.0)
                    r.notes.push_back(
                        "unbounded Sing(Psi)\\V branch suspected: research-interesting per the "
                        "open problem after the main equivalence");
            }
        }
    }

    // star condition (*): via (**) on f(Sing f) samples, else directly on
    // Sing(f/|f|) samples
    if (input.is_mixed()) {
        if (!sing.found_any) {
            r.star_condition = {Tri::True, true,
                                "Sing f empty up to search: (**) holds vacuously"};
        } else if (zero_isolated_in(sing.values)) {
            r.star_condition = {Tri::True, true,
                                "(**): sampled f(Sing f) bounded with 0 isolated (gap test)"};
        } else {
            SearchBudget phase_budget{options.starts, options.seed ^ 0x2a2aull, 1e-6};
            PhaseCriticalSurvey phase = survey_phase_critical(input.f, phase_budget);
            std::vector<std::vector<double>> vals;
            for (auto c : phase.values) vals.push_back({c.real(), c.imag()});
            if (!phase.found_any) {
                r.star_condition = {Tri::True, true,
                                    "Sing(f/|f|) empty off V up to search: (*) holds vacuously"};
            } else if (zero_isolated_in(vals)) {
                r.star_condition = {Tri::True, true,
                                    "(*): sampled f(Sing(f/|f|)) bounded with 0 isolated"};
            } else {
                r.star_condition = {Tri::False, true,
                                    "sampled critical values accumulate at 0 without a gap"};
            }
        }
    }

    const bool p_supported = p >= 2;
    if (!p_supported) {
        r.notes.push_back("p = 1: the open book machinery of the decision rules needs p >= 2");
        r.cond_i.status = BoundednessStatus::Unknown;
        r.cond_ii.status = BoundednessStatus::Unknown;
        return r;
    }

    // R7 short-circuit: a strictly positive polar certificate with the right
    // codimension decides the verdict without any asymptotic search.
    const bool r7_ready = input.is_mixed() && r.polar && r.polar->all_positive &&
                          input.f.nvars() >= 2 && r.codim_ok && p == 2;
    // R3 needs the semi-tame estimate but nothing else.
    const bool r3_candidate = input.is_mixed() && r.is_holomorphic && input.f.nvars() >= 2;

    AsymptoticOptions arc_opts;
    arc_opts.wmax = options.wmax;
    arc_opts.order = options.order;
    arc_opts.starts = options.starts;
    arc_opts.seed = options.seed;

    auto compute_value_set = [&]() {
        if (r.value_set) return;
        r.value_set = estimate_S(map, arc_opts);
        std::ostringstream os;
        os << "estimate_S(" << budget_tag(options) << "): " << r.value_set->arcs_found
           << " verified arcs";
        bool st = r.value_set->semi_tame();
        r.semi_tame = {st ? Tri::True : Tri::False, true, os.str()};
        if (r.value_set->shape == AsymptoticValueSet::Shape::Circle) {
            std::ostringstream c;
            c << "S(Psi) fits a circle of radius " << r.value_set->circle_radius
              << " centered at 0";
            r.notes.push_back(c.str());
        }
    };

    if (r7_ready && !options.full) {
        // certificate rule decides: leave the expensive searches unevaluated
        r.cond_i.status = BoundednessStatus::Unknown;
        r.cond_i.evidence = "not evaluated: certificate rule decides the verdict";
        r.cond_ii.status = BoundednessStatus::Unknown;
        r.cond_ii.evidence = "not evaluated: certificate rule decides the verdict";
        return r;
    }

    if (r3_candidate) compute_value_set();
    if (r3_candidate && r.semi_tame.value == Tri::True && !options.full) {
        r.cond_i.status = BoundednessStatus::Unknown;
        r.cond_i.evidence = "not evaluated: Theorem 3.7 decides the verdict";
        r.cond_ii.status = BoundednessStatus::Unknown;
        r.cond_ii.evidence = "not evaluated: Theorem 3.7 decides the verdict";
        return r;
    }

    // -- condition (ii): M(Psi/|Psi|) bounded --------------------------------
    std::optional<CertificateClaim> claim_ii;
    if (r.radial && r.sing_subset_V.value == Tri::True) {
        CertificateClaim c;
        c.rule = "Proposition 4.1";
        std::ostringstream w;
        w << "radial weighted-homogeneous, weights (";
        for (std::size_t i = 0; i < r.radial->weights.size(); ++i)
            w << (i ? "," : "") << r.radial->weights[i];
        w << "), degree " << r.radial->degree << " (Euler identity verified exactly)";
        c.hypotheses = {w.str(), "Sing(Psi) inside V: " + r.sing_subset_V.source};
        claim_ii = c;
    }
    if (!claim_ii && input.kind == AnalysisInput::Kind::GhPair &&
        r.gh_verified.value == Tri::True) {
        std::string src;
        if (ratio_semi_tame(input, options, &src)) {
            CertificateClaim c;
            c.rule = "Corollary 4.5";
            c.hypotheses = {"f = g*conj(h) verified exactly", "S(g/h) within {0}: " + src};
            claim_ii = c;
        }
    }
    if (!claim_ii && input.is_mixed()) {
        compute_value_set();
        if (r.semi_tame.value == Tri::True && r.star_condition.value == Tri::True) {
            CertificateClaim c;
            c.rule = "Theorem 4.2";
            c.hypotheses = {"semi-tame: " + r.semi_tame.source,
                            "condition (*): " + r.star_condition.source};
            claim_ii = c;
        }
    }
    {
        MilnorSystem quotient = milnor_quotient_system(map);
        AsymptoticOptions o = arc_opts;
        o.constraint = VConstraint::ExcludeV;
        r.cond_ii = boundedness(quotient, &map, o, claim_ii);
    }

    // -- condition (i): cl(M(Psi)\V) ∩ V bounded ----------------------------
    std::optional<CertificateClaim> claim_i;
    if (r.sing_cap_V_bounded.value == Tri::True) {
        claim_i = CertificateClaim{
            "Lemma 3.6", {"Sing(Psi) ∩ V bounded: " + r.sing_cap_V_bounded.source}};
    } else if (input.is_mixed() && r.is_holomorphic) {
        claim_i = CertificateClaim{
            "Theorem 3.7",
            {"holomorphic: Thom regularity along V gives condition (i)"}};
    }
    {
        MilnorSystem milnor = milnor_system(map);
        AsymptoticOptions o = arc_opts;
        o.constraint = VConstraint::IntersectV;
        r.cond_i = boundedness(milnor, &map, o, claim_i);
    }

    if (options.full && input.is_mixed()) compute_value_set();
    if (options.full && !input.is_mixed() && !r.value_set) {
        r.value_set = estimate_S(map, arc_opts);
        r.semi_tame = {r.value_set->semi_tame() ? Tri::True : Tri::False, true,
                       "estimate_S(" + budget_tag(options) + ")"};
    }

    return r;
}

namespace {

bool bounded_cert_grade(const BoundednessVerdict& v) {
    return v.status == BoundednessStatus::BoundedCert || v.status == BoundednessStatus::Empty;
}

bool bounded_any(const BoundednessVerdict& v) {
    return bounded_cert_grade(v) || v.status == BoundednessStatus::BoundedSearch;
}

RuleFired rule_R1(const ConditionReport& r) {
    RuleFired f;
    f.rule = "R1";
    f.citation =
        "Theorem 3.3: with codim_R V = p at infinity and cl(M(Psi)\\V) ∩ V bounded, "
        "Psi/|Psi| induces an open book with singular binding iff M(Psi/|Psi|) is bounded";
    f.hypotheses = {"codim_R V = p at infinity: " +
                        (r.codim_vacuous ? std::string("vacuous (V empty at infinity)")
                                         : "confirmed on " + std::to_string(r.codim.samples) +
                                               " samples"),
                    "condition (i): " + to_string(r.cond_i.status) +
                        (r.cond_i.certificate.empty() ? "" : " via " + r.cond_i.certificate)};
    return f;
}

void append_cond_ii_subrule(const ConditionReport& r, OpenBookVerdict& v) {
    if (r.cond_ii.status != BoundednessStatus::BoundedCert) return;
    RuleFired f;
    if (r.cond_ii.certificate == "Proposition 4.1") {
        f.rule = "R4";
        f.citation =
            "Proposition 4.1: radial weighted-homogeneous with Sing(Psi) inside V implies "
            "M(Psi/|Psi|) bounded";
    } else if (r.cond_ii.certificate == "Theorem 4.2") {
        f.rule = "R5";
        f.citation =
            "Theorem 4.2: semi-tame mixed polynomial satisfying condition (*) has "
            "M(f/|f|) bounded";
    } else if (r.cond_ii.certificate == "Corollary 4.5") {
        f.rule = "R6";
        f.citation = "Corollary 4.5: S(g/h) within {0} implies M(g conj(h)/|g conj(h)|) bounded";
    } else {
        f.rule = "cond-ii-certificate";
        f.citation = r.cond_ii.certificate;
    }
    f.hypotheses = r.cond_ii.hypotheses;
    v.chain.push_back(std::move(f));
}

}  // namespace

OpenBookVerdict verdict(const ConditionReport& r) {
    OpenBookVerdict v;
    v.report = r;
    const int p = r.input.map.p();

    if (p < 2) {
        v.status = VerdictStatus::Unknown;
        return v;
    }

    auto qualify = [&](std::initializer_list<const BoundednessVerdict*> used) {
        std::vector<std::string> q;
        for (const auto* b : used)
            if (b->status == BoundednessStatus::BoundedSearch) {
                std::ostringstream os;
                os << "search-based boundedness (wmax " << b->wmax << ", order " << b->order
                   << ")";
                q.push_back(os.str());
            }
        if (!q.empty()) {
            v.status = VerdictStatus::ProvedQualified;
            std::ostringstream os;
            for (std::size_t i = 0; i < q.size(); ++i) os << (i ? "; " : "") << q[i];
            v.qualification = os.str();
        }
    };

    // R2: Corollary 3.5 (smooth binding), certificate-grade condition (ii)
    if (r.sing_cap_V_bounded.value == Tri::True && r.codim_ok) {
        if (bounded_cert_grade(r.cond_ii)) {
            v.status = VerdictStatus::Proved;
            v.binding = BindingType::Smooth;
            append_cond_ii_subrule(r, v);
            RuleFired f;
            f.rule = "R2";
            f.citation =
                "Corollary 3.5 with Lemma 3.6: Sing(Psi) ∩ V bounded and codim_R V = p at "
                "infinity give an open book with smooth binding iff M(Psi/|Psi|) is bounded";
            f.hypotheses = {"Sing(Psi) ∩ V bounded: " + r.sing_cap_V_bounded.source,
                            "condition (ii): " + to_string(r.cond_ii.status) +
                                (r.cond_ii.certificate.empty() ? ""
                                                               : " via " + r.cond_ii.certificate)};
            v.chain.push_back(std::move(f));
            return v;
        }
        if (r.cond_ii.status == BoundednessStatus::Unbounded && r.cond_ii.witness) {
            v.status = VerdictStatus::Refuted;
            v.binding = BindingType::NA;
            RuleFired f;
            f.rule = "R2";
            f.citation =
                "Corollary 3.5 (only-if): M(Psi/|Psi|) unbounded rules out the open book on "
                "large spheres";
            f.hypotheses = {"Sing(Psi) ∩ V bounded: " + r.sing_cap_V_bounded.source,
                            "verified unbounded witness arc: " + r.cond_ii.evidence};
            v.chain.push_back(std::move(f));
            return v;
        }
    }

    // R7: Theorem 4.9, strictly positive polar weights
    if (r.input.is_mixed() && r.polar && r.polar->all_positive && r.input.f.nvars() >= 2 &&
        r.codim_ok && p == 2) {
        v.status = VerdictStatus::Proved;
        v.binding = BindingType::Singular;
        RuleFired f;
        f.rule = "R7";
        f.citation =
            "Theorem 4.9: a polar weighted-homogeneous mixed polynomial with codim_R V = 2 at "
            "infinity induces an open book with singular binding";
        std::ostringstream w;
        w << "polar weights (";
        for (std::size_t i = 0; i < r.polar->weights.size(); ++i)
            w << (i ? "," : "") << r.polar->weights[i];
        w << "), polar degree " << r.polar->degree << " (circle-action identity verified exactly)";
        f.hypotheses = {w.str(), r.codim_vacuous ? "codim vacuous (V empty at infinity)"
                                                 : "codim_R V = 2 at infinity confirmed"};
        v.chain.push_back(std::move(f));
        if (r.input.kind == AnalysisInput::Kind::GhPair)
            v.report.notes.push_back(
                "g*conj(h) input proved via the circle action: open book exists without Thom "
                "regularity along V");
        return v;
    }

    // R3: Theorem 3.7 for semi-tame holomorphic polynomials
    if (r.input.is_mixed() && r.is_holomorphic && r.input.f.nvars() >= 2 &&
        r.semi_tame.value == Tri::True) {
        v.status = VerdictStatus::Proved;
        v.binding = BindingType::Singular;
        RuleFired f;
        f.rule = "R3";
        f.citation =
            "Theorem 3.7: a non-constant complex polynomial with S(f) within {0} induces an "
            "open book with singular binding at infinity";
        f.hypotheses = {"holomorphic (no conjugated variables)",
                        "semi-tame: " + r.semi_tame.source};
        v.chain.push_back(std::move(f));
        return v;
    }

    // R1: Theorem 3.3
    if (r.codim_ok && bounded_any(r.cond_i)) {
        if (bounded_any(r.cond_ii)) {
            v.status = VerdictStatus::Proved;
            v.binding = BindingType::Singular;
            append_cond_ii_subrule(r, v);
            v.chain.push_back(rule_R1(r));
            qualify({&r.cond_i, &r.cond_ii});
            return v;
        }
        if (r.cond_ii.status == BoundednessStatus::Unbounded && r.cond_ii.witness) {
            v.status = VerdictStatus::Refuted;
            v.binding = BindingType::NA;
            RuleFired f = rule_R1(r);
            f.hypotheses.push_back("verified unbounded witness arc: " + r.cond_ii.evidence);
            v.chain.push_back(std::move(f));
            return v;
        }
    }

    v.status = VerdictStatus::Unknown;
    return v;
}

OpenBookVerdict decide(const AnalysisInput& input, const AssembleOptions& options) {
    return verdict(assemble_conditions(input, options));
}

}  // namespace openbook
