#include "openbook/report.hpp"

#include <ctime>
#include <sstream>

#include "openbook/parse.hpp"

namespace openbook {

namespace {

std::string iso_now() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

Json weights_json(const std::vector<Int>& w) {
    Json a = Json::array();
    for (const auto& x : w) a.push_back(x.convert_to<long long>());
    return a;
}

Json evidence_json(const Evidence& e) {
    return Json{{"value", to_string(e.value)}, {"qualified", e.qualified}, {"source", e.source}};
}

}  // namespace

Json to_json(const MilnorSystem& system, const std::vector<std::string>& vars) {
    Json j;
    j["schema"] = "1";
    j["kind"] = to_string(system.kind);
    j["vars"] = vars;
    Json gens = Json::array();
    for (const auto& g : system.generators) gens.push_back(to_string(g, vars));
    j["generators"] = gens;
    Json excl = Json::array();
    for (const auto& g : system.excluded_locus) excl.push_back(to_string(g, vars));
    j["excluded_locus"] = excl;
    j["provenance"] = system.provenance;
    return j;
}

Json to_json(const NewtonPolyhedron& np) {
    Json j;
    j["schema"] = "1";
    j["n"] = np.n;
    j["hull_dim"] = np.hull_dim;
    j["facets_only"] = np.facets_only;
    Json sup = Json::array();
    for (const auto& s : np.support) sup.push_back(weights_json(s));
    j["support"] = sup;
    j["vertices"] = np.vertices;
    Json faces = Json::array();
    for (const auto& f : np.faces) {
        Json jf;
        jf["support"] = f.support;
        jf["weight"] = weights_json(f.weight);
        jf["dim"] = f.dim;
        jf["at_infinity"] = f.at_infinity;
        jf["facet"] = f.facet;
        faces.push_back(jf);
    }
    j["faces"] = faces;
    j["bad_face_candidates"] = bad_face_candidates(np);
    return j;
}

Json to_json(const NumericArc& arc) {
    Json j;
    Json vars = Json::array();
    for (int v = 0; v < arc.nvars; ++v) {
        Json jv;
        jv["active"] = arc.active(v);
        if (arc.active(v)) {
            jv["lead_exp"] = arc.lead_exp[v];
            jv["coeffs"] = arc.coeffs[v];
        }
        vars.push_back(jv);
    }
    j["vars"] = vars;
    j["truncation_order"] = arc.truncation_order();
    return j;
}

Json to_json(const BoundednessVerdict& v) {
    Json j;
    j["status"] = to_string(v.status);
    j["evidence"] = v.evidence;
    j["wmax"] = v.wmax;
    j["order"] = v.order;
    if (!v.certificate.empty()) {
        j["certificate"] = v.certificate;
        j["hypotheses"] = v.hypotheses;
    }
    if (v.witness) {
        Json w;
        w["arc"] = to_json(v.witness->arc);
        w["cancelled_orders"] = v.witness->cancelled_orders;
        w["check_residual"] = v.witness->check_residual;
        w["exact"] = v.witness->exact_arc.has_value();
        if (!v.witness->psi_limit.empty()) w["psi_limit"] = v.witness->psi_limit;
        w["psi_unbounded"] = v.witness->psi_unbounded;
        j["witness"] = w;
    }
    return j;
}

Json to_json(const OpenBookVerdict& verdict) {
    const ConditionReport& r = verdict.report;
    Json j;
    j["schema"] = "1";
    j["status"] = to_string(verdict.status);
    j["binding"] = to_string(verdict.binding);
    if (verdict.status == VerdictStatus::ProvedQualified)
        j["qualified"] = verdict.qualification;
    else
        j["qualified"] = false;

    Json chain = Json::array();
    for (const auto& f : verdict.chain)
        chain.push_back(
            Json{{"rule", f.rule}, {"citation", f.citation}, {"hypotheses", f.hypotheses}});
    j["chain"] = chain;

    Json rep;
    rep["is_holomorphic"] = r.is_holomorphic;
    if (r.radial)
        rep["radial"] = Json{{"weights", weights_json(r.radial->weights)},
                             {"degree", r.radial->degree.convert_to<long long>()}};
    else
        rep["radial"] = nullptr;
    if (r.polar)
        rep["polar"] = Json{{"weights", weights_json(r.polar->weights)},
                            {"degree", r.polar->degree.convert_to<long long>()},
                            {"all_positive", r.polar->all_positive}};
    else
        rep["polar"] = nullptr;
    rep["codim"] = Json{{"status", r.codim.status == CodimStatus::Confirmed   ? "Confirmed"
                                   : r.codim.status == CodimStatus::Violated ? "Violated"
                                                                             : "Unknown"},
                        {"codim", r.codim.codim},
                        {"samples", r.codim.samples},
                        {"note", r.codim.note},
                        {"ok", r.codim_ok}};
    rep["sing_subset_V"] = evidence_json(r.sing_subset_V);
    rep["sing_cap_V_bounded"] = evidence_json(r.sing_cap_V_bounded);
    rep["star_condition"] = evidence_json(r.star_condition);
    rep["semi_tame"] = evidence_json(r.semi_tame);
    if (r.value_set) {
        Json vs;
        switch (r.value_set->shape) {
            case AsymptoticValueSet::Shape::NoFiniteLimits: vs["shape"] = "no_finite_limits"; break;
            case AsymptoticValueSet::Shape::AllZero: vs["shape"] = "all_zero"; break;
            case AsymptoticValueSet::Shape::FiniteSet: vs["shape"] = "finite_set"; break;
            case AsymptoticValueSet::Shape::Circle: vs["shape"] = "circle"; break;
            case AsymptoticValueSet::Shape::UnknownCurve: vs["shape"] = "unknown_curve"; break;
        }
        vs["circle_radius"] = r.value_set->circle_radius;
        vs["arcs_found"] = r.value_set->arcs_found;
        vs["limits"] = r.value_set->limits;
        vs["method"] = r.value_set->method;
        rep["value_set"] = vs;
    }
    rep["cond_i"] = to_json(r.cond_i);
    rep["cond_ii"] = to_json(r.cond_ii);
    rep["gh_verified"] = evidence_json(r.gh_verified);
    j["report"] = rep;

    Json notes = Json::array();
    for (const auto& n : r.notes) notes.push_back(n);
    // standing caveats tied to the adopted conventions
    notes.push_back(
        "quotient Milnor systems use rank([omega rows; x]) <= p-1; the source text states rank "
        "<= p, recorded as a probable typo");
    notes.push_back(
        "points with df = dbar f = 0 are kept in M(f) (mu in C* versus C is immaterial at "
        "infinity); z = 0 counts as a member by convention");
    j["notes"] = notes;
    j["generated_at"] = iso_now();
    return j;
}

Json to_json(const SweepReport& report) {
    Json j;
    j["schema"] = "1";
    Json rows = Json::array();
    for (const auto& r : report.rows) {
        rows.push_back(Json{{"radius", r.radius},
                            {"solutions", r.solutions},
                            {"min_residual", r.min_residual > 1e299 ? -1.0 : r.min_residual},
                            {"min_dist_to_V", r.min_dist_to_V > 1e299 ? -1.0 : r.min_dist_to_V}});
    }
    j["rows"] = rows;
    j["cluster_radius_factor"] = report.cluster_radius_factor;
    j["tube_factor"] = report.tube_factor;
    return j;
}

std::string sweep_csv(const SweepReport& report) {
    std::ostringstream os;
    os << "R,count,min_residual,min_dist_to_V\n";
    for (const auto& r : report.rows) {
        os << r.radius << "," << r.solutions << ",";
        if (r.min_residual > 1e299)
            os << "";
        else
            os << r.min_residual;
        os << ",";
        if (r.min_dist_to_V > 1e299)
            os << "";
        else
            os << r.min_dist_to_V;
        os << "\n";
    }
    return os.str();
}

}  // namespace openbook
