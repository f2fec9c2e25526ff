// openbook: decide open book structures at infinity for real polynomial
// maps and mixed polynomials, and inspect the objects behind the decision.
//
// Subcommands:
//   check   run the full analysis and print the verdict JSON
//   milnor  print a Milnor-type generator system
//   newton  print the Newton polyhedron of the support
//   sweep   count quotient-Milnor solutions on growing spheres
//   corpus  run a directory of job files against expected verdicts

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "openbook/decision.hpp"
#include "openbook/jobspec.hpp"
#include "openbook/newton.hpp"
#include "openbook/parse.hpp"
#include "openbook/report.hpp"

namespace ob = openbook;
namespace fs = std::filesystem;

namespace {

constexpr int kExitProved = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitBadInput = 3;
constexpr int kExitInternal = 4;

struct CommonArgs {
    std::string job_path;
    std::string mixed_text;
    std::string real_text;
    std::string g_text, h_text;
    std::string vars;
    long seed = 1;
    long wmax = 4;
    long order = 6;
    long starts = 128;
    std::string radii = "10,100,1000";
    std::string out_json;
    std::string out_csv;
    bool full = false;

    void attach(CLI::App* cmd, bool with_inputs = true) {
        if (with_inputs) {
            cmd->add_option("job", job_path, "job file (key=value)");
            cmd->add_option("--mixed", mixed_text, "mixed polynomial text");
            cmd->add_option("--real", real_text, "real map text (components ;-separated)");
            cmd->add_option("--g", g_text, "holomorphic g of a g*conj(h) input");
            cmd->add_option("--h", h_text, "holomorphic h of a g*conj(h) input");
            cmd->add_option("--vars", vars, "comma-separated variable names");
        }
        cmd->add_option("--seed", seed, "RNG seed");
        cmd->add_option("--wmax", wmax, "leading-exponent cap for arc search");
        cmd->add_option("--order", order, "arc expansion order");
        cmd->add_option("--starts", starts, "multistart count");
        cmd->add_option("--radii", radii, "sweep radii, comma-separated");
        cmd->add_option("--json", out_json, "write JSON to this path");
        cmd->add_option("--csv", out_csv, "write CSV to this path");
        cmd->add_flag("--full", full, "evaluate every report field");
    }
};

std::string with_vars_header(const std::string& vars, const std::string& body) {
    if (vars.empty()) return body;
    return "vars: " + vars + "\n" + body;
}

// Merge job-file values under the CLI flags (flags win when set).
void merge_job(CommonArgs& args) {
    if (args.job_path.empty()) return;
    ob::JobSpec job = ob::JobSpec::load(args.job_path);
    auto pick = [&](const std::string& key, std::string& slot) {
        if (slot.empty() && job.has(key)) slot = job.get(key);
    };
    std::string kind = job.get("kind", "");
    if (kind == "mixed") pick("poly", args.mixed_text);
    if (kind == "real_map") pick("poly", args.real_text);
    if (kind == "gh_pair") {
        pick("g", args.g_text);
        pick("h", args.h_text);
    }
    if (kind.empty()) {
        pick("poly", args.mixed_text);  // default to mixed
    }
    pick("vars", args.vars);
    if (job.has("seed")) args.seed = job.get_int("seed", args.seed);
    if (job.has("wmax")) args.wmax = job.get_int("wmax", args.wmax);
    if (job.has("order")) args.order = job.get_int("order", args.order);
    if (job.has("starts")) args.starts = job.get_int("starts", args.starts);
    if (job.has("radii")) args.radii = job.get("radii");
    if (job.has("out_json") && args.out_json.empty()) args.out_json = job.get("out_json");
    if (job.has("out_csv") && args.out_csv.empty()) args.out_csv = job.get("out_csv");
}

ob::AnalysisInput parse_input(const CommonArgs& args) {
    if (!args.g_text.empty() || !args.h_text.empty()) {
        if (args.g_text.empty() || args.h_text.empty())
            throw std::runtime_error("a g*conj(h) input needs both --g and --h");
        auto g = ob::parse_mixed(with_vars_header(args.vars, args.g_text));
        auto h = ob::parse_mixed(with_vars_header(args.vars, args.h_text));
        if (g.f.nvars() != h.f.nvars()) {
            // re-parse with shared declared variables so arities agree
            throw std::runtime_error("g and h must use the same variables (declare --vars)");
        }
        return ob::make_gh_input(g.f, h.f, g.vars);
    }
    if (!args.mixed_text.empty()) {
        auto parsed = ob::parse_mixed(with_vars_header(args.vars, args.mixed_text));
        return ob::make_input(parsed.f, parsed.vars);
    }
    if (!args.real_text.empty()) {
        auto parsed = ob::parse_real_map(with_vars_header(args.vars, args.real_text));
        return ob::make_input(parsed.map, parsed.vars);
    }
    throw std::runtime_error("no input: give a job file, --mixed, --real, or --g/--h");
}

ob::AssembleOptions to_options(const CommonArgs& args) {
    ob::AssembleOptions o;
    o.wmax = static_cast<int>(args.wmax);
    o.order = static_cast<int>(args.order);
    o.starts = static_cast<int>(args.starts);
    o.seed = static_cast<std::uint64_t>(args.seed);
    o.full = args.full;
    return o;
}

void emit(const ob::Json& j, const std::string& out_json) {
    std::string text = j.dump(2);
    std::cout << text << "\n";
    if (!out_json.empty()) {
        std::ofstream f(out_json);
        f << text << "\n";
    }
}

int exit_code_for(ob::VerdictStatus s) {
    switch (s) {
        case ob::VerdictStatus::Proved:
        case ob::VerdictStatus::ProvedQualified: return kExitProved;
        case ob::VerdictStatus::Refuted: return kExitRefuted;
        case ob::VerdictStatus::Unknown: return kExitUnknown;
    }
    return kExitInternal;
}

int run_check(CommonArgs& args) {
    merge_job(args);
    ob::AnalysisInput input = parse_input(args);
    ob::OpenBookVerdict v = ob::decide(input, to_options(args));
    emit(ob::to_json(v), args.out_json);
    return exit_code_for(v.status);
}

int run_milnor(CommonArgs& args, const std::string& which) {
    merge_job(args);
    ob::AnalysisInput input = parse_input(args);
    ob::MilnorSystem sys = [&] {
        if (which == "sing") return ob::sing_system(input.map);
        if (which == "quotient") return ob::milnor_quotient_system(input.map);
        if (which == "zero") return ob::zero_locus_system(input.map);
        return ob::milnor_system(input.map);
    }();
    std::vector<std::string> vars =
        input.is_mixed() ? ob::default_x_names(input.map.m) : input.vars;
    emit(ob::to_json(sys, vars), args.out_json);
    return 0;
}

int run_newton(CommonArgs& args, long face_index) {
    merge_job(args);
    ob::AnalysisInput input = parse_input(args);
    if (!input.is_mixed()) throw std::runtime_error("newton expects a mixed polynomial input");
    ob::NewtonPolyhedron np = ob::newton_polyhedron(input.f);
    ob::Json j = ob::to_json(np);
    if (face_index >= 0) {
        if (face_index >= static_cast<long>(np.faces.size()))
            throw std::runtime_error("face index out of range");
        ob::MixedPolynomial fd = ob::face_polynomial(input.f, np, np.faces[face_index]);
        j["face_polynomial"] = ob::to_string(fd, input.zvars);
    }
    emit(j, args.out_json);
    return 0;
}

int run_sweep(CommonArgs& args) {
    merge_job(args);
    ob::AnalysisInput input = parse_input(args);
    std::vector<double> radii;
    {
        std::stringstream ss(args.radii);
        std::string part;
        while (std::getline(ss, part, ','))
            if (!part.empty()) radii.push_back(std::stod(part));
    }
    ob::SweepReport rep = ob::radius_sweep(input.map, radii, static_cast<int>(args.starts),
                                           static_cast<std::uint64_t>(args.seed));
    emit(ob::to_json(rep), args.out_json);
    if (!args.out_csv.empty()) {
        std::ofstream f(args.out_csv);
        f << ob::sweep_csv(rep);
    }
    return 0;
}

int run_corpus(const std::string& dir, CommonArgs& args) {
    std::vector<fs::path> jobs;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".job") jobs.push_back(entry.path());
    std::sort(jobs.begin(), jobs.end());
    if (jobs.empty()) {
        std::cerr << "corpus: no .job files in " << dir << "\n";
        return kExitBadInput;
    }

    int failures = 0;
    for (const auto& path : jobs) {
        CommonArgs j = args;
        j.job_path = path.string();
        j.mixed_text.clear();
        j.real_text.clear();
        j.g_text.clear();
        j.h_text.clear();
        merge_job(j);
        ob::JobSpec spec = ob::JobSpec::load(path.string());
        std::string expect = spec.get("expect", "");
        std::string expect_binding = spec.get("expect_binding", "");

        ob::AnalysisInput input = parse_input(j);
        ob::OpenBookVerdict v = ob::decide(input, to_options(j));
        std::string got = to_string(v.status);
        bool ok = true;
        if (!expect.empty()) {
            if (expect == "PROVED")
                ok = v.status == ob::VerdictStatus::Proved ||
                     v.status == ob::VerdictStatus::ProvedQualified;
            else
                ok = got == expect;
        }
        if (ok && !expect_binding.empty()) ok = to_string(v.binding) == expect_binding;
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << path.filename().string() << ": " << got
                  << " (" << to_string(v.binding) << ")";
        if (!ok) std::cout << " expected " << expect << " " << expect_binding;
        std::cout << "\n";
        failures += ok ? 0 : 1;
    }
    std::cout << (failures ? "corpus: FAILURES: " : "corpus: all passed, total ")
              << (failures ? failures : static_cast<int>(jobs.size())) << "\n";
    return failures ? kExitRefuted : kExitProved;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"open book structures at infinity for polynomial maps"};
    app.require_subcommand(1);

    CommonArgs check_args, milnor_args, newton_args, sweep_args, corpus_args;

    auto* check = app.add_subcommand("check", "run the analysis and print the verdict");
    check_args.attach(check);

    auto* milnor = app.add_subcommand("milnor", "print a Milnor-type system");
    milnor_args.attach(milnor);
    bool want_sing = false, want_milnor = false, want_quotient = false, want_zero = false;
    milnor->add_flag("--sing", want_sing, "singular-locus system");
    milnor->add_flag("--milnor", want_milnor, "Milnor set system (default)");
    milnor->add_flag("--quotient", want_quotient, "Milnor set of Psi/|Psi|");
    milnor->add_flag("--zero", want_zero, "zero locus V");

    auto* newton = app.add_subcommand("newton", "print the Newton polyhedron");
    newton_args.attach(newton);
    long face_index = -1;
    newton->add_option("--face", face_index, "also print the face polynomial of this face index");

    auto* sweep = app.add_subcommand("sweep", "radius sweep of the quotient system");
    sweep_args.attach(sweep);

    auto* corpus = app.add_subcommand("corpus", "run a directory of jobs against expectations");
    std::string corpus_dir;
    corpus->add_option("dir", corpus_dir, "directory with .job files")->required();
    corpus_args.attach(corpus, /*with_inputs=*/false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitBadInput : kExitProved;
    }

    try {
        if (check->parsed()) return run_check(check_args);
        if (milnor->parsed()) {
            std::string which = want_sing       ? "sing"
                                : want_quotient ? "quotient"
                                : want_zero     ? "zero"
                                                : "milnor";
            return run_milnor(milnor_args, which);
        }
        if (newton->parsed()) return run_newton(newton_args, face_index);
        if (sweep->parsed()) return run_sweep(sweep_args);
        if (corpus->parsed()) return run_corpus(corpus_dir, corpus_args);
    } catch (const ob::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
