#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "openbook/jobspec.hpp"
#include "openbook/milnor.hpp"
#include "openbook/parse.hpp"
#include "openbook/report.hpp"

using namespace openbook;

TEST_CASE("jobspec: parse, typed access, lossless save") {
    const char* text =
        "# a regression fixture\n"
        "kind = real_map\n"
        "vars = x, y, z\n"
        "poly = y*(2*x^2*y^2 - 9*x*y + 12); z\n"
        "seed = 7\n"
        "radii = 10, 100, 1000\n"
        "expect = REFUTED\n";
    auto job = JobSpec::from_text(text);
    CHECK(job.get("kind") == "real_map");
    CHECK(job.get_int("seed", 0) == 7);
    CHECK(job.get_doubles("radii", {}) == std::vector<double>{10, 100, 1000});
    CHECK(job.get("missing", "fallback") == "fallback");

    std::string path = "jobspec_roundtrip_test.job";
    job.save(path);
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == text);
    std::remove(path.c_str());

    CHECK_THROWS(JobSpec::from_text("keywithoutvalue\n"));
}

TEST_CASE("milnor system JSON carries canonical generator strings") {
    auto m = parse_real_map("vars: x, y, z\ny*(2*x^2*y^2 - 9*x*y + 12); z").map;
    auto j = to_json(milnor_system(m), {"x", "y", "z"});
    CHECK(j["schema"] == "1");
    CHECK(j["kind"] == "MILNOR");
    REQUIRE(j["generators"].size() == 1);
    std::string gen = j["generators"][0];
    // re-parse the canonical string: same polynomial back
    auto re = parse_real_map("vars: x, y, z\n" + gen);
    CHECK(re.map.components[0] == milnor_system(m).generators[0]);
}

TEST_CASE("sweep CSV format") {
    SweepReport rep;
    rep.rows.push_back({10.0, 2, 1e-12, 0.5});
    rep.rows.push_back({100.0, 0, 1e-3, 1e300});
    std::string csv = sweep_csv(rep);
    CHECK(csv.find("R,count,min_residual,min_dist_to_V\n") == 0);
    CHECK(csv.find("10,2,1e-12,0.5") != std::string::npos);
    CHECK(csv.find("100,0,0.001,\n") != std::string::npos);
}
