// Drives the command-line tool as a subprocess and checks the external
// contract: exit codes, byte-determinism of repeated runs, CSV/JSON/SVG
// content. The binary path comes from the PROPELLER_CLI environment variable.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "propeller/geom.hpp"
#include "propeller/report_io.hpp"

namespace {

std::string cli_path() {
    const char* p = std::getenv("PROPELLER_CLI");
    REQUIRE_MESSAGE(p != nullptr, "PROPELLER_CLI must point at the binary");
    return p;
}

struct RunResult {
    int exit_code = -1;
    std::string output;  // combined stdout + stderr
};

RunResult run(const std::string& args) {
    const std::string out_file = "cli_test_output.tmp";
    const std::string cmd = cli_path() + " " + args + " > " + out_file + " 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_file, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    r.output = ss.str();
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("exit codes follow the documented contract") {
    CHECK(run("sweep --kind incircle --a 1.5 --b 1 --n 8 --out ok.csv").exit_code == 0);
    // invalid specs
    CHECK(run("sweep --kind incircle --a 1 --b 1 --n 8").exit_code == 2);
    CHECK(run("sweep --kind incircle --a 1.5 --b 1 --n 2").exit_code == 2);
    CHECK(run("sweep --kind nonsense --a 1.5 --b 1 --n 8").exit_code == 2);
    CHECK(run("sweep --kind incircle --a 1.5 --b 1 --n 8 --format yaml").exit_code == 2);
    CHECK(run("sweep --kind axis_aligned --a 1.5 --b 1 --n 8").exit_code == 2);  // --ac missing
    CHECK(run("render --kind incircle --a 1.5 --b 1 --width 0").exit_code == 2);
    CHECK(run("sweep --badflag 3").exit_code == 2);
    // construction failure: explicit caustic violating the closure condition
    CHECK(run("sweep --kind axis_aligned --a 1.5 --b 1 --ac 0.6 --bc 0.606 --n 8").exit_code == 3);
    // verify reports the failing property instead
    const RunResult bad = run("verify --kind axis_aligned --a 1.5 --b 1 --ac 0.6 --bc 0.606 --n 8");
    CHECK(bad.exit_code == 1);
    CHECK(bad.output.find("FAIL  closure") != std::string::npos);
}

TEST_CASE("verify passes on every constructible kind") {
    for (const char* args : {"verify --kind incircle --a 1.5 --b 1 --n 60",
                             "verify --kind confocal --a 1.5 --b 1 --n 60",
                             "verify --kind homothetic --a 1 --n 60",
                             "verify --kind axis_aligned --a 2 --b 1 --ac 1 --n 60",
                             "verify --kind incircle --a 1.5 --b 1 --affine 1,0.5,0,1 --n 60",
                             "verify --kind continuum --a 1.5 --b 1 --lambda 0.5 --n 60"}) {
        const RunResult r = run(args);
        CAPTURE(args);
        CAPTURE(r.output);
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("ALL PASS") != std::string::npos);
        CHECK(r.output.find("FAIL") == std::string::npos);
    }
}

TEST_CASE("verify emits the closed-form adjudication verdict") {
    const RunResult r = run("verify --kind incircle --a 1.5 --b 1 --n 16");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("sigma_closed_form_adjudication") != std::string::npos);
    CHECK(r.output.find("printed denominator reading (s1*u - s2*v - s3*w) matches") !=
          std::string::npos);
}

TEST_CASE("repeated runs are byte-identical") {
    const std::string sweep_args = "sweep --kind confocal --a 1.5 --b 1 --n 24 --out ";
    CHECK(run(sweep_args + "a.csv").exit_code == 0);
    CHECK(run(sweep_args + "b.csv").exit_code == 0);
    CHECK(slurp("a.csv") == slurp("b.csv"));

    const std::string json_args =
        "sweep --kind incircle --a 1.5 --b 1 --format json --n 24 --out ";
    CHECK(run(json_args + "a.json").exit_code == 0);
    CHECK(run(json_args + "b.json").exit_code == 0);
    CHECK(slurp("a.json") == slurp("b.json"));

    const std::string render_args =
        "render --kind incircle --a 1.5 --b 1 --t 0.7 --layers all --out ";
    CHECK(run(render_args + "a.svg").exit_code == 0);
    CHECK(run(render_args + "b.svg").exit_code == 0);
    CHECK(slurp("a.svg") == slurp("b.svg"));

    const RunResult v1 = run("verify --kind incircle --a 1.5 --b 1 --n 24");
    const RunResult v2 = run("verify --kind incircle --a 1.5 --b 1 --n 24");
    CHECK(v1.output == v2.output);
}

TEST_CASE("sweep CSV carries the expected summary") {
    CHECK(run("sweep --kind incircle --a 1.5 --b 1 --n 360 --out sum.csv").exit_code == 0);
    const std::string csv = slurp("sum.csv");
    const propeller::ParsedSweepCsv parsed = propeller::parse_sweep_csv(csv);
    CHECK(parsed.rows.size() == 360);

    bool found = false;
    for (size_t i = 0; i < parsed.summary_names.size(); ++i) {
        if (parsed.summary_names[i] != "sigma_o") continue;
        found = true;
        const double mean = parsed.summary_rows[i][0];
        const double rel_spread = parsed.summary_rows[i][2];
        const double predicted = parsed.summary_rows[i][3];
        CHECK(std::fabs(mean - 14.0 * propeller::kPi) / (14.0 * propeller::kPi) < 1e-9);
        CHECK(rel_spread < 1e-9);
        CHECK(std::fabs(predicted - 14.0 * propeller::kPi) / (14.0 * propeller::kPi) < 1e-12);
    }
    CHECK(found);
}

TEST_CASE("sweep --invariants filters the summary block") {
    CHECK(run("sweep --kind incircle --a 1.5 --b 1 --n 8 --invariants sigma_o,ratio_sum "
              "--out filt.csv")
              .exit_code == 0);
    const propeller::ParsedSweepCsv parsed = propeller::parse_sweep_csv(slurp("filt.csv"));
    REQUIRE(parsed.summary_names.size() == 2);
    CHECK(parsed.summary_names[0] == "sigma_o");
    CHECK(parsed.summary_names[1] == "ratio_sum");
}

TEST_CASE("sweep JSON parses and matches the pair") {
    CHECK(run("sweep --kind homothetic --a 1 --format json --n 12 --out h.json").exit_code == 0);
    const auto doc = nlohmann::json::parse(slurp("h.json"));
    CHECK(doc["pair"]["kind"] == "homothetic");
    CHECK(doc["samples"] == 12);
    CHECK(doc["skipped"] == 0);
    CHECK(doc["rows"].size() == 12);
    // the equilateral family has every blade constant, all equal
    double means[3] = {};
    for (const auto& item : doc["summary"]) {
        for (int i = 0; i < 3; ++i) {
            if (item["name"] == ("delta_" + std::to_string(i + 1))) {
                CHECK(item["relative_spread"].get<double>() < 1e-9);
                means[i] = item["mean"].get<double>();
            }
        }
    }
    CHECK(std::fabs(means[0] - means[1]) < 1e-12 * means[0]);
    CHECK(std::fabs(means[1] - means[2]) < 1e-12 * means[1]);
}

TEST_CASE("render emits frame sequences") {
    CHECK(run("render --kind incircle --a 1.5 --b 1 --frames 3 --out frame.svg").exit_code == 0);
    for (const char* name : {"frame_000.svg", "frame_001.svg", "frame_002.svg"}) {
        const std::string svg = slurp(name);
        CHECK(svg.find("<svg") != std::string::npos);
    }
}
