#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "hamflow/cli/commands.hpp"
#include "hamflow/cli/csv.hpp"
#include "hamflow/cli/registry.hpp"
#include "hamflow/errors.hpp"

using namespace hamflow;
using namespace hamflow::cli;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "hamflow-tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

int run_tool(const std::string& args) {
    const std::string command = std::string(HAMFLOW_CLI_BIN) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(command.c_str());
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("registry resolves ids and rejects unknown ones") {
    const HamiltonianSystem ho = system_by_id("ho");
    CHECK(ho.label == "harmonic-oscillator");
    CHECK(system_by_id("pendulum").label == "pendulum");
    CHECK_THROWS_AS(system_by_id("lorenz"), Error);

    for (const std::string& id : known_scheme_ids()) CHECK_NOTHROW(scheme_by_id(id, ho));
    CHECK_THROWS_AS(scheme_by_id("leapfrog", ho), Error);
    CHECK_NOTHROW(scheme_by_id("euler+v2v3v4", ho));
    CHECK_THROWS_AS(scheme_by_id("euler+w2", ho), Error);

    // Corrections need the closed-form flow; the pendulum has none.
    CHECK_THROWS_AS(scheme_by_id("euler+v2", system_by_id("pendulum")), Error);
}

TEST_CASE("simulate writes the pinned artifact set") {
    RunManifest manifest;
    manifest.out_dir = fresh_dir("simulate-default").string();
    manifest.functionals = {"x/p", "2H"};
    const SimulateSummary summary = cmd_simulate(manifest);

    CHECK(summary.rows == 201);
    CHECK(summary.final_t == doctest::Approx(20.0).epsilon(1e-13));
    CHECK(summary.max_sigma_phase <= 1e-20);

    const fs::path dir = summary.out_dir;
    for (const char* name :
         {"trajectory.csv", "manifest.json", "phase.svg", "x_t.svg", "p_t.svg", "sigma_t.svg"})
        CHECK(fs::exists(dir / name));

    const CsvTable table = read_csv((dir / "trajectory.csv").string());
    CHECK(table.header ==
          std::vector<std::string>{"step", "t", "q1", "p1", "H", "ref_q1", "ref_p1", "sigma_phase",
                                   "sigma_x/p", "sigma_2H"});
    CHECK(table.rows.size() == 201);
}

TEST_CASE("simulate with zero steps emits a single row") {
    RunManifest manifest;
    manifest.steps = 0;
    manifest.out_dir = fresh_dir("simulate-empty").string();
    const SimulateSummary summary = cmd_simulate(manifest);
    CHECK(summary.rows == 1);
    const CsvTable table = read_csv((fs::path(summary.out_dir) / "trajectory.csv").string());
    CHECK(table.rows.size() == 1);
}

TEST_CASE("dg simulate keeps sigma_2H at rounding level") {
    RunManifest manifest;
    manifest.scheme = "dg";
    manifest.functionals = {"2H"};
    manifest.out_dir = fresh_dir("simulate-dg").string();
    cmd_simulate(manifest);

    const CsvTable table =
        read_csv((fs::path(manifest.out_dir) / "trajectory.csv").string());
    const int column = table.column("sigma_2H");
    REQUIRE(column >= 0);
    for (const auto& row : table.rows) {
        REQUIRE(row[column].has_value());
        CHECK(*row[column] <= 1e-20);
    }
}

TEST_CASE("csv cells round-trip doubles exactly") {
    RunManifest manifest;
    manifest.steps = 50;
    manifest.scheme = "euler";
    manifest.out_dir = fresh_dir("simulate-roundtrip").string();
    cmd_simulate(manifest);

    // Parse every numeric cell back and re-format it: 17 significant digits
    // must reproduce the text, hence the double, exactly.
    const fs::path csv = fs::path(manifest.out_dir) / "trajectory.csv";
    std::ifstream in(csv);
    REQUIRE(in);
    std::string line;
    std::getline(in, line);  // header
    int checked = 0;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string cell;
        std::getline(ss, cell, ',');  // step index
        while (std::getline(ss, cell, ',')) {
            if (cell.empty()) continue;
            CHECK(format_g17(std::stod(cell)) == cell);
            ++checked;
        }
    }
    CHECK(checked > 300);
}

TEST_CASE("manifest round trip and overrides") {
    RunManifest manifest;
    manifest.scheme = "euler";
    manifest.delta = 0.05;
    manifest.steps = 17;
    manifest.functionals = {"x/p"};
    const std::string text = manifest_to_json_text(manifest);
    const RunManifest parsed = manifest_from_json_text(text);
    CHECK(parsed.scheme == "euler");
    CHECK(parsed.delta == 0.05);
    CHECK(parsed.steps == 17);
    CHECK(parsed.functionals == std::vector<std::string>{"x/p"});
    CHECK(parsed.version == std::string(HAMFLOW_VERSION));

    CHECK_THROWS_AS(manifest_from_json_text("{not json"), Error);
}

TEST_CASE("re-running a manifest reproduces the csv bit for bit") {
    RunManifest manifest;
    manifest.scheme = "euler";
    manifest.steps = 120;
    manifest.functionals = {"x/p", "2H"};

    manifest.out_dir = fresh_dir("repro-a").string();
    cmd_simulate(manifest);
    const std::string first = slurp(fs::path(manifest.out_dir) / "trajectory.csv");

    manifest.out_dir = fresh_dir("repro-b").string();
    cmd_simulate(manifest);
    const std::string second = slurp(fs::path(manifest.out_dir) / "trajectory.csv");

    CHECK(first == second);
}

TEST_CASE("analyze-error on the oscillator scheme family") {
    RunManifest manifest;
    manifest.functionals = {"x/p", "H"};

    SUBCASE("euler is a scaling error with the ratio invariant") {
        manifest.scheme = "euler";
        manifest.out_dir = fresh_dir("analyze-euler").string();
        const AnalyzeSummary summary = cmd_analyze_error(manifest);
        CHECK(summary.classification == "scaling");
        CHECK(summary.leading_order == 2);
        CHECK_FALSE(summary.reparametrizable);
        const std::string text = slurp(fs::path(summary.out_dir) / "errors.json");
        CHECK(text.find("\"pass\": true") != std::string::npos);
    }

    SUBCASE("dg is a time translation with lambda and W tables") {
        manifest.scheme = "dg";
        manifest.out_dir = fresh_dir("analyze-dg").string();
        const AnalyzeSummary summary = cmd_analyze_error(manifest);
        CHECK(summary.classification == "time-translation");
        CHECK(summary.leading_order == 3);
        CHECK(summary.reparametrizable);
        const std::string text = slurp(fs::path(summary.out_dir) / "errors.json");
        CHECK(text.find("\"lambda\"") != std::string::npos);
        CHECK(text.find("\"W\"") != std::string::npos);
    }

    SUBCASE("exact scheme classifies as exact with an empty v table") {
        manifest.scheme = "exact";
        manifest.out_dir = fresh_dir("analyze-exact").string();
        const AnalyzeSummary summary = cmd_analyze_error(manifest);
        CHECK(summary.classification == "exact");
        CHECK(summary.leading_order == 0);
        const std::string text = slurp(fs::path(summary.out_dir) / "errors.json");
        CHECK(text.find("\"v\": {}") != std::string::npos);
    }
}

TEST_CASE("correct raises the measured order") {
    RunManifest manifest;
    manifest.scheme = "euler";

    SUBCASE("through v4 the slope reaches 4") {
        manifest.correct_orders = {2, 3, 4};
        manifest.out_dir = fresh_dir("correct-v4").string();
        const CorrectSummary summary = cmd_correct(manifest);
        CHECK(summary.corrected_id == "euler+v2v3v4");
        CHECK(summary.corrected_order == doctest::Approx(4.0).epsilon(0.05));
        CHECK(summary.base_order == doctest::Approx(1.0).epsilon(0.2));
    }

    SUBCASE("through v2 the slope reaches 2") {
        manifest.correct_orders = {2};
        manifest.out_dir = fresh_dir("correct-v2").string();
        const CorrectSummary summary = cmd_correct(manifest);
        CHECK(summary.corrected_order == doctest::Approx(2.0).epsilon(0.1));
    }

    SUBCASE("empty orders leave the base scheme") {
        manifest.correct_orders = {};
        manifest.out_dir = fresh_dir("correct-none").string();
        const CorrectSummary summary = cmd_correct(manifest);
        CHECK(summary.corrected_id == "euler");
        CHECK(summary.corrected_order == doctest::Approx(summary.base_order));
    }
}

TEST_CASE("corrected scheme ids are usable in simulate") {
    RunManifest manifest;
    manifest.scheme = "euler+v2v3v4";
    manifest.steps = 40;
    manifest.out_dir = fresh_dir("simulate-corrected").string();
    const SimulateSummary summary = cmd_simulate(manifest);
    // Fourth-order accuracy over t = 4.
    CHECK(summary.max_sigma_phase <= 1e-8);
}

TEST_CASE("action-angle command") {
    RunManifest manifest;
    manifest.system = "ho";
    manifest.energy_lo = 0.05;
    manifest.energy_hi = 2.5;
    manifest.steps = 25;

    SUBCASE("oscillator chart has constant nu = 1") {
        manifest.out_dir = fresh_dir("aa-ho").string();
        const ActionAngleSummary summary = cmd_action_angle(manifest);
        CHECK(summary.nu_at_seed == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(summary.max_action_drift <= 1e-9);

        const CsvTable chart = read_csv((fs::path(summary.out_dir) / "chart.csv").string());
        CHECK(chart.header == std::vector<std::string>{"q", "p", "theta", "I", "nu"});
        const int nu_col = chart.column("nu");
        for (const auto& row : chart.rows) CHECK(*row[nu_col] == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(fs::exists(fs::path(summary.out_dir) / "aa_trajectory.csv"));
    }

    SUBCASE("quartic action stays on its level") {
        manifest.system = "quartic";
        manifest.energy_lo = 0.05;
        manifest.energy_hi = 1.0;
        manifest.seed_q = {1.0};
        manifest.seed_p = {0.3};
        manifest.steps = 10;
        manifest.out_dir = fresh_dir("aa-quartic").string();
        const ActionAngleSummary summary = cmd_action_angle(manifest);
        CHECK(summary.max_action_drift <= 1e-5);
    }

    SUBCASE("seed outside the window names step 7 and exits with the domain code") {
        manifest.energy_lo = 0.05;
        manifest.energy_hi = 0.2;
        manifest.out_dir = fresh_dir("aa-domain").string();
        try {
            cmd_action_angle(manifest);
            FAIL("expected a domain error");
        } catch (const Error& error) {
            CHECK(std::string(error.what()).find("step 7") != std::string::npos);
            CHECK(exit_code_for(error) == 2);
        }
    }
}

TEST_CASE("audit command summarises the oscillator schemes") {
    RunManifest manifest;

    manifest.scheme = "exact";
    manifest.out_dir = fresh_dir("audit-exact").string();
    const AuditSummary exact = cmd_audit(manifest);
    CHECK(exact.identity_pass);
    CHECK(exact.inverse_pass);
    CHECK(exact.group_law_pass);
    CHECK(exact.symplectic_pass);

    manifest.scheme = "euler";
    manifest.out_dir = fresh_dir("audit-euler").string();
    const AuditSummary euler = cmd_audit(manifest);
    CHECK_FALSE(euler.group_law_pass);
    CHECK_FALSE(euler.symplectic_pass);

    manifest.scheme = "dg";
    manifest.out_dir = fresh_dir("audit-dg").string();
    const AuditSummary dg = cmd_audit(manifest);
    CHECK(dg.symplectic_pass);
    CHECK(dg.inverse_pass);
    CHECK_FALSE(dg.group_law_pass);
}

TEST_CASE("the binary consumes manifest files with flag overrides") {
    const fs::path dir = fresh_dir("binary-manifest");
    RunManifest manifest;
    manifest.scheme = "dg";
    manifest.steps = 12;
    manifest.functionals = {"2H"};
    manifest.out_dir = (dir / "run").string();
    save_manifest(manifest, (dir / "m.json").string());

    CHECK(run_tool("simulate --manifest " + (dir / "m.json").string()) == 0);
    CHECK(read_csv((dir / "run" / "trajectory.csv").string()).rows.size() == 13);

    CHECK(run_tool("simulate --manifest " + (dir / "m.json").string() + " --steps 3 --out " +
                   (dir / "override").string()) == 0);
    CHECK(read_csv((dir / "override" / "trajectory.csv").string()).rows.size() == 4);
}

TEST_CASE("the binary maps error kinds onto the exit-code contract") {
    const fs::path dir = fresh_dir("binary-exit");

    CHECK(run_tool("simulate --steps 5 --out " + (dir / "ok").string()) == 0);
    CHECK(run_tool("simulate --system lorenz --out " + (dir / "bad-system").string()) == 2);
    CHECK(run_tool("simulate --scheme nope --out " + (dir / "bad-scheme").string()) == 2);
    CHECK(run_tool("nonsense-subcommand") == 2);
    // Corrections on a system without a closed-form flow: capability.
    CHECK(run_tool("simulate --system pendulum --scheme euler+v2 --steps 3 --out " +
                   (dir / "capability").string()) == 3);
    // rk4 polynomial map is oscillator-only: capability.
    CHECK(run_tool("audit --system pendulum --scheme rk4 --out " +
                   (dir / "capability2").string()) == 3);
}

TEST_CASE("HAMFLOW_OUT overrides the manifest output directory") {
    const fs::path dir = fresh_dir("env-out");
    RunManifest manifest;
    manifest.steps = 3;
    manifest.out_dir = (dir / "ignored").string();

    setenv("HAMFLOW_OUT", (dir / "forced").string().c_str(), 1);
    const SimulateSummary summary = cmd_simulate(manifest);
    unsetenv("HAMFLOW_OUT");

    CHECK(summary.out_dir == (dir / "forced").string());
    CHECK(fs::exists(dir / "forced" / "trajectory.csv"));
    CHECK_FALSE(fs::exists(dir / "ignored"));
}
