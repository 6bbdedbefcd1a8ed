#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "inext/csv.hpp"
#include "inext/runner.hpp"

using namespace inext;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("number formatting is shortest round-trip with '.' separator") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(-2.0) == "-2");
    CHECK(format_number(0.0) == "0");
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK(std::stod(format_number(1e300)) == 1e300);
}

TEST_CASE("csv quoting") {
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_escape("two\nlines") == "\"two\nlines\"");
}

TEST_CASE("csv writer emits LF rows") {
    auto dir = scratch_dir("inext_csv_test");
    {
        CsvWriter w((dir / "t.csv").string());
        w.text_row({"t", "x,y"});
        w.row({1.5, -0.25});
    }
    CHECK(slurp(dir / "t.csv") == "t,\"x,y\"\n1.5,-0.25\n");
}

TEST_CASE("config defaults are tracked and derived values computed") {
    ScenarioConfig c = parse_config_text(R"({"model":{"variant":"beam_eta2"}})");
    CHECK(c.integrator.dt == 1e-3);
    CHECK(c.basis.n_wx == 6);
    bool saw_dt = false;
    for (const auto& f : c.defaulted) saw_dt |= (f == "integrator.dt");
    CHECK(saw_dt);
    CHECK(c.inplane_modes_x() == 24);
    CHECK(c.probe_x() == 1.0);
    CHECK(validation_report(c).find("valid") == 0);
}

TEST_CASE("config errors name the offending field") {
    CHECK_THROWS_WITH_AS(
        validate_config(parse_config_text(
            R"({"model":{"variant":"beam_eta2"},"integrator":{"dt":0}})")),
        "integrator.dt: must be positive", ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({"model":{"variant":"nope"}})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({not json)"), ConfigError);
    CHECK_THROWS_AS(parse_config_text(R"({})"), ConfigError);
    CHECK_THROWS_AS(
        validate_config(parse_config_text(
            R"({"model":{"variant":"beam_eta2"},"initial":{"mode":9}})")),
        ConfigError);
    CHECK_THROWS_AS(
        validate_config(parse_config_text(
            R"({"model":{"variant":"beam_eta2"},
                "integrator":{"scheme":"explicit_rk4"}})")),
        ConfigError);
}

TEST_CASE("unsupported model and scheme combinations are rejected up front") {
    CHECK_THROWS_AS(
        validate_config(parse_config_text(
            R"({"model":{"variant":"plate_1"},
                "integrator":{"constraints":"reduced"}})")),
        UnsupportedMode);
    CHECK_THROWS_AS(validate_config(parse_config_text(
                        R"({"model":{"variant":"plate_3"}})")),
                    UnsupportedMode);
}

TEST_CASE("config hash is a stable function of the raw bytes") {
    CHECK(fnv1a("") == 14695981039346656037ull);
    CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
    CHECK(fnv1a("config") != fnv1a("confih"));
}

TEST_CASE("zero-amplitude scenario runs clean with all checks passing") {
    ScenarioConfig c = parse_config_text(R"({
        "model": {"variant": "beam_eta2"},
        "basis": {"n_w": 4, "n_u": 8},
        "initial": {"mode": 1, "amplitude": 0.0},
        "integrator": {"dt": 0.01, "t_end": 0.05},
        "output": {"plots": true, "snapshots": [0.02]}
    })");
    validate_config(c);
    auto dir = scratch_dir("inext_zero_run");
    RunOutcome out = run_scenario(c, dir.string(), true);
    CHECK(out.exit_code == 0);
    REQUIRE(!out.checks.empty());
    for (const auto& ck : out.checks) CHECK(ck.passed);

    const std::string traj = slurp(dir / "trajectory.csv");
    CHECK(traj.find("t,q0,") == 0);
    CHECK(traj.find("0.01,0,0,0,0,") != std::string::npos);
    CHECK(std::filesystem::exists(dir / "diagnostics.json"));
    CHECK(std::filesystem::exists(dir / "manifest.json"));
    CHECK(std::filesystem::exists(dir / "energy.svg"));
    CHECK(std::filesystem::exists(dir / "tip.svg"));
    CHECK(std::filesystem::exists(dir / "snapshot_000.csv"));
}

TEST_CASE("modes runner writes a spectrum table") {
    ScenarioConfig c = parse_config_text(R"({
        "model": {"variant": "beam_eta2"},
        "basis": {"n_w": 4, "n_u": 8}
    })");
    auto dir = scratch_dir("inext_modes_run");
    RunOutcome out = run_modes(c, dir.string());
    CHECK(out.exit_code == 0);
    const std::string csv = slurp(dir / "modes.csv");
    CHECK(csv.find("index,frequency") == 0);
    CHECK(csv.find("3.51601") != std::string::npos);
}

TEST_CASE("static runner emits a report and deflection profile") {
    ScenarioConfig c = parse_config_text(R"({
        "model": {"variant": "beam_eta2"},
        "basis": {"n_w": 6, "n_u": 12},
        "load": {"kind": "tip_force", "magnitude": 0.001}
    })");
    validate_config(c);
    auto dir = scratch_dir("inext_static_run");
    RunOutcome out = run_static(c, dir.string(), true);
    CHECK(out.exit_code == 0);
    for (const auto& ck : out.checks) CHECK(ck.passed);
    CHECK(std::filesystem::exists(dir / "static_report.json"));
    CHECK(std::filesystem::exists(dir / "deflection.csv"));
}
