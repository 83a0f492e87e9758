#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <fstream>

#include "bergvar/cli.hpp"
#include "bergvar/presets.hpp"
#include "bergvar/runner.hpp"
#include "doctest.h"

using namespace bergvar;
namespace fs = std::filesystem;

namespace {

std::string write_temp_config(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "bergvar_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

// Small, fast configuration used by all CLI tests.
const char* kFastConfig = R"({
  "version": 1,
  "seed": 42,
  "family": {"preset": "scaled_disk"},
  "weight": {"preset": "zero"},
  "basis_size": 12,
  "quadrature": {"n_radial": 24, "n_angular": 96},
  "stencil": {"h": 1e-3, "scheme": "richardson"},
  "t_grid": {"radius": 0.2, "points_per_axis": 3},
  "points": {"zeta": [[0,0]], "eta": [[0,0]], "nakano_eta": [[0,0],[0.3,0]]},
  "motion": {"preset": "motion:z+a(t)zbar:a=t2"},
  "suites": ["kernel"],
  "threads": 1
})";

}  // namespace

TEST_CASE("preset catalog lists the expected ids and round-trips") {
  const auto catalog = preset_catalog();
  bool has_scaled = false, has_motion_t2 = false;
  for (const auto& p : catalog) {
    has_scaled = has_scaled || p.id == "scaled_disk";
    has_motion_t2 = has_motion_t2 || p.id == "motion:z+a(t)zbar:a=t2";
    // every listed preset round-trips through its factory
    if (p.kind == "family") CHECK_NOTHROW(family_from_id(p.id));
    if (p.kind == "weight") CHECK_NOTHROW(weight_from_id(p.id));
    if (p.kind == "motion") CHECK_NOTHROW(motion_from_id(p.id));
    if (p.kind == "integrand") CHECK_NOTHROW(integrand_from_id(p.id));
  }
  CHECK(has_scaled);
  CHECK(has_motion_t2);
  CHECK(list_presets_text().find("scaled_disk") != std::string::npos);
}

TEST_CASE("config parsing applies defaults and validates") {
  const ScenarioConfig cfg = config_from_json_text(kFastConfig);
  CHECK(cfg.family_id == "scaled_disk");
  CHECK(cfg.basis_size == 12);
  CHECK_NOTHROW(validate_config(cfg));

  CHECK_THROWS_AS(config_from_json_text("{ not json"), ConfigError);

  ScenarioConfig bad = cfg;
  bad.family_id = "dodecagon";
  CHECK_THROWS_AS(validate_config(bad), ConfigError);

  bad = cfg;
  bad.n_angular = 16;  // < 4 N
  CHECK_THROWS_AS(validate_config(bad), ConfigError);

  bad = cfg;
  bad.suites = {"spectral-flow"};
  CHECK_THROWS_AS(validate_config(bad), ConfigError);

  bad = cfg;
  bad.weight_id = "abs2";
  bad.suites = {"second-variation"};
  CHECK_THROWS_AS(validate_config(bad), ConfigError);
}

TEST_CASE("run_suites is deterministic across thread counts") {
  ScenarioConfig cfg = config_from_json_text(kFastConfig);
  cfg.suites = {"kernel", "first-variation", "motion"};
  cfg.threads = 1;
  const RunReport a = run_suites(cfg);
  cfg.threads = 4;
  const RunReport b = run_suites(cfg);
  CHECK(a.to_json() == b.to_json());
  CHECK(a.to_csv() == b.to_csv());
  CHECK(a.all_pass());
}

TEST_CASE("report schema carries the required row fields") {
  ScenarioConfig cfg = config_from_json_text(kFastConfig);
  const RunReport rep = run_suites(cfg);
  for (const auto& row : rep.rows) {
    if (row.tolerance > 0.0) {  // comparison rows
      CHECK(row.abs_residual ==
            doctest::Approx(std::abs(row.formula_value - row.oracle_value)));
      CHECK(row.pass == (row.abs_residual <= row.tolerance));
    }
  }
  CHECK(rep.to_csv().rfind(
            "suite,scenario,formula_value,oracle_value,abs_residual,rel_residual,"
            "tolerance,pass\n", 0) == 0);
  const std::string json = rep.to_json();
  for (const char* key : {"\"version\"", "\"config\"", "\"rows\"", "\"summary\"",
                          "\"formula_value\"", "\"tolerance\""})
    CHECK(json.find(key) != std::string::npos);
}

TEST_CASE("cli exit codes") {
  const std::string cfg_path = write_temp_config("ok.json", kFastConfig);
  const std::string out_dir = (fs::temp_directory_path() / "bergvar_test" / "out").string();

  {
    const char* argv[] = {"bergvar", "presets"};
    CHECK(cli_main(2, argv) == 0);
  }
  {
    const char* argv[] = {"bergvar", "kernel", "--config", cfg_path.c_str(), "--out",
                          out_dir.c_str()};
    CHECK(cli_main(6, argv) == 0);
    CHECK(fs::exists(fs::path(out_dir) / "report.json"));
    CHECK(fs::exists(fs::path(out_dir) / "report.csv"));
  }
  {
    // unknown preset -> config error (exit 2) with a diagnostic naming it
    const std::string bad = write_temp_config(
        "bad.json", R"({"family": {"preset": "enneagon"}, "suites": ["kernel"]})");
    const char* argv[] = {"bergvar", "kernel", "--config", bad.c_str()};
    CHECK(cli_main(4, argv) == 2);
  }
  {
    const char* argv[] = {"bergvar", "kernel", "--config", "/nonexistent/file.json"};
    CHECK(cli_main(4, argv) == 2);
  }
  {
    // missing required --config is a usage error
    const char* argv[] = {"bergvar", "kernel"};
    CHECK(cli_main(2, argv) == 2);
  }
}

TEST_CASE("identical config and seed produce byte-identical report files") {
  ScenarioConfig cfg = config_from_json_text(kFastConfig);
  const fs::path base = fs::temp_directory_path() / "bergvar_test";
  cfg.suites = {"kernel"};
  cfg.out_dir = (base / "run1").string();
  cfg.threads = 1;
  CHECK(run_and_write(cfg) == 0);
  cfg.out_dir = (base / "run2").string();
  cfg.threads = 3;
  CHECK(run_and_write(cfg) == 0);
  CHECK(slurp((base / "run1" / "report.json").string()) ==
        slurp((base / "run2" / "report.json").string()));
  CHECK(slurp((base / "run1" / "report.csv").string()) ==
        slurp((base / "run2" / "report.csv").string()));
}

TEST_CASE("second-variation, nakano and psh-scan suites pass end to end") {
  ScenarioConfig cfg = config_from_json_text(kFastConfig);
  cfg.family_id = "squeezed_disk";
  cfg.basis_size = 16;
  cfg.n_radial = 32;
  cfg.n_angular = 160;
  cfg.suites = {"second-variation", "nakano", "psh-scan"};
  const RunReport rep = run_suites(cfg);
  for (const auto& row : rep.rows) {
    INFO(row.suite, " :: ", row.scenario, " residual ", row.abs_residual);
    CHECK(row.pass);
  }
}

TEST_CASE("seed changes the sampled rows but not the schema") {
  ScenarioConfig cfg = config_from_json_text(kFastConfig);
  const RunReport a = run_suites(cfg);
  cfg.seed = 43;
  const RunReport b = run_suites(cfg);
  CHECK(a.rows.size() == b.rows.size());
  CHECK(a.to_json() != b.to_json());  // config echo differs at least in the seed
}
