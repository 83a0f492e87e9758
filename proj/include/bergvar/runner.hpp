#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bergvar/finitediff.hpp"
#include "bergvar/report.hpp"
#include "bergvar/types.hpp"

namespace bergvar {

inline constexpr const char* kToolVersion = "bergvar 0.1.0";

struct ScenarioConfig {
  int version{1};
  std::uint64_t seed{42};
  std::string family_id{"scaled_disk"};
  std::vector<cplx> family_params;
  std::string weight_id{"zero"};
  std::vector<cplx> weight_params;
  int basis_size{24};
  int n_radial{48};
  int n_angular{256};
  Stencil stencil{};
  double t_grid_radius{0.3};
  int t_grid_points{3};  // per real axis
  std::vector<cplx> zeta_points{cplx(0.0, 0.0)};
  std::vector<cplx> eta_points{cplx(0.0, 0.0)};
  std::vector<cplx> nakano_etas{cplx(0.0, 0.0), cplx(0.3, 0.0), cplx(0.0, 0.25)};
  std::string motion_id{"motion:z+a(t)zbar:a=t2"};
  cplx motion_eps{0.1, 0.0};
  std::vector<std::string> suites{"all"};
  std::string out_dir{"out"};
  int threads{1};
};

/// Known suite names, in report order.
const std::vector<std::string>& suite_names();

ScenarioConfig config_from_json_text(const std::string& text);
ScenarioConfig config_from_file(const std::string& path);
/// Canonical JSON echo of the parsed config (byte-stable).
std::string normalize_config(const ScenarioConfig& cfg);
/// Throws ConfigError on any inconsistency.
void validate_config(const ScenarioConfig& cfg);

/// Runs the selected suites; deterministic for a fixed (config, seed)
/// at any thread count.
RunReport run_suites(const ScenarioConfig& cfg);

/// Runs, writes report.json / report.csv under out_dir, prints a summary.
/// Returns 0 (all pass) or 1 (some suite failed).
int run_and_write(const ScenarioConfig& cfg);

std::string list_presets_text();

}  // namespace bergvar
