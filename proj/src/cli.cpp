#include "bergvar/cli.hpp"

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "bergvar/runner.hpp"

namespace bergvar {

namespace {

struct CliOptions {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed{0};
  bool seed_set{false};
  int threads{0};
};

void add_common(CLI::App* cmd, CliOptions& opt, bool config_required) {
  auto* c = cmd->add_option("--config", opt.config_path, "scenario config (JSON)");
  if (config_required) c->required();
  cmd->add_option("--out", opt.out_dir, "report output directory");
  cmd->add_option("--seed", opt.seed, "seed for sampled property tests")
      ->each([&opt](const std::string&) { opt.seed_set = true; });
  cmd->add_option("--threads", opt.threads, "max concurrent suite evaluations");
}

int run_with(const CliOptions& opt, const std::string& suite) {
  ScenarioConfig cfg = config_from_file(opt.config_path);
  if (!suite.empty()) cfg.suites = {suite};
  if (!opt.out_dir.empty()) cfg.out_dir = opt.out_dir;
  if (opt.seed_set) cfg.seed = opt.seed;
  if (opt.threads > 0) cfg.threads = opt.threads;
  return run_and_write(cfg);
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"weighted Bergman kernels on families of planar domains: "
               "variational-formula verification suites"};
  app.require_subcommand(1);

  CliOptions opt;
  auto* presets = app.add_subcommand("presets", "list families, weights, motions, integrands");
  std::string selected_suite;
  for (const std::string& name : suite_names()) {
    auto* cmd = app.add_subcommand(name, "run the " + name + " suite");
    add_common(cmd, opt, true);
    cmd->callback([&selected_suite, name] { selected_suite = name; });
  }
  auto* all = app.add_subcommand("all", "run every applicable suite");
  add_common(all, opt, true);
  all->callback([&selected_suite] { selected_suite = "all"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (presets->parsed()) {
      std::cout << list_presets_text();
      return 0;
    }
    return run_with(opt, selected_suite == "all" ? "all" : selected_suite);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace bergvar
