#include "vortexwave/harness.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using vw::harness::CommandKind;

  CLI::App app{"Vortex-wave simulation and diagnostics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(vw::harness::kVersionTag));

  vw::harness::CommandOptions options;
  std::string config_path;
  std::string out_dir;
  double eta = 0.0;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("--config", config_path, "Scenario configuration file");
    if (config_required) opt->required();
    sub->add_option("--out", out_dir, "Output directory for series, manifest and report");
  };

  auto* simulate = app.add_subcommand("simulate", "Run one trajectory and its enabled checks");
  add_common(simulate, true);
  auto* twin = app.add_subcommand("twin", "Run a perturbed pair and measure divergence");
  add_common(twin, true);
  twin->add_option("--eta", eta, "Perturbation size (overrides the config)");
  auto* fixed = app.add_subcommand("fixed", "Run with the vortex pinned and fit the hole law");
  add_common(fixed, true);
  auto* kernels = app.add_subcommand("check-kernels", "Verify kernel invariants");
  add_common(kernels, false);
  auto* conv = app.add_subcommand("convergence", "Weak-residual refinement study");
  add_common(conv, true);
  conv->add_option("--levels", options.levels, "Number of refinement levels")->check(CLI::Range(2, 8));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : vw::harness::kExitConfigError;
  }

  if (simulate->parsed()) options.kind = CommandKind::simulate;
  else if (twin->parsed()) options.kind = CommandKind::twin;
  else if (fixed->parsed()) options.kind = CommandKind::fixed;
  else if (kernels->parsed()) options.kind = CommandKind::check_kernels;
  else options.kind = CommandKind::convergence;

  if (!config_path.empty()) options.config_path = config_path;
  if (!out_dir.empty()) options.out_dir = out_dir;
  if (twin->parsed() && twin->count("--eta") > 0) options.eta = eta;

  const auto result = vw::harness::run_command(options);
  if (result.exit_code == vw::harness::kExitConfigError || result.exit_code == vw::harness::kExitRuntimeError) {
    std::cerr << "error: " << result.error << "\n";
  } else {
    std::cout << result.report.text();
  }
  return result.exit_code;
}
