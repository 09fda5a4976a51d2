#pragma once

#include "vortexwave/diagnostics.hpp"
#include "vortexwave/dynamics.hpp"
#include "vortexwave/kernels.hpp"
#include "vortexwave/scenario.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vw::harness {

inline constexpr std::string_view kVersionTag = "vortexwave 1.0.0";

enum ExitCode : int { kExitPass = 0, kExitCheckFailure = 1, kExitConfigError = 2, kExitRuntimeError = 3 };

/// Everything needed to reproduce a run.
struct RunManifest {
  ScenarioConfig config;  // with every default resolved
  std::string command;
  std::string version{kVersionTag};
};

RunManifest make_manifest(const ScenarioConfig& config, std::string command);

/// Comment header (version, command, seed) followed by the resolved config;
/// parse_config reads it back unchanged.
std::string emit_manifest(const RunManifest& manifest);

/// Named numeric columns, one row per snapshot.
struct TimeSeriesTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Columns depend only on the configuration: time, constancy radii (when
/// enabled), support radius, grid norms (when enabled), vortex-marker and
/// vortex-pair distances, hole radius (fixed mode), guard events, vortex
/// positions.
TimeSeriesTable flatten(const dynamics::Trajectory& traj, const ScenarioConfig& config);

/// Comma-delimited text, header line first, 17 significant digits. The file
/// is written to a temporary sibling and renamed into place.
void write_timeseries(const TimeSeriesTable& table, const std::filesystem::path& path);
TimeSeriesTable read_timeseries(const std::filesystem::path& path);

void write_file_atomic(const std::filesystem::path& path, std::string_view content);

struct Check {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
};

/// Report file: `key: value` lines, then one `check.<name>: PASS|FAIL value
/// threshold` line per check and a final `status:` line.
struct Report {
  std::vector<std::pair<std::string, std::string>> info;
  std::vector<Check> checks;

  void note(std::string key, std::string value) { info.emplace_back(std::move(key), std::move(value)); }
  void check(std::string name, bool pass, double value, double threshold) {
    checks.push_back({std::move(name), pass, value, threshold});
  }
  bool passed() const;
  std::string text() const;
};

/// Kernel invariant suite: orthogonality of K on random samples, divergence of
/// K, K_eps and the blob kernel by fourth-order central differences, K_eps = K
/// outside B(0, eps), and the modulus bound phi(t) <= p t^(1 - 1/p).
Report check_kernels(const kernels::KernelParams& params, std::size_t orthogonality_samples = 1'000'000,
                     std::uint64_t seed = 12345);

struct SimulateOutcome {
  dynamics::Trajectory trajectory;
  Report report;
};

/// One trajectory plus the checks enabled by the config. When out_dir is set,
/// writes series.csv, manifest and report there.
SimulateOutcome simulate(const ScenarioConfig& config, const std::optional<std::filesystem::path>& out_dir,
                         std::string_view command = "simulate");

/// simulate() for fixed mode, adding the hole-law checks.
SimulateOutcome fixed(const ScenarioConfig& config, const std::optional<std::filesystem::path>& out_dir);

struct TwinOutcome {
  dynamics::Trajectory a;
  dynamics::Trajectory b;
  diagnostics::Series r;
  std::vector<diagnostics::HarmonicSample> harmonic;
  Report report;
};

/// Twin runs from the configured perturbation. Writes series_a.csv,
/// series_b.csv, twin.csv, manifest and report.
TwinOutcome twin(const ScenarioConfig& config, const std::optional<std::filesystem::path>& out_dir);

struct ConvergenceLevel {
  double h = 0.0;
  double dt = 0.0;
  std::size_t markers = 0;
  std::vector<double> residuals;  // one per test function
};

struct ConvergenceOutcome {
  std::vector<ConvergenceLevel> levels;
  Report report;
};

/// Weak residuals of the configured bump battery over `levels` runs with h and
/// dt halved together (blob_delta and r_guard follow h). Writes
/// convergence.csv, manifest and report.
ConvergenceOutcome convergence(const ScenarioConfig& config, std::size_t levels,
                               const std::optional<std::filesystem::path>& out_dir);

enum class CommandKind { simulate, twin, fixed, check_kernels, convergence };

struct CommandOptions {
  CommandKind kind = CommandKind::simulate;
  std::optional<std::filesystem::path> config_path;
  std::optional<std::filesystem::path> out_dir;
  std::optional<double> eta;
  std::size_t levels = 3;
};

struct CommandResult {
  int exit_code = kExitPass;
  Report report;
  std::string error;
};

/// Runs one command end to end and maps the outcome to an exit code.
CommandResult run_command(const CommandOptions& options);

}  // namespace vw::harness
