#pragma once

#include "vortexwave/field.hpp"
#include "vortexwave/plane_point.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vw {

enum class Mode { moving, fixed, multi };

/// Singular vortex: position z_i and intensity d_i (gamma in fixed mode).
struct PointVortexState {
  PlanePoint pos;
  double intensity = 0.0;

  friend bool operator==(const PointVortexState&, const PointVortexState&) = default;
};

enum class PatchKind { disk, annulus, profile };

/// Compactly supported initial vorticity on r_inner <= |x - center| < r_outer.
/// disk and annulus carry the constant alpha; profile carries
///   alpha + slope (r - r_inner) + amplitude cos(wavenumber theta).
struct Patch {
  PatchKind kind = PatchKind::disk;
  PlanePoint center;
  double r_inner = 0.0;
  double r_outer = 0.0;
  double alpha = 0.0;
  double slope = 0.0;
  double amplitude = 0.0;
  int wavenumber = 0;

  bool contains(PlanePoint x) const;
  double value_at(PlanePoint x) const;
  bool is_constant() const { return kind != PatchKind::profile || (slope == 0.0 && amplitude == 0.0); }

  friend bool operator==(const Patch&, const Patch&) = default;
};

enum class Perturbation { vortex_offset, marker_jitter };

/// Smooth tensor-product bump in (t, x1, x2):
///   amplitude * b((t - t_center)/t_half) * b((x1 - c1)/half) * b((x2 - c2)/half),
/// with b(s) = (1 - s^2)^4 on |s| < 1 and 0 elsewhere.
struct TestFunction {
  PlanePoint center;
  double half_width = 0.1;
  double t_center = 0.5;
  double t_half = 0.25;
  double amplitude = 1.0;

  double value(double t, PlanePoint x) const;
  double time_derivative(double t, PlanePoint x) const;
  PlanePoint gradient(double t, PlanePoint x) const;

  friend bool operator==(const TestFunction&, const TestFunction&) = default;
};

struct NumericsConfig {
  std::optional<double> h;
  std::optional<double> blob_delta;
  std::optional<double> r_guard;
  std::optional<double> dt;
  double t_end = 1.0;
  std::optional<double> grid_spacing;
  std::optional<double> grid_half_width;
  std::optional<PlanePoint> grid_center;

  friend bool operator==(const NumericsConfig&, const NumericsConfig&) = default;
};

struct DiagnosticsConfig {
  bool constancy = false;
  double constancy_tol = 1e-10;
  double support_tol = 0.0;
  bool norms = true;
  double hole_tol = 0.0;
  double lp_drift_tol = 0.02;
  double pair_ratio = 0.5;
  double convergence_factor = 1.5;
  std::vector<TestFunction> bumps;

  friend bool operator==(const DiagnosticsConfig&, const DiagnosticsConfig&) = default;
};

struct ScenarioConfig {
  std::string name = "scenario";
  Mode mode = Mode::moving;
  std::vector<Patch> patches;
  std::vector<PointVortexState> vortices;
  double eta = 0.0;
  Perturbation perturbation = Perturbation::vortex_offset;
  std::uint64_t seed = 1;
  NumericsConfig numerics;
  DiagnosticsConfig diagnostics;
  std::size_t output_stride = 10;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Numerical parameters with every default filled in.
struct ResolvedNumerics {
  double h = 0.0;
  double blob_delta = 0.0;
  double r_guard = 0.0;
  double dt = 0.0;
  double t_end = 0.0;
  field::Grid grid;
};

/// Defaults: h = first patch radius / 50, blob_delta = 2h, r_guard = h/2,
/// dt = 1e-3, grid spacing 2h, grid half-width 4x the patch extent about the
/// bounding-box center.
ResolvedNumerics resolve_numerics(const ScenarioConfig& config);

/// Copy of config with every optional numeric replaced by its resolved value.
ScenarioConfig with_resolved_defaults(const ScenarioConfig& config);

/// Throws ConfigError naming the offending key.
void validate(const ScenarioConfig& config);

/// Constant value and radius of the constant disk around each vortex at t = 0
/// (the largest ball about z_i inside a constant patch). Throws ConfigError
/// when a vortex does not sit inside a constant patch.
struct ConstancyTarget {
  double alpha = 0.0;
  double initial_radius = 0.0;
};
std::vector<ConstancyTarget> constancy_targets(const ScenarioConfig& config);

/// Battery of five bumps scaled to the first patch: one centered on it, four
/// overlapping it at different offsets, all inside (0, t_end) in time.
std::vector<TestFunction> default_bump_battery(const ScenarioConfig& config);

std::string to_string(Mode mode);
std::string to_string(PatchKind kind);
std::string to_string(Perturbation p);

}  // namespace vw
