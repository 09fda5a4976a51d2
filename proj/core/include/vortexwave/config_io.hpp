#pragma once

#include "vortexwave/scenario.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace vw::harness {

/// Parses sectioned key/value text:
///
///   [scenario]   name, mode, patch (repeatable), eta, perturbation, seed
///   [vortices]   vortex = x1 x2 intensity (repeatable)
///   [numerics]   h, blob_delta, r_guard, dt, t_end, grid_spacing,
///                grid_half_width, grid_center = x1 x2
///   [diagnostics] constancy, constancy_tol, support_tol, norms, hole_tol,
///                lp_drift_tol, pair_ratio, convergence_factor,
///                bump = c1 c2 half_width t_center t_half [amplitude] (repeatable)
///   [output]     stride
///
/// Patches: `disk c1 c2 radius alpha`, `annulus c1 c2 r_in r_out alpha`,
/// `profile c1 c2 r_in r_out alpha slope amplitude wavenumber`.
/// '#' starts a comment. Unknown sections or keys are rejected. Throws
/// ConfigError carrying the line number and key.
ScenarioConfig parse_config(std::string_view text);

ScenarioConfig load_config(const std::filesystem::path& path);

/// Text that parse_config maps back to an equal config. Reals use 17
/// significant digits; unset optional numerics are omitted.
std::string emit_config(const ScenarioConfig& config);

/// Decimal text with 17 significant digits (bit-exact round trip).
std::string format_real(double value);

}  // namespace vw::harness
