#pragma once

#include "vortexwave/field.hpp"
#include "vortexwave/scenario.hpp"

#include <atomic>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace vw::dynamics {

/// Below this separation two point vortices are treated as collided.
inline constexpr double kCollisionDistance = 1e-10;

struct SimState {
  double time = 0.0;
  field::MarkerCloud cloud;
  std::vector<PointVortexState> vortices;
  Mode mode = Mode::moving;
  /// Radius inside which the vortex field on markers switches to K_eps.
  double guard_radius = 0.0;

  friend bool operator==(const SimState&, const SimState&) = default;
};

/// Counts evaluations of the vortex field inside the guard radius.
class GuardCounter {
 public:
  void add(std::uint64_t n = 1) { count_.fetch_add(n, std::memory_order_relaxed); }
  std::uint64_t count() const { return count_.load(std::memory_order_relaxed); }

 private:
  std::atomic<std::uint64_t> count_{0};
};

/// v(x) + sum_j d_j K_eps(x - z_j) with eps = guard_radius. K_eps equals the
/// exact kernel beyond the guard radius; evaluations inside are counted.
PlanePoint total_field(const SimState& state, PlanePoint x, GuardCounter* guard = nullptr);

/// Velocity of vortex i: cloud velocity at z_i plus exact interactions with
/// the other vortices. Throws CollisionError below kCollisionDistance.
PlanePoint vortex_rhs(const SimState& state, std::size_t i);

/// Velocity of marker k: total_field at its position.
PlanePoint marker_rhs(const SimState& state, std::size_t k, GuardCounter* guard = nullptr);

/// Classical RK4 over all markers and the non-pinned vortices. Carried values
/// are untouched. Negative dt integrates backwards.
SimState rk4_step(const SimState& state, double dt, GuardCounter* guard = nullptr);

/// Equal-area lattice markers (spacing h, anchored at each patch center with
/// cell-centred offsets) filling every patch in patch order.
SimState init_scenario(const ScenarioConfig& config);

/// Initial states of a twin pair; the second carries the configured
/// perturbation (vortex offset eta along x1, or seeded marker jitter of size eta).
std::pair<SimState, SimState> init_twin(const ScenarioConfig& config);

struct DiagnosticsRecord {
  double time = 0.0;
  std::vector<double> constancy_radius;  // per vortex when enabled
  double support_radius = 0.0;
  std::optional<double> l1;
  std::optional<double> l2;
  std::optional<double> linf;
  std::optional<double> twin_r;
  std::optional<double> min_vortex_marker_dist;
  std::optional<double> min_vortex_pair_dist;
  std::optional<double> hole_radius;
  std::uint64_t guard_event_count = 0;

  friend bool operator==(const DiagnosticsRecord&, const DiagnosticsRecord&) = default;
};

/// Per-snapshot measurements for the diagnostics enabled in config.
DiagnosticsRecord measure(const SimState& state, const ScenarioConfig& config,
                          std::uint64_t guard_events);

struct Snapshot {
  SimState state;
  DiagnosticsRecord record;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;
  std::uint64_t guard_events = 0;
  std::size_t steps = 0;
  double dt = 0.0;

  std::vector<double> times() const;
};

/// Integrates to t_end with steps of (at most) dt, snapshotting every
/// output_stride steps and at t_end. Throws SimulationError naming the step on
/// collision or non-finite positions.
Trajectory run(const ScenarioConfig& config);
Trajectory run_from(SimState initial, const ScenarioConfig& config);

}  // namespace vw::dynamics
