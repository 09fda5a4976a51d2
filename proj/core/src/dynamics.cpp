#include "vortexwave/dynamics.hpp"

#include "vortexwave/error.hpp"
#include "vortexwave/kernels.hpp"
#include "vortexwave/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>

namespace vw::dynamics {

namespace {

PlanePoint vortex_part(std::span<const PointVortexState> vortices, PlanePoint x, double guard_radius,
                       std::uint64_t& inside) {
  PlanePoint sum;
  const double g2 = guard_radius * guard_radius;
  for (const PointVortexState& v : vortices) {
    const PlanePoint d = x - v.pos;
    if (norm2(d) < g2) ++inside;
    sum += kernels::regularized_kernel(d, guard_radius) * v.intensity;
  }
  return sum;
}

PlanePoint cloud_part(const SimState& state, PlanePoint x) {
  if (state.cloud.empty()) return {};
  return field::sum_blob_velocity(state.cloud.sources(), x);
}

struct Rates {
  std::vector<double> u;
  std::vector<double> v;
  std::vector<PlanePoint> z;
};

Rates evaluate_rates(const SimState& state, GuardCounter* guard) {
  const std::size_t n = state.cloud.size();
  Rates r{std::vector<double>(n), std::vector<double>(n), {}};
  parallel_for(n, [&](std::size_t k) {
    std::uint64_t inside = 0;
    const PlanePoint p = state.cloud.position(k);
    const PlanePoint w = cloud_part(state, p) + vortex_part(state.vortices, p, state.guard_radius, inside);
    r.u[k] = w.x1;
    r.v[k] = w.x2;
    if (inside > 0 && guard != nullptr) guard->add(inside);
  });
  if (state.mode != Mode::fixed) {
    r.z.reserve(state.vortices.size());
    for (std::size_t i = 0; i < state.vortices.size(); ++i) r.z.push_back(vortex_rhs(state, i));
  } else {
    r.z.assign(state.vortices.size(), PlanePoint{});
  }
  return r;
}

SimState advanced(const SimState& base, const Rates& rates, double h, double time) {
  const std::size_t n = base.cloud.size();
  std::vector<double> x(n), y(n);
  const auto x0 = base.cloud.xs();
  const auto y0 = base.cloud.ys();
  for (std::size_t k = 0; k < n; ++k) {
    x[k] = x0[k] + h * rates.u[k];
    y[k] = y0[k] + h * rates.v[k];
  }
  SimState out{time, base.cloud.moved(x, y), base.vortices, base.mode, base.guard_radius};
  if (base.mode != Mode::fixed)
    for (std::size_t i = 0; i < out.vortices.size(); ++i) out.vortices[i].pos += rates.z[i] * h;
  return out;
}

double combine(double x0, double dt, double k1, double k2, double k3, double k4) {
  return x0 + (dt / 6.0) * ((k1 + 2.0 * k2) + (2.0 * k3 + k4));
}

}  // namespace

PlanePoint total_field(const SimState& state, PlanePoint x, GuardCounter* guard) {
  std::uint64_t inside = 0;
  const PlanePoint w = cloud_part(state, x) + vortex_part(state.vortices, x, state.guard_radius, inside);
  if (inside > 0 && guard != nullptr) guard->add(inside);
  return w;
}

PlanePoint vortex_rhs(const SimState& state, std::size_t i) {
  if (state.mode == Mode::fixed) throw std::logic_error("vortex_rhs: the vortex is pinned in fixed mode");
  if (i >= state.vortices.size()) throw std::out_of_range("vortex_rhs: vortex index out of range");
  const PlanePoint zi = state.vortices[i].pos;
  PlanePoint w = cloud_part(state, zi);
  for (std::size_t j = 0; j < state.vortices.size(); ++j) {
    if (j == i) continue;
    const PlanePoint d = zi - state.vortices[j].pos;
    if (norm(d) < kCollisionDistance)
      throw CollisionError("vortices " + std::to_string(i) + " and " + std::to_string(j) + " collided");
    w += kernels::biot_savart(d) * state.vortices[j].intensity;
  }
  return w;
}

PlanePoint marker_rhs(const SimState& state, std::size_t k, GuardCounter* guard) {
  return total_field(state, state.cloud.position(k), guard);
}

SimState rk4_step(const SimState& state, double dt, GuardCounter* guard) {
  const Rates k1 = evaluate_rates(state, guard);
  const Rates k2 = evaluate_rates(advanced(state, k1, 0.5 * dt, state.time + 0.5 * dt), guard);
  const Rates k3 = evaluate_rates(advanced(state, k2, 0.5 * dt, state.time + 0.5 * dt), guard);
  const Rates k4 = evaluate_rates(advanced(state, k3, dt, state.time + dt), guard);

  const std::size_t n = state.cloud.size();
  std::vector<double> x(n), y(n);
  const auto x0 = state.cloud.xs();
  const auto y0 = state.cloud.ys();
  for (std::size_t k = 0; k < n; ++k) {
    x[k] = combine(x0[k], dt, k1.u[k], k2.u[k], k3.u[k], k4.u[k]);
    y[k] = combine(y0[k], dt, k1.v[k], k2.v[k], k3.v[k], k4.v[k]);
  }
  SimState out{state.time + dt, state.cloud.moved(x, y), state.vortices, state.mode, state.guard_radius};
  if (state.mode != Mode::fixed) {
    for (std::size_t i = 0; i < out.vortices.size(); ++i) {
      PlanePoint& z = out.vortices[i].pos;
      z.x1 = combine(z.x1, dt, k1.z[i].x1, k2.z[i].x1, k3.z[i].x1, k4.z[i].x1);
      z.x2 = combine(z.x2, dt, k1.z[i].x2, k2.z[i].x2, k3.z[i].x2, k4.z[i].x2);
    }
  }
  return out;
}

SimState init_scenario(const ScenarioConfig& config) {
  validate(config);
  const ResolvedNumerics numerics = resolve_numerics(config);
  const double h = numerics.h;
  std::vector<field::Marker> markers;
  for (const Patch& patch : config.patches) {
    const auto n = static_cast<long>(std::ceil(patch.r_outer / h)) + 1;
    for (long j = -n; j < n; ++j) {
      for (long i = -n; i < n; ++i) {
        const PlanePoint p =
            patch.center + PlanePoint{(static_cast<double>(i) + 0.5) * h, (static_cast<double>(j) + 0.5) * h};
        if (patch.contains(p)) markers.push_back({p, patch.value_at(p), h * h});
      }
    }
  }
  SimState state;
  state.time = 0.0;
  state.cloud = field::MarkerCloud(markers, numerics.blob_delta);
  state.vortices = config.vortices;
  state.mode = config.mode;
  state.guard_radius = numerics.r_guard;
  return state;
}

std::pair<SimState, SimState> init_twin(const ScenarioConfig& config) {
  SimState a = init_scenario(config);
  SimState b = a;
  if (config.eta == 0.0) return {std::move(a), std::move(b)};
  if (config.perturbation == Perturbation::vortex_offset) {
    if (b.vortices.empty()) throw ConfigError("scenario.perturbation", 0, "vortex offset needs a vortex");
    if (b.mode == Mode::fixed)
      throw ConfigError("scenario.perturbation", 0, "the fixed-mode vortex is pinned; use jitter");
    b.vortices[0].pos.x1 += config.eta;
  } else {
    std::mt19937_64 rng(config.seed);
    // 53-bit uniform in [-1, 1) built directly from the engine output.
    auto uniform = [&rng] { return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0; };
    std::vector<double> x(b.cloud.xs().begin(), b.cloud.xs().end());
    std::vector<double> y(b.cloud.ys().begin(), b.cloud.ys().end());
    for (std::size_t k = 0; k < x.size(); ++k) {
      x[k] += config.eta * uniform();
      y[k] += config.eta * uniform();
    }
    b.cloud = b.cloud.moved(x, y);
  }
  return {std::move(a), std::move(b)};
}

DiagnosticsRecord measure(const SimState& state, const ScenarioConfig& config, std::uint64_t guard_events) {
  DiagnosticsRecord rec;
  rec.time = state.time;
  rec.guard_event_count = guard_events;
  const auto& diag = config.diagnostics;
  const field::MarkerCloud& cloud = state.cloud;

  if (diag.constancy) {
    const auto targets = constancy_targets(config);
    for (std::size_t i = 0; i < state.vortices.size(); ++i)
      rec.constancy_radius.push_back(
          field::constancy_radius(cloud, state.vortices[i].pos, targets[i].alpha, diag.constancy_tol));
  }
  const PlanePoint support_center = config.patches.empty() ? PlanePoint{} : config.patches.front().center;
  rec.support_radius = field::support_radius(cloud, support_center, diag.support_tol);

  if (diag.norms && !cloud.empty()) {
    const field::ScalarField omega = field::deposit_vorticity(cloud, resolve_numerics(config).grid);
    rec.l1 = field::grid_lp_norm(omega, 1.0);
    rec.l2 = field::grid_lp_norm(omega, 2.0);
    rec.linf = field::grid_lp_norm(omega, std::numeric_limits<double>::infinity());
  }
  if (!state.vortices.empty() && !cloud.empty()) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& v : state.vortices)
      for (std::size_t k = 0; k < cloud.size(); ++k) m = std::min(m, norm(cloud.position(k) - v.pos));
    rec.min_vortex_marker_dist = m;
  }
  if (state.vortices.size() >= 2) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < state.vortices.size(); ++i)
      for (std::size_t j = i + 1; j < state.vortices.size(); ++j)
        m = std::min(m, norm(state.vortices[i].pos - state.vortices[j].pos));
    rec.min_vortex_pair_dist = m;
  }
  if (state.mode == Mode::fixed && !cloud.empty()) {
    const PlanePoint z = state.vortices.front().pos;
    const auto omega = cloud.omegas();
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < cloud.size(); ++k)
      if (std::abs(omega[k]) > diag.hole_tol) m = std::min(m, norm(cloud.position(k) - z));
    if (std::isfinite(m)) rec.hole_radius = m;
  }
  return rec;
}

std::vector<double> Trajectory::times() const {
  std::vector<double> t;
  t.reserve(snapshots.size());
  for (const auto& s : snapshots) t.push_back(s.state.time);
  return t;
}

namespace {

bool all_finite(const SimState& s) {
  for (double v : s.cloud.xs())
    if (!std::isfinite(v)) return false;
  for (double v : s.cloud.ys())
    if (!std::isfinite(v)) return false;
  for (const auto& v : s.vortices)
    if (!is_finite(v.pos)) return false;
  return true;
}

}  // namespace

Trajectory run(const ScenarioConfig& config) { return run_from(init_scenario(config), config); }

Trajectory run_from(SimState initial, const ScenarioConfig& config) {
  validate(config);
  const ResolvedNumerics numerics = resolve_numerics(config);
  const double t_end = numerics.t_end;
  std::size_t steps = 0;
  double dt = numerics.dt;
  if (t_end > 0.0) {
    const double ratio = t_end / numerics.dt;
    steps = static_cast<std::size_t>(std::ceil(ratio * (1.0 - 1e-12)));
    steps = std::max<std::size_t>(steps, 1);
    dt = t_end / static_cast<double>(steps);
  }

  Trajectory traj;
  traj.steps = steps;
  traj.dt = dt;
  GuardCounter guard;
  SimState state = std::move(initial);
  const double t0 = state.time;

  auto record = [&](std::size_t step) {
    try {
      traj.snapshots.push_back({state, measure(state, config, guard.count())});
    } catch (const std::out_of_range& e) {
      throw SimulationError(step, state.time, e.what());
    }
  };
  record(0);
  for (std::size_t step = 1; step <= steps; ++step) {
    try {
      state = rk4_step(state, dt, &guard);
    } catch (const CollisionError& e) {
      throw SimulationError(step, state.time, std::string("collision: ") + e.what());
    }
    state.time = t0 + static_cast<double>(step) * dt;
    if (!all_finite(state)) throw SimulationError(step, state.time, "non-finite position");
    if (step % config.output_stride == 0 || step == steps) record(step);
  }
  traj.guard_events = guard.count();
  return traj;
}

}  // namespace vw::dynamics
