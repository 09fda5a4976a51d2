#include "vortexwave/scenario.hpp"

#include "vortexwave/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vw {

bool Patch::contains(PlanePoint x) const {
  const double r = norm(x - center);
  return r >= r_inner && r < r_outer;
}

double Patch::value_at(PlanePoint x) const {
  if (kind != PatchKind::profile) return alpha;
  const PlanePoint d = x - center;
  const double r = norm(d);
  const double theta = std::atan2(d.x2, d.x1);
  return alpha + slope * (r - r_inner) + amplitude * std::cos(wavenumber * theta);
}

namespace {

double bump(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  const double q = 1.0 - s * s;
  return q * q * q * q;
}

double bump_derivative(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  const double q = 1.0 - s * s;
  return -8.0 * s * q * q * q;
}

}  // namespace

double TestFunction::value(double t, PlanePoint x) const {
  return amplitude * bump((t - t_center) / t_half) * bump((x.x1 - center.x1) / half_width) *
         bump((x.x2 - center.x2) / half_width);
}

double TestFunction::time_derivative(double t, PlanePoint x) const {
  return amplitude * bump_derivative((t - t_center) / t_half) / t_half *
         bump((x.x1 - center.x1) / half_width) * bump((x.x2 - center.x2) / half_width);
}

PlanePoint TestFunction::gradient(double t, PlanePoint x) const {
  const double bt = amplitude * bump((t - t_center) / t_half);
  const double s1 = (x.x1 - center.x1) / half_width;
  const double s2 = (x.x2 - center.x2) / half_width;
  return {bt * bump_derivative(s1) / half_width * bump(s2), bt * bump(s1) * bump_derivative(s2) / half_width};
}

ResolvedNumerics resolve_numerics(const ScenarioConfig& config) {
  const NumericsConfig& n = config.numerics;
  ResolvedNumerics out;
  const double default_h = config.patches.empty() ? 0.01 : config.patches.front().r_outer / 50.0;
  out.h = n.h.value_or(default_h);
  out.blob_delta = n.blob_delta.value_or(2.0 * out.h);
  out.r_guard = n.r_guard.value_or(0.5 * out.h);
  out.dt = n.dt.value_or(1e-3);
  out.t_end = n.t_end;

  PlanePoint center;
  double extent = 1.0;
  if (!config.patches.empty()) {
    double lo1 = std::numeric_limits<double>::infinity(), lo2 = lo1;
    double hi1 = -lo1, hi2 = -lo1;
    for (const Patch& p : config.patches) {
      lo1 = std::min(lo1, p.center.x1 - p.r_outer);
      lo2 = std::min(lo2, p.center.x2 - p.r_outer);
      hi1 = std::max(hi1, p.center.x1 + p.r_outer);
      hi2 = std::max(hi2, p.center.x2 + p.r_outer);
    }
    center = {0.5 * (lo1 + hi1), 0.5 * (lo2 + hi2)};
    extent = 0.0;
    for (const Patch& p : config.patches) extent = std::max(extent, norm(p.center - center) + p.r_outer);
  }
  center = n.grid_center.value_or(center);
  const double spacing = n.grid_spacing.value_or(2.0 * out.h);
  const double half_width = n.grid_half_width.value_or(4.0 * extent);
  out.grid = field::Grid::centered(center, half_width, spacing);
  return out;
}

ScenarioConfig with_resolved_defaults(const ScenarioConfig& config) {
  const ResolvedNumerics r = resolve_numerics(config);
  ScenarioConfig out = config;
  out.numerics.h = r.h;
  out.numerics.blob_delta = r.blob_delta;
  out.numerics.r_guard = r.r_guard;
  out.numerics.dt = r.dt;
  out.numerics.grid_spacing = config.numerics.grid_spacing.value_or(r.grid.spacing);
  const double half = 0.5 * static_cast<double>(r.grid.nx - 1) * r.grid.spacing;
  out.numerics.grid_half_width = config.numerics.grid_half_width.value_or(half);
  out.numerics.grid_center =
      config.numerics.grid_center.value_or(PlanePoint{r.grid.origin.x1 + half, r.grid.origin.x2 + half});
  if (out.diagnostics.bumps.empty()) out.diagnostics.bumps = default_bump_battery(config);
  return out;
}

namespace {

bool patches_overlap(const Patch& a, const Patch& b) {
  const double d = norm(a.center - b.center);
  if (d <= 1e-12) return a.r_inner < b.r_outer && b.r_inner < a.r_outer;
  if (d >= a.r_outer + b.r_outer) return false;
  if (d + a.r_outer <= b.r_inner || d + b.r_outer <= a.r_inner) return false;
  return true;
}

void require(bool ok, const std::string& key, const std::string& message) {
  if (!ok) throw ConfigError(key, 0, key + ": " + message);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

void validate(const ScenarioConfig& config) {
  const NumericsConfig& n = config.numerics;
  auto positive_if_set = [](const std::optional<double>& v, const std::string& key) {
    if (v) require(finite(*v) && *v > 0.0, key, "must be positive and finite");
  };
  positive_if_set(n.h, "numerics.h");
  positive_if_set(n.blob_delta, "numerics.blob_delta");
  positive_if_set(n.r_guard, "numerics.r_guard");
  positive_if_set(n.dt, "numerics.dt");
  positive_if_set(n.grid_spacing, "numerics.grid_spacing");
  positive_if_set(n.grid_half_width, "numerics.grid_half_width");
  require(finite(n.t_end) && n.t_end >= 0.0, "numerics.t_end", "must be non-negative and finite");
  if (n.blob_delta) require(*n.blob_delta <= 1.0, "numerics.blob_delta", "must not exceed 1");
  if (n.r_guard) require(*n.r_guard <= 1.0, "numerics.r_guard", "must not exceed 1");
  require(config.output_stride >= 1, "output.stride", "must be at least 1");
  require(finite(config.eta) && config.eta >= 0.0, "scenario.eta", "must be non-negative");

  for (std::size_t i = 0; i < config.patches.size(); ++i) {
    const Patch& p = config.patches[i];
    const std::string key = "scenario.patch[" + std::to_string(i) + "]";
    require(is_finite(p.center) && finite(p.alpha) && finite(p.slope) && finite(p.amplitude), key,
            "values must be finite");
    require(p.r_inner >= 0.0 && p.r_outer > p.r_inner, key, "radii must satisfy 0 <= r_inner < r_outer");
    if (p.kind == PatchKind::disk) require(p.r_inner == 0.0, key, "disk has no inner radius");
    for (std::size_t j = 0; j < i; ++j)
      require(!patches_overlap(config.patches[j], p), key,
              "overlaps scenario.patch[" + std::to_string(j) + "]");
  }

  for (std::size_t i = 0; i < config.vortices.size(); ++i) {
    const auto& v = config.vortices[i];
    require(is_finite(v.pos) && finite(v.intensity), "vortices.vortex[" + std::to_string(i) + "]",
            "values must be finite");
  }
  if (config.mode == Mode::fixed) {
    require(config.vortices.size() == 1, "vortices", "fixed mode needs exactly one vortex");
    require(config.vortices[0].pos == PlanePoint{}, "vortices.vortex[0]", "fixed mode pins the vortex at the origin");
  }
  if (config.mode == Mode::multi)
    require(config.vortices.size() >= 2, "vortices", "multi mode needs at least two vortices");
  if (config.mode == Mode::moving)
    require(config.vortices.size() <= 1, "vortices", "moving mode takes at most one vortex; use multi");

  const auto& d = config.diagnostics;
  require(d.constancy_tol > 0.0, "diagnostics.constancy_tol", "must be positive");
  require(d.support_tol >= 0.0, "diagnostics.support_tol", "must be non-negative");
  require(d.hole_tol >= 0.0, "diagnostics.hole_tol", "must be non-negative");
  for (std::size_t i = 0; i < d.bumps.size(); ++i) {
    const auto& b = d.bumps[i];
    require(b.half_width > 0.0 && b.t_half > 0.0, "diagnostics.bump[" + std::to_string(i) + "]",
            "scales must be positive");
  }
  if (d.constancy) (void)constancy_targets(config);
}

std::vector<ConstancyTarget> constancy_targets(const ScenarioConfig& config) {
  std::vector<ConstancyTarget> out;
  for (std::size_t i = 0; i < config.vortices.size(); ++i) {
    const PlanePoint z = config.vortices[i].pos;
    const Patch* host = nullptr;
    for (const Patch& p : config.patches)
      if (p.is_constant() && p.contains(z)) host = &p;
    const std::string key = "vortices.vortex[" + std::to_string(i) + "]";
    require(host != nullptr, key, "constancy diagnostic needs the vortex inside a constant patch");
    const double r = norm(z - host->center);
    const double radius = std::min(host->r_outer - r, host->r_inner > 0.0 ? r - host->r_inner : host->r_outer);
    require(radius > 0.0, key, "vortex lies on the boundary of its patch");
    out.push_back({host->alpha, radius});
  }
  return out;
}

std::vector<TestFunction> default_bump_battery(const ScenarioConfig& config) {
  PlanePoint c;
  double a = 0.5;
  if (!config.patches.empty()) {
    c = config.patches.front().center;
    a = config.patches.front().r_outer;
  }
  const double t_end = config.numerics.t_end > 0.0 ? config.numerics.t_end : 1.0;
  const double tc = 0.5 * t_end;
  const double th = 0.4 * t_end;
  return {
      {c, 0.6 * a, tc, th, 1.0},
      {c + PlanePoint{0.5 * a, 0.0}, 0.3 * a, tc, th, 1.0},
      {c + PlanePoint{0.0, -0.6 * a}, 0.4 * a, tc, th, 1.0},
      {c + PlanePoint{-0.6 * a, 0.6 * a}, 0.5 * a, tc, th, 1.0},
      {c + PlanePoint{0.7 * a, 0.7 * a}, 0.4 * a, tc, th, 1.0},
  };
}

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::moving: return "moving";
    case Mode::fixed: return "fixed";
    case Mode::multi: return "multi";
  }
  return "?";
}

std::string to_string(PatchKind kind) {
  switch (kind) {
    case PatchKind::disk: return "disk";
    case PatchKind::annulus: return "annulus";
    case PatchKind::profile: return "profile";
  }
  return "?";
}

std::string to_string(Perturbation p) {
  return p == Perturbation::vortex_offset ? "vortex" : "jitter";
}

}  // namespace vw
