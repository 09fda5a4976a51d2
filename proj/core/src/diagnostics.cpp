#include "vortexwave/diagnostics.hpp"

#include "vortexwave/error.hpp"
#include "vortexwave/kernels.hpp"
#include "vortexwave/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace vw::diagnostics {

FitResult fit_line(std::span<const double> t, std::span<const double> y) {
  if (t.size() != y.size()) throw std::invalid_argument("fit_line: size mismatch");
  if (t.size() < 2) throw std::invalid_argument("fit_line: need at least two samples");
  const auto n = static_cast<double>(t.size());
  double mt = 0.0, my = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    mt += t[i];
    my += y[i];
  }
  mt /= n;
  my /= n;
  double stt = 0.0, sty = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    stt += (t[i] - mt) * (t[i] - mt);
    sty += (t[i] - mt) * (y[i] - my);
  }
  FitResult fit;
  fit.samples = t.size();
  fit.slope = stt > 0.0 ? sty / stt : 0.0;
  fit.intercept = my - fit.slope * mt;
  double ss = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * t[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

double predicted_constancy_radius(double t, double R0, double C) {
  if (!(R0 > 0.0 && R0 <= 1.0)) throw DomainError("predicted_constancy_radius: R0 must lie in (0, 1]");
  if (!(C > 0.0)) throw DomainError("predicted_constancy_radius: C must be positive");
  if (!(t >= 0.0)) throw DomainError("predicted_constancy_radius: t must be non-negative");
  // 1 - (1 - ln R0) e^{2Ct} = ln R0 - (e^{2Ct} - 1)(1 - ln R0); exact at t = 0.
  return R0 * std::exp(-std::expm1(2.0 * C * t) * (1.0 - std::log(R0)));
}

FitResult fit_constancy_constant(const Series& rho, double band_floor) {
  if (rho.size() < 5) throw std::invalid_argument("fit_constancy_constant: need at least 5 samples");
  std::vector<double> y;
  y.reserve(rho.size());
  for (double r : rho.value) {
    if (!(r > 0.0)) throw DomainError("fit_constancy_constant: constancy radius reached zero");
    if (r > 1.0) throw DomainError("fit_constancy_constant: constancy radius above 1");
    y.push_back(std::log(1.0 - std::log(r)));
  }
  FitResult fit = fit_line(rho.t, y);
  fit.constant = 0.5 * fit.slope;
  fit.band = std::max(2.0 * fit.residual, band_floor);
  fit.pass = true;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (y[i] > fit.intercept + fit.slope * rho.t[i] + fit.band) fit.pass = false;
  return fit;
}

double constancy_band_floor(const Series& rho, double spacing) {
  const double r = *std::min_element(rho.value.begin(), rho.value.end());
  if (!(r > 0.0)) return std::numeric_limits<double>::infinity();
  return spacing / (r * (1.0 - std::log(r)));
}

double law_radius(const FitResult& fit, double t) {
  return std::exp(1.0 - std::exp(fit.intercept + fit.band + fit.slope * t));
}

bool disk_is_value_constant(const field::MarkerCloud& cloud, PlanePoint center, double radius,
                            double alpha, double tol) {
  const auto omega = cloud.omegas();
  for (std::size_t k = 0; k < cloud.size(); ++k)
    if (norm(cloud.position(k) - center) < radius && std::abs(omega[k] - alpha) > tol) return false;
  return true;
}

FitResult support_growth_fit(const Series& radius, double spacing) {
  if (radius.size() < 5) throw std::invalid_argument("support_growth_fit: need at least 5 samples");
  FitResult fit = fit_line(radius.t, radius.value);
  fit.constant = fit.slope;
  fit.band = 2.0 * spacing;
  fit.pass = true;
  for (std::size_t i = 0; i < radius.size(); ++i)
    if (radius.value[i] - (fit.intercept + fit.slope * radius.t[i]) >= fit.band) fit.pass = false;
  return fit;
}

namespace {

void require_matching(const dynamics::Trajectory& a, const dynamics::Trajectory& b) {
  if (a.snapshots.size() != b.snapshots.size())
    throw std::invalid_argument("twin trajectories have different snapshot counts");
  for (std::size_t k = 0; k < a.snapshots.size(); ++k) {
    const double ta = a.snapshots[k].state.time;
    const double tb = b.snapshots[k].state.time;
    if (std::abs(ta - tb) > 1e-12 * std::max(1.0, std::abs(ta)))
      throw std::invalid_argument("twin trajectories differ in snapshot time at index " + std::to_string(k));
    if (a.snapshots[k].state.vortices.size() != b.snapshots[k].state.vortices.size())
      throw std::invalid_argument("twin trajectories differ in vortex count");
  }
}

}  // namespace

Series twin_divergence(const dynamics::Trajectory& a, const dynamics::Trajectory& b, const field::Grid& grid) {
  require_matching(a, b);
  Series out;
  for (std::size_t k = 0; k < a.snapshots.size(); ++k) {
    const auto& sa = a.snapshots[k].state;
    const auto& sb = b.snapshots[k].state;
    double r = 0.0;
    if (!sa.cloud.empty()) r = field::l2_velocity_diff(sa.cloud, sb.cloud, grid).squared_norm;
    for (std::size_t i = 0; i < sa.vortices.size(); ++i) r += norm2(sa.vortices[i].pos - sb.vortices[i].pos);
    out.push(sa.time, r);
  }
  return out;
}

std::vector<HarmonicSample> harmonic_difference(const dynamics::Trajectory& a, const dynamics::Trajectory& b,
                                                const field::Grid& grid, double alpha, double tol,
                                                int nsamples) {
  require_matching(a, b);
  std::vector<HarmonicSample> out;
  for (std::size_t k = 0; k < a.snapshots.size(); ++k) {
    const auto& sa = a.snapshots[k].state;
    const auto& sb = b.snapshots[k].state;
    if (sa.vortices.empty() || sa.cloud.empty())
      throw std::invalid_argument("harmonic_difference: needs a vortex and markers");
    const PlanePoint mid = (sa.vortices[0].pos + sb.vortices[0].pos) * 0.5;
    const double rho = std::min(field::constancy_radius(sa.cloud, mid, alpha, tol),
                                field::constancy_radius(sb.cloud, mid, alpha, tol));
    HarmonicSample s;
    s.time = sa.time;
    s.radius = 0.25 * rho;
    s.velocity_l2 = std::sqrt(field::l2_velocity_diff(sa.cloud, sb.cloud, grid).squared_norm);
    if (s.radius > 0.0) {
      const field::PlaneField diff = [&](PlanePoint x) {
        return field::induced_velocity(sa.cloud, x) - field::induced_velocity(sb.cloud, x);
      };
      s.defect = field::harmonic_mean_value_defect(diff, mid, s.radius, nsamples);
    } else {
      s.defect = std::numeric_limits<double>::infinity();
    }
    out.push_back(s);
  }
  return out;
}

MarginReport collision_margin(const dynamics::Trajectory& traj, double guard_radius) {
  MarginReport out;
  out.min_margin = std::numeric_limits<double>::infinity();
  for (const auto& snap : traj.snapshots) {
    if (!snap.record.min_vortex_marker_dist)
      throw std::invalid_argument("collision_margin: trajectory has no vortex-marker distances");
    const double m = *snap.record.min_vortex_marker_dist;
    out.margin.push(snap.state.time, m);
    out.min_margin = std::min(out.min_margin, m);
  }
  out.guard_events = traj.guard_events;
  out.pass = out.min_margin > guard_radius && out.guard_events == 0;
  return out;
}

FitResult margin_exponent_fit(std::span<const double> initial, std::span<const double> final_margin,
                              double min_exponent) {
  if (initial.size() != final_margin.size() || initial.size() < 2)
    throw std::invalid_argument("margin_exponent_fit: need matching families of at least two runs");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < initial.size(); ++i) {
    if (!(initial[i] > 0.0) || !(final_margin[i] > 0.0))
      throw DomainError("margin_exponent_fit: margins must be positive");
    x.push_back(std::log(initial[i]));
    y.push_back(std::log(final_margin[i]));
  }
  FitResult fit = fit_line(x, y);
  fit.constant = fit.slope;
  fit.band = min_exponent;
  fit.pass = std::isfinite(fit.slope) && fit.slope >= min_exponent;
  return fit;
}

namespace {

void require_support(const TestFunction& psi, const field::Grid& grid, double t_first, double t_last) {
  const PlanePoint lo = psi.center - PlanePoint{psi.half_width, psi.half_width};
  const PlanePoint hi = psi.center + PlanePoint{psi.half_width, psi.half_width};
  if (!grid.contains(lo) || !grid.contains(hi))
    throw std::invalid_argument("weak_residual: test function support leaves the grid");
  if (psi.t_center - psi.t_half < t_first || psi.t_center + psi.t_half > t_last)
    throw std::invalid_argument("weak_residual: test function support leaves the time horizon");
}

// sum_j G_j (psi_t + (v + H) . grad psi) at one snapshot, with v = K * omega
// by marker quadrature (exact kernel, self term omitted).
double weak_integrand(const dynamics::SimState& s, const TestFunction& psi) {
  const auto strength = s.cloud.strengths();
  const field::SourceView sources = s.cloud.sources();
  std::vector<double> term(s.cloud.size(), 0.0);
  parallel_for(s.cloud.size(), [&](std::size_t j) {
    const PlanePoint x = s.cloud.position(j);
    if (strength[j] == 0.0 || std::abs(x.x1 - psi.center.x1) >= psi.half_width ||
        std::abs(x.x2 - psi.center.x2) >= psi.half_width)
      return;
    PlanePoint u = field::sum_point_velocity(sources, x);
    for (const auto& v : s.vortices) u += kernels::biot_savart(x - v.pos) * v.intensity;
    term[j] = strength[j] * (psi.time_derivative(s.time, x) + dot(u, psi.gradient(s.time, x)));
  });
  double sum = 0.0;
  for (double t : term) sum += t;
  return sum;
}

}  // namespace

double weak_residual_signed(const dynamics::Trajectory& traj, const TestFunction& psi, const field::Grid& grid) {
  if (traj.snapshots.empty()) throw std::invalid_argument("weak_residual: empty trajectory");
  if (psi.amplitude == 0.0) return 0.0;
  const double t_first = traj.snapshots.front().state.time;
  const double t_last = traj.snapshots.back().state.time;
  require_support(psi, grid, t_first, t_last);

  const auto& s0 = traj.snapshots.front().state;
  const auto strength0 = s0.cloud.strengths();
  double initial = 0.0;
  for (std::size_t j = 0; j < s0.cloud.size(); ++j) initial += strength0[j] * psi.value(s0.time, s0.cloud.position(j));

  double integral = 0.0;
  double prev_t = t_first;
  double prev_i = weak_integrand(s0, psi);
  for (std::size_t k = 1; k < traj.snapshots.size(); ++k) {
    const auto& s = traj.snapshots[k].state;
    // Zero outside the bump's time support.
    const double cur = (s.time > psi.t_center - psi.t_half && s.time < psi.t_center + psi.t_half)
                           ? weak_integrand(s, psi)
                           : 0.0;
    integral += 0.5 * (s.time - prev_t) * (prev_i + cur);
    prev_t = s.time;
    prev_i = cur;
  }
  return initial + integral;
}

double weak_residual(const dynamics::Trajectory& traj, const TestFunction& psi, const field::Grid& grid) {
  return std::abs(weak_residual_signed(traj, psi, grid));
}

namespace {

double record_norm(const dynamics::DiagnosticsRecord& r, double p) {
  std::optional<double> v;
  if (p == 1.0) v = r.l1;
  else if (p == 2.0) v = r.l2;
  else if (std::isinf(p)) v = r.linf;
  else throw std::invalid_argument("lp_drift: p must be 1, 2 or infinity");
  if (!v) throw std::invalid_argument("lp_drift: trajectory was recorded without grid norms");
  return *v;
}

}  // namespace

double lp_drift(const dynamics::Trajectory& traj, double p) {
  if (traj.snapshots.empty()) return 0.0;
  const double n0 = record_norm(traj.snapshots.front().record, p);
  double drift = 0.0;
  for (const auto& s : traj.snapshots) drift = std::max(drift, std::abs(record_norm(s.record, p) - n0) / n0);
  return drift;
}

double marker_lp_drift(const dynamics::Trajectory& traj, double p) {
  if (traj.snapshots.empty()) return 0.0;
  const double n0 = field::marker_lp_norm(traj.snapshots.front().state.cloud, p);
  double drift = 0.0;
  for (const auto& s : traj.snapshots)
    drift = std::max(drift, std::abs(field::marker_lp_norm(s.state.cloud, p) - n0) / n0);
  return drift;
}

HoleReport hole_radius(const dynamics::Trajectory& traj, double tol, double spacing) {
  HoleReport out;
  for (const auto& snap : traj.snapshots) {
    const auto& s = snap.state;
    if (s.mode != Mode::fixed) throw std::invalid_argument("hole_radius: trajectory is not in fixed mode");
    const PlanePoint z = s.vortices.front().pos;
    const auto omega = s.cloud.omegas();
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < s.cloud.size(); ++k)
      if (std::abs(omega[k]) > tol) m = std::min(m, norm(s.cloud.position(k) - z));
    out.radius.push(s.time, m);
  }
  out.fit = fit_hole_law(out.radius, spacing);
  return out;
}

FitResult fit_hole_law(const Series& radius, double spacing) {
  std::vector<double> y;
  for (double r : radius.value) {
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("fit_hole_law: radii must be positive and finite");
    y.push_back(std::log(r));
  }
  FitResult fit = fit_line(radius.t, y);
  fit.constant = -fit.slope;
  fit.band = spacing;
  fit.pass = true;
  for (std::size_t i = 0; i < radius.size(); ++i)
    if (radius.value[i] < std::exp(fit.intercept + fit.slope * radius.t[i]) - spacing) fit.pass = false;
  return fit;
}

}  // namespace vw::diagnostics
