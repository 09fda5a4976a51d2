#pragma once

#include "vortexwave/dynamics.hpp"
#include "vortexwave/field.hpp"
#include "vortexwave/scenario.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace vw::diagnostics {

/// (t, value) samples.
struct Series {
  std::vector<double> t;
  std::vector<double> value;

  std::size_t size() const { return t.size(); }
  void push(double time, double v) {
    t.push_back(time);
    value.push_back(v);
  }
};

/// Least-squares line value ~ intercept + slope * t plus a pass flag whose
/// meaning depends on the checker that produced it.
struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root mean square of the fit residuals
  std::size_t samples = 0;
  /// Checker specific: C for the constancy law, B for margin exponents.
  double constant = 0.0;
  /// Tolerance band the pass rule used.
  double band = 0.0;
  bool pass = false;
};

FitResult fit_line(std::span<const double> t, std::span<const double> y);

/// exp(1 - (1 - ln R0) e^{2 C t}); requires 0 < R0 <= 1, C > 0, t >= 0.
double predicted_constancy_radius(double t, double R0, double C);

/// Least-squares fit of y = ln(1 - ln rho) against t; constant = slope / 2.
/// Passes when every sample lies below the fitted line plus
/// band = max(2 * rms residual, band_floor). Needs >= 5 samples with
/// rho in (0, 1]; throws DomainError when rho reaches 0 (constancy lost).
FitResult fit_constancy_constant(const Series& rho, double band_floor = 1e-9);

/// Height of the band floor corresponding to `spacing` worth of radius at the
/// smallest measured rho.
double constancy_band_floor(const Series& rho, double spacing);

/// Radius of the constancy disk the fitted upper line allows at time t.
double law_radius(const FitResult& fit, double t);

/// True when every marker strictly within radius of center carries alpha to tol.
bool disk_is_value_constant(const field::MarkerCloud& cloud, PlanePoint center, double radius,
                            double alpha, double tol);

/// Linear fit; passes when no sample exceeds the line by 2 * spacing or more.
FitResult support_growth_fit(const Series& radius, double spacing);

/// r(t) = ||v_A - v_B||^2 + sum_i |zA_i - zB_i|^2 per snapshot. Throws
/// std::invalid_argument when snapshot times or vortex counts differ.
Series twin_divergence(const dynamics::Trajectory& a, const dynamics::Trajectory& b,
                       const field::Grid& grid);

struct HarmonicSample {
  double time = 0.0;
  double radius = 0.0;  // circle radius used (joint constancy radius / 4)
  double defect = 0.0;
  double velocity_l2 = 0.0;  // ||v_A - v_B|| on the grid
};

/// Mean-value defect of v_A - v_B on circles about the midpoint of the first
/// vortices, radius a quarter of the joint constancy radius.
std::vector<HarmonicSample> harmonic_difference(const dynamics::Trajectory& a,
                                                const dynamics::Trajectory& b,
                                                const field::Grid& grid, double alpha, double tol,
                                                int nsamples = 64);

struct MarginReport {
  Series margin;
  double min_margin = 0.0;
  std::uint64_t guard_events = 0;
  bool pass = false;
};

/// Minimum marker-to-vortex distance per snapshot. Passes when it stays above
/// guard_radius and no guard event occurred.
MarginReport collision_margin(const dynamics::Trajectory& traj, double guard_radius);

/// Fit ln(final margin) = ln A + B ln(initial margin) across a family of runs;
/// constant = B. Passes when B is finite and at least min_exponent.
FitResult margin_exponent_fit(std::span<const double> initial, std::span<const double> final_margin,
                              double min_exponent = 0.8);

/// Signed weak-form residual
///   sum_j G_j psi(0, x_j(0)) + int sum_j G_j (psi_t + (v + H) . grad psi) dt
/// with marker quadrature in space (v from the exact kernel, self term
/// omitted) and the trapezoid rule over snapshots.
/// Throws std::invalid_argument when psi's support leaves the grid or the
/// trajectory's time span.
double weak_residual_signed(const dynamics::Trajectory& traj, const TestFunction& psi,
                            const field::Grid& grid);
double weak_residual(const dynamics::Trajectory& traj, const TestFunction& psi, const field::Grid& grid);

/// max over snapshots of |norm(t) - norm(0)| / norm(0) for grid norms, p in {1, 2, inf}.
double lp_drift(const dynamics::Trajectory& traj, double p);

/// Same drift measured on marker-level norms (sum |omega|^p weight)^(1/p).
double marker_lp_drift(const dynamics::Trajectory& traj, double p);

struct HoleReport {
  Series radius;
  FitResult fit;  // ln(radius) = intercept + slope * t
};

/// Inner radius of the support about the pinned vortex per snapshot.
HoleReport hole_radius(const dynamics::Trajectory& traj, double tol, double spacing);

/// Fit ln r against t; passes when r_i >= exp(intercept + slope t_i) - spacing.
FitResult fit_hole_law(const Series& radius, double spacing);

}  // namespace vw::diagnostics
