#pragma once

// Independent reference computations used by the tests. None of these call
// into the library's summation or kernel code.

#include "vortexwave/plane_point.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

namespace vw::oracle {

/// Tangential speed of a uniform disk (value omega, radius a, centered at the
/// origin) at distance r < a, by quadrature of the Biot-Savart integral in
/// polar coordinates centred on the evaluation point. The integrand is smooth
/// and periodic in the angle, so the trapezoid rule converges spectrally.
inline double disk_speed_quadrature(double r, double a, double omega, int angles = 4096) {
  double sum = 0.0;
  for (int k = 0; k < angles; ++k) {
    const double theta = 2.0 * std::numbers::pi * (k + 0.5) / angles;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double reach = -r * c + std::sqrt(a * a - r * r * s * s);
    sum += reach * c;
  }
  const double integral = sum * 2.0 * std::numbers::pi / angles;
  return -omega * integral / (2.0 * std::numbers::pi);
}

/// Tangential speed of a uniform disk at any radius (closed form).
inline double rankine_speed(double r, double a, double omega) {
  return r < a ? 0.5 * omega * r : 0.5 * omega * a * a / r;
}

/// int_0^inf |u_A(r) - u_B(r)|^2 2 pi r dr for two concentric radial fields,
/// composite Simpson on [0, r_max] (both fields agree beyond r_max).
inline double radial_l2_diff(const std::function<double(double)>& ua, const std::function<double(double)>& ub,
                             double r_max, int intervals = 200000) {
  const double h = r_max / intervals;
  auto f = [&](double r) {
    const double d = ua(r) - ub(r);
    return d * d * 2.0 * std::numbers::pi * r;
  };
  double sum = f(0.0) + f(r_max);
  for (int i = 1; i < intervals; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return sum * h / 3.0;
}

/// Positions of an equal-intensity co-rotating pair started at c -/+ (rho, 0).
struct PairState {
  PlanePoint first;
  PlanePoint second;
};
inline PairState corotating_pair(PlanePoint c, double rho, double d, double t) {
  const double rate = d / (4.0 * std::numbers::pi * rho * rho);
  const double angle = rate * t;
  const PlanePoint arm{rho * std::cos(angle), rho * std::sin(angle)};
  return {{c.x1 - arm.x1, c.x2 - arm.x2}, {c.x1 + arm.x1, c.x2 + arm.x2}};
}
inline double corotating_period(double rho, double d) {
  return 8.0 * std::numbers::pi * std::numbers::pi * rho * rho / d;
}

/// Naive blob sum in plain loop order (reference for the vectorised path).
inline PlanePoint naive_blob_sum(std::span<const double> x, std::span<const double> y,
                                 std::span<const double> strength, double delta, PlanePoint p) {
  long double u = 0.0L, v = 0.0L;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const long double dx = p.x1 - x[j];
    const long double dy = p.x2 - y[j];
    const long double denom = 2.0L * std::numbers::pi_v<long double> * (dx * dx + dy * dy + delta * delta);
    u += -dy * strength[j] / denom;
    v += dx * strength[j] / denom;
  }
  return {static_cast<double>(u), static_cast<double>(v)};
}

/// Fourth-order central-difference divergence of a planar field.
inline double fd_divergence(const std::function<PlanePoint(PlanePoint)>& f, PlanePoint x, double h) {
  const auto dx = (f({x.x1 - 2 * h, x.x2}).x1 - 8 * f({x.x1 - h, x.x2}).x1 + 8 * f({x.x1 + h, x.x2}).x1 -
                   f({x.x1 + 2 * h, x.x2}).x1) /
                  (12 * h);
  const auto dy = (f({x.x1, x.x2 - 2 * h}).x2 - 8 * f({x.x1, x.x2 - h}).x2 + 8 * f({x.x1, x.x2 + h}).x2 -
                   f({x.x1, x.x2 + 2 * h}).x2) /
                  (12 * h);
  return dx + dy;
}

}  // namespace vw::oracle
