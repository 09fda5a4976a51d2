#pragma once

#include "vortexwave/plane_point.hpp"

#include <numbers>

namespace vw::kernels {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Smoothing scales used by the kernel family. All must be strictly positive;
/// blob_delta and eps are additionally bounded by 1.
struct KernelParams {
  double blob_delta = 0.02;
  double eps = 0.01;
  double cutoff_delta = 0.1;

  /// Throws DomainError naming the first violated constraint.
  void validate() const;
};

/// Biot-Savart kernel K(x) = x^perp / (2 pi |x|^2). Throws DomainError at the origin.
PlanePoint biot_savart(PlanePoint x);

/// Bounded, divergence-free kernel equal to biot_savart outside B(0, eps):
///   x^perp (2 - |x|^2/eps^2) / (2 pi eps^2)   for |x| < eps.
/// C^1 across |x| = eps, sup norm below 1/(pi eps), zero at the origin.
PlanePoint regularized_kernel(PlanePoint x, double eps);

/// Algebraic blob kernel x^perp / (2 pi (|x|^2 + delta^2)).
PlanePoint blob_kernel(PlanePoint x, double delta);

struct CutoffSample {
  double value = 0.0;
  PlanePoint gradient;
};

/// Radial cut-off chi_delta: 0 on |x| <= delta/2, 1 on |x| >= delta, with a
/// quintic smoothstep in s = 2|x|/delta - 1 across the annulus.
CutoffSample cutoff(PlanePoint x, double delta);

/// Almost-Lipschitz modulus: z (1 - ln z) on [0, 1), 1 beyond. Throws
/// DomainError for z < 0.
double al_modulus(double z);

}  // namespace vw::kernels
