#include "vortexwave/kernels.hpp"

#include "vortexwave/error.hpp"

#include <cmath>
#include <string>

namespace vw::kernels {

void KernelParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw DomainError(std::string("KernelParams: ") + what);
  };
  require(blob_delta > 0.0 && blob_delta <= 1.0, "blob_delta must lie in (0, 1]");
  require(eps > 0.0 && eps <= 1.0, "eps must lie in (0, 1]");
  require(cutoff_delta > 0.0, "cutoff_delta must be positive");
}

PlanePoint biot_savart(PlanePoint x) {
  const double r2 = norm2(x);
  if (r2 == 0.0) throw DomainError("biot_savart: kernel is singular at the origin");
  return perp(x) * (1.0 / (kTwoPi * r2));
}

PlanePoint regularized_kernel(PlanePoint x, double eps) {
  if (!(eps > 0.0)) throw DomainError("regularized_kernel: eps must be positive");
  const double r2 = norm2(x);
  const double eps2 = eps * eps;
  if (r2 >= eps2) return biot_savart(x);
  return perp(x) * ((2.0 - r2 / eps2) / (kTwoPi * eps2));
}

PlanePoint blob_kernel(PlanePoint x, double delta) {
  if (!(delta > 0.0)) throw DomainError("blob_kernel: delta must be positive");
  return perp(x) * (1.0 / (kTwoPi * (norm2(x) + delta * delta)));
}

CutoffSample cutoff(PlanePoint x, double delta) {
  if (!(delta > 0.0)) throw DomainError("cutoff: delta must be positive");
  const double r = norm(x);
  if (r <= 0.5 * delta) return {0.0, {}};
  if (r >= delta) return {1.0, {}};
  const double s = 2.0 * r / delta - 1.0;
  const double value = s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
  const double dvalue_ds = 30.0 * s * s * (1.0 - s) * (1.0 - s);
  const double dvalue_dr = dvalue_ds * 2.0 / delta;
  return {value, x * (dvalue_dr / r)};
}

double al_modulus(double z) {
  if (z < 0.0 || std::isnan(z)) throw DomainError("al_modulus: argument must be non-negative");
  if (z >= 1.0) return 1.0;
  if (z == 0.0) return 0.0;
  return z * (1.0 - std::log(z));
}

}  // namespace vw::kernels
