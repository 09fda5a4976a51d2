#pragma once

#include "vortexwave/field.hpp"
#include "vortexwave/scenario.hpp"

#include <cmath>
#include <vector>

namespace vw::testing {

/// Cell-centred lattice markers of spacing h filling the disk |x - c| < a.
inline std::vector<field::Marker> disk_markers(PlanePoint c, double a, double h, double omega) {
  std::vector<field::Marker> out;
  const int n = static_cast<int>(std::ceil(a / h)) + 1;
  for (int j = -n; j < n; ++j)
    for (int i = -n; i < n; ++i) {
      const PlanePoint p{c.x1 + (i + 0.5) * h, c.x2 + (j + 0.5) * h};
      if (norm2(p - c) < a * a) out.push_back({p, omega, h * h});
    }
  return out;
}

inline field::MarkerCloud disk_cloud(PlanePoint c, double a, double h, double omega) {
  return field::MarkerCloud(disk_markers(c, a, h, omega), 2.0 * h);
}

inline ScenarioConfig rankine_config(double a = 0.5, double h = 0.025, double t_end = 0.1, double dt = 1e-2) {
  ScenarioConfig c;
  c.name = "rankine";
  c.patches.push_back({PatchKind::disk, {0.0, 0.0}, 0.0, a, 1.0});
  c.numerics.h = h;
  c.numerics.dt = dt;
  c.numerics.t_end = t_end;
  c.output_stride = 2;
  return c;
}

}  // namespace vw::testing
