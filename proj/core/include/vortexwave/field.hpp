#pragma once

#include "vortexwave/plane_point.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace vw::field {

/// Lagrangian fluid element. omega and weight never change after creation.
struct Marker {
  PlanePoint pos;
  double omega = 0.0;
  double weight = 0.0;

  friend bool operator==(const Marker&, const Marker&) = default;
};

/// Source arrays are padded to a multiple of this with zero-strength entries.
inline constexpr std::size_t kSourcePadding = 16;

/// Padded structure-of-arrays view used by the summation kernel.
struct SourceView {
  std::span<const double> x;
  std::span<const double> y;
  std::span<const double> strength;  // omega * weight
  double delta = 0.0;
};

/// Blob-regularized sum  sum_j K_delta(p - x_j) * strength_j  in source order.
/// The reduction order is fixed, so equal inputs give bitwise-equal outputs.
PlanePoint sum_blob_velocity(const SourceView& sources, PlanePoint p);

/// Unregularized sum  sum_j K(p - x_j) * strength_j  over sources not
/// coincident with p (a marker does not act on itself). Ignores delta.
PlanePoint sum_point_velocity(const SourceView& sources, PlanePoint p);

/// Ordered marker sequence with a shared blob length. Clouds are values:
/// moving markers produces a new cloud that shares the carried quantities.
class MarkerCloud {
 public:
  MarkerCloud() = default;
  MarkerCloud(std::span<const Marker> markers, double blob_delta);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  double blob_delta() const { return blob_delta_; }

  Marker marker(std::size_t i) const;
  PlanePoint position(std::size_t i) const { return {x_[i], y_[i]}; }
  std::vector<Marker> markers() const;

  std::span<const double> xs() const { return {x_.data(), size_}; }
  std::span<const double> ys() const { return {y_.data(), size_}; }
  std::span<const double> omegas() const;
  std::span<const double> weights() const;
  std::span<const double> strengths() const;

  /// sum of omega * weight in marker order.
  double total_circulation() const;

  SourceView sources() const;

  /// Same markers (omega, weight, order) at new positions.
  MarkerCloud moved(std::span<const double> x, std::span<const double> y) const;
  MarkerCloud translated(PlanePoint shift) const;

  /// True when both clouds share storage for omega and weight.
  bool shares_carried(const MarkerCloud& other) const { return carried_ == other.carried_; }

  friend bool operator==(const MarkerCloud& a, const MarkerCloud& b);

 private:
  struct Carried {
    std::vector<double> omega;
    std::vector<double> weight;
    std::vector<double> strength;  // padded
  };

  std::size_t size_ = 0;
  double blob_delta_ = 0.0;
  std::vector<double> x_;  // padded
  std::vector<double> y_;  // padded
  std::shared_ptr<const Carried> carried_;
};

/// v = K_delta * omega at a point. Requires a nonempty cloud.
PlanePoint induced_velocity(const MarkerCloud& cloud, PlanePoint x);

/// Bulk evaluation at targets; each target uses the same code path as the
/// single-point overload, so results are bitwise identical to it.
void induced_velocity(const MarkerCloud& cloud, std::span<const double> tx,
                      std::span<const double> ty, std::span<double> u, std::span<double> v);

/// Uniform node lattice origin + (i, j) * spacing, i < nx, j < ny.
struct Grid {
  PlanePoint origin;
  double spacing = 1.0;
  std::size_t nx = 0;
  std::size_t ny = 0;

  static Grid centered(PlanePoint center, double half_width, double spacing);

  std::size_t node_count() const { return nx * ny; }
  std::size_t index(std::size_t i, std::size_t j) const { return j * nx + i; }
  PlanePoint node(std::size_t i, std::size_t j) const {
    return {origin.x1 + static_cast<double>(i) * spacing, origin.x2 + static_cast<double>(j) * spacing};
  }
  PlanePoint node(std::size_t k) const { return node(k % nx, k / nx); }
  PlanePoint upper() const { return node(nx - 1, ny - 1); }
  bool contains(PlanePoint p) const;
  /// Distance from `center` to the nearest grid edge.
  double half_extent_about(PlanePoint center) const;

  void validate() const;
};

struct ScalarField {
  Grid grid;
  std::vector<double> values;
};

struct VectorField {
  Grid grid;
  std::vector<PlanePoint> values;
};

VectorField velocity_on_grid(const MarkerCloud& cloud, const Grid& grid);

/// Area-weighted bilinear deposition: node value is circulation per unit
/// area. Throws std::out_of_range when a marker lies outside the grid.
ScalarField deposit_vorticity(const MarkerCloud& cloud, const Grid& grid);

/// (sum |value|^p spacing^2)^(1/p); the max norm for p = infinity.
double grid_lp_norm(const ScalarField& field, double p);
double grid_lp_norm(const VectorField& field, double p);

/// (sum |omega|^p weight)^(1/p) over markers; max |omega| for p = infinity.
double marker_lp_norm(const MarkerCloud& cloud, double p);

struct L2Difference {
  double squared_norm = 0.0;
  bool circulation_mismatch = false;
};

/// ||v_A - v_B||^2 by grid quadrature. Flags clouds whose total circulations
/// differ by more than 1e-8, where the continuum integral diverges.
L2Difference l2_velocity_diff(const MarkerCloud& a, const MarkerCloud& b, const Grid& grid);

/// Largest r such that every marker within r of center carries alpha to tol.
/// Reported at the last compliant marker before the first violation.
double constancy_radius(const MarkerCloud& cloud, PlanePoint center, double alpha, double tol);

/// max |pos - center| over markers with |omega| > tol; 0 if there are none.
double support_radius(const MarkerCloud& cloud, PlanePoint center, double tol);

using PlaneField = std::function<PlanePoint(PlanePoint)>;

/// Component-wise max of |circle average - center value|, trapezoid rule on
/// nsamples equally spaced angles (nsamples >= 16).
double harmonic_mean_value_defect(const PlaneField& field, PlanePoint center, double radius,
                                  int nsamples);

}  // namespace vw::field
