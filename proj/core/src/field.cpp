#include "vortexwave/field.hpp"

#include "vortexwave/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace vw::field {

namespace {

std::size_t padded_size(std::size_t n) {
  return (n + kSourcePadding - 1) / kSourcePadding * kSourcePadding;
}

}  // namespace

MarkerCloud::MarkerCloud(std::span<const Marker> markers, double blob_delta)
    : size_(markers.size()), blob_delta_(blob_delta) {
  if (!(blob_delta > 0.0)) throw std::invalid_argument("MarkerCloud: blob_delta must be positive");
  const std::size_t padded = padded_size(size_);
  auto carried = std::make_shared<Carried>();
  carried->omega.reserve(size_);
  carried->weight.reserve(size_);
  carried->strength.assign(padded, 0.0);
  x_.assign(padded, 0.0);
  y_.assign(padded, 0.0);
  for (std::size_t i = 0; i < size_; ++i) {
    const Marker& m = markers[i];
    if (!(m.weight > 0.0)) throw std::invalid_argument("MarkerCloud: marker weight must be positive");
    if (!is_finite(m.pos) || !std::isfinite(m.omega))
      throw std::invalid_argument("MarkerCloud: marker values must be finite");
    x_[i] = m.pos.x1;
    y_[i] = m.pos.x2;
    carried->omega.push_back(m.omega);
    carried->weight.push_back(m.weight);
    carried->strength[i] = m.omega * m.weight;
  }
  carried_ = std::move(carried);
}

Marker MarkerCloud::marker(std::size_t i) const {
  return {position(i), carried_->omega[i], carried_->weight[i]};
}

std::vector<Marker> MarkerCloud::markers() const {
  std::vector<Marker> out;
  out.reserve(size_);
  for (std::size_t i = 0; i < size_; ++i) out.push_back(marker(i));
  return out;
}

std::span<const double> MarkerCloud::omegas() const {
  if (!carried_) return {};
  return carried_->omega;
}
std::span<const double> MarkerCloud::weights() const {
  if (!carried_) return {};
  return carried_->weight;
}
std::span<const double> MarkerCloud::strengths() const {
  if (!carried_) return {};
  return {carried_->strength.data(), size_};
}

double MarkerCloud::total_circulation() const {
  double total = 0.0;
  for (double g : strengths()) total += g;
  return total;
}

SourceView MarkerCloud::sources() const {
  if (!carried_) return {{}, {}, {}, blob_delta_};
  return {x_, y_, carried_->strength, blob_delta_};
}

MarkerCloud MarkerCloud::moved(std::span<const double> x, std::span<const double> y) const {
  if (x.size() != size_ || y.size() != size_)
    throw std::invalid_argument("MarkerCloud::moved: position count does not match marker count");
  MarkerCloud out = *this;
  std::copy(x.begin(), x.end(), out.x_.begin());
  std::copy(y.begin(), y.end(), out.y_.begin());
  return out;
}

MarkerCloud MarkerCloud::translated(PlanePoint shift) const {
  MarkerCloud out = *this;
  for (std::size_t i = 0; i < size_; ++i) {
    out.x_[i] += shift.x1;
    out.y_[i] += shift.x2;
  }
  return out;
}

bool operator==(const MarkerCloud& a, const MarkerCloud& b) {
  if (a.size_ != b.size_ || a.blob_delta_ != b.blob_delta_) return false;
  if (!std::equal(a.xs().begin(), a.xs().end(), b.xs().begin())) return false;
  if (!std::equal(a.ys().begin(), a.ys().end(), b.ys().begin())) return false;
  if (a.carried_ == b.carried_) return true;
  return std::ranges::equal(a.omegas(), b.omegas()) && std::ranges::equal(a.weights(), b.weights());
}

PlanePoint induced_velocity(const MarkerCloud& cloud, PlanePoint x) {
  if (cloud.empty()) throw std::invalid_argument("induced_velocity: cloud is empty");
  return sum_blob_velocity(cloud.sources(), x);
}

void induced_velocity(const MarkerCloud& cloud, std::span<const double> tx,
                      std::span<const double> ty, std::span<double> u, std::span<double> v) {
  if (tx.size() != ty.size() || u.size() != tx.size() || v.size() != tx.size())
    throw std::invalid_argument("induced_velocity: target/output size mismatch");
  if (cloud.empty()) throw std::invalid_argument("induced_velocity: cloud is empty");
  const SourceView sources = cloud.sources();
  parallel_for(tx.size(), [&](std::size_t k) {
    const PlanePoint w = sum_blob_velocity(sources, {tx[k], ty[k]});
    u[k] = w.x1;
    v[k] = w.x2;
  });
}

Grid Grid::centered(PlanePoint center, double half_width, double spacing) {
  if (!(spacing > 0.0) || !(half_width > 0.0))
    throw std::invalid_argument("Grid::centered: spacing and half_width must be positive");
  const auto cells = static_cast<std::size_t>(std::ceil(2.0 * half_width / spacing - 1e-9));
  const double actual_half = 0.5 * static_cast<double>(cells) * spacing;
  return {{center.x1 - actual_half, center.x2 - actual_half}, spacing, cells + 1, cells + 1};
}

bool Grid::contains(PlanePoint p) const {
  const PlanePoint hi = upper();
  return p.x1 >= origin.x1 && p.x2 >= origin.x2 && p.x1 <= hi.x1 && p.x2 <= hi.x2;
}

double Grid::half_extent_about(PlanePoint center) const {
  const PlanePoint hi = upper();
  return std::min({center.x1 - origin.x1, center.x2 - origin.x2, hi.x1 - center.x1, hi.x2 - center.x2});
}

void Grid::validate() const {
  if (!(spacing > 0.0)) throw std::invalid_argument("Grid: spacing must be positive");
  if (nx < 2 || ny < 2) throw std::invalid_argument("Grid: need at least 2x2 nodes");
  if (!is_finite(origin)) throw std::invalid_argument("Grid: origin must be finite");
}

VectorField velocity_on_grid(const MarkerCloud& cloud, const Grid& grid) {
  grid.validate();
  VectorField out{grid, std::vector<PlanePoint>(grid.node_count())};
  if (cloud.empty()) return out;
  const SourceView sources = cloud.sources();
  parallel_for(grid.node_count(), [&](std::size_t k) { out.values[k] = sum_blob_velocity(sources, grid.node(k)); });
  return out;
}

ScalarField deposit_vorticity(const MarkerCloud& cloud, const Grid& grid) {
  grid.validate();
  ScalarField out{grid, std::vector<double>(grid.node_count(), 0.0)};
  const double inv_area = 1.0 / (grid.spacing * grid.spacing);
  const auto strengths = cloud.strengths();
  for (std::size_t m = 0; m < cloud.size(); ++m) {
    const PlanePoint p = cloud.position(m);
    if (!grid.contains(p))
      throw std::out_of_range("deposit_vorticity: marker " + std::to_string(m) + " lies outside the grid");
    const double fx = (p.x1 - grid.origin.x1) / grid.spacing;
    const double fy = (p.x2 - grid.origin.x2) / grid.spacing;
    auto i = std::min(static_cast<std::size_t>(fx), grid.nx - 2);
    auto j = std::min(static_cast<std::size_t>(fy), grid.ny - 2);
    const double tx = fx - static_cast<double>(i);
    const double ty = fy - static_cast<double>(j);
    const double g = strengths[m] * inv_area;
    out.values[grid.index(i, j)] += g * (1.0 - tx) * (1.0 - ty);
    out.values[grid.index(i + 1, j)] += g * tx * (1.0 - ty);
    out.values[grid.index(i, j + 1)] += g * (1.0 - tx) * ty;
    out.values[grid.index(i + 1, j + 1)] += g * tx * ty;
  }
  return out;
}

namespace {

template <class Magnitude, class Values>
double lp_over(const Values& values, double area, double p, Magnitude magnitude) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp norm: p must be >= 1 or infinity");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, magnitude(v));
    return m;
  }
  double sum = 0.0;
  for (const auto& v : values) sum += std::pow(magnitude(v), p);
  return std::pow(sum * area, 1.0 / p);
}

}  // namespace

double grid_lp_norm(const ScalarField& field, double p) {
  return lp_over(field.values, field.grid.spacing * field.grid.spacing, p,
                 [](double v) { return std::abs(v); });
}

double grid_lp_norm(const VectorField& field, double p) {
  return lp_over(field.values, field.grid.spacing * field.grid.spacing, p,
                 [](const PlanePoint& v) { return norm(v); });
}

double marker_lp_norm(const MarkerCloud& cloud, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("marker_lp_norm: p must be >= 1 or infinity");
  const auto omega = cloud.omegas();
  const auto weight = cloud.weights();
  if (std::isinf(p)) {
    double m = 0.0;
    for (double w : omega) m = std::max(m, std::abs(w));
    return m;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < omega.size(); ++i) sum += std::pow(std::abs(omega[i]), p) * weight[i];
  return std::pow(sum, 1.0 / p);
}

L2Difference l2_velocity_diff(const MarkerCloud& a, const MarkerCloud& b, const Grid& grid) {
  const VectorField va = velocity_on_grid(a, grid);
  const VectorField vb = velocity_on_grid(b, grid);
  double sum = 0.0;
  for (std::size_t k = 0; k < va.values.size(); ++k) sum += norm2(va.values[k] - vb.values[k]);
  const bool mismatch = std::abs(a.total_circulation() - b.total_circulation()) > 1e-8;
  return {sum * grid.spacing * grid.spacing, mismatch};
}

double constancy_radius(const MarkerCloud& cloud, PlanePoint center, double alpha, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("constancy_radius: tol must be positive");
  struct Entry {
    double dist;
    bool compliant;
  };
  std::vector<Entry> entries;
  entries.reserve(cloud.size());
  const auto omega = cloud.omegas();
  for (std::size_t i = 0; i < cloud.size(); ++i)
    entries.push_back({norm(cloud.position(i) - center), std::abs(omega[i] - alpha) <= tol});
  // Violators sort ahead of compliant markers at equal distance.
  std::sort(entries.begin(), entries.end(), [](const Entry& l, const Entry& r) {
    if (l.dist != r.dist) return l.dist < r.dist;
    return !l.compliant && r.compliant;
  });
  double radius = 0.0;
  for (const Entry& e : entries) {
    if (!e.compliant) break;
    radius = e.dist;
  }
  return radius;
}

double support_radius(const MarkerCloud& cloud, PlanePoint center, double tol) {
  if (tol < 0.0) throw std::invalid_argument("support_radius: tol must be non-negative");
  const auto omega = cloud.omegas();
  double radius = 0.0;
  for (std::size_t i = 0; i < cloud.size(); ++i)
    if (std::abs(omega[i]) > tol) radius = std::max(radius, norm(cloud.position(i) - center));
  return radius;
}

double harmonic_mean_value_defect(const PlaneField& field, PlanePoint center, double radius,
                                  int nsamples) {
  if (nsamples < 16) throw std::invalid_argument("harmonic_mean_value_defect: need at least 16 samples");
  if (!(radius > 0.0)) throw std::invalid_argument("harmonic_mean_value_defect: radius must be positive");
  PlanePoint sum;
  for (int k = 0; k < nsamples; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / nsamples;
    sum += field(center + PlanePoint{radius * std::cos(theta), radius * std::sin(theta)});
  }
  const PlanePoint mean = sum * (1.0 / nsamples);
  const PlanePoint at_center = field(center);
  return std::max(std::abs(mean.x1 - at_center.x1), std::abs(mean.x2 - at_center.x2));
}

}  // namespace vw::field
