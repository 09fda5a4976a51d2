#pragma once

#include <cmath>

namespace vw {

/// A position or velocity in the plane (nondimensional units).
struct PlanePoint {
  double x1 = 0.0;
  double x2 = 0.0;

  friend constexpr bool operator==(const PlanePoint&, const PlanePoint&) = default;

  constexpr PlanePoint& operator+=(const PlanePoint& o) {
    x1 += o.x1;
    x2 += o.x2;
    return *this;
  }
  constexpr PlanePoint& operator-=(const PlanePoint& o) {
    x1 -= o.x1;
    x2 -= o.x2;
    return *this;
  }
  constexpr PlanePoint& operator*=(double s) {
    x1 *= s;
    x2 *= s;
    return *this;
  }
};

constexpr PlanePoint operator+(PlanePoint a, const PlanePoint& b) { return a += b; }
constexpr PlanePoint operator-(PlanePoint a, const PlanePoint& b) { return a -= b; }
constexpr PlanePoint operator-(const PlanePoint& a) { return {-a.x1, -a.x2}; }
constexpr PlanePoint operator*(PlanePoint a, double s) { return a *= s; }
constexpr PlanePoint operator*(double s, PlanePoint a) { return a *= s; }

constexpr double dot(const PlanePoint& a, const PlanePoint& b) { return a.x1 * b.x1 + a.x2 * b.x2; }
constexpr double norm2(const PlanePoint& a) { return dot(a, a); }
inline double norm(const PlanePoint& a) { return std::hypot(a.x1, a.x2); }

/// (x1, x2)^perp = (-x2, x1)
constexpr PlanePoint perp(const PlanePoint& a) { return {-a.x2, a.x1}; }

inline bool is_finite(const PlanePoint& a) { return std::isfinite(a.x1) && std::isfinite(a.x2); }

}  // namespace vw
