// Direct blob summation. Sources are padded to kSourcePadding, so the loop
// runs over whole blocks and the lane-to-source assignment is fixed.

#include "vortexwave/field.hpp"
#include "vortexwave/kernels.hpp"

#if defined(__AVX512F__)
#include <immintrin.h>
#endif

namespace vw::field {

static_assert(kSourcePadding == 16, "summation blocks assume 16 sources per iteration");

#if defined(__AVX512F__)

namespace {

// 1/r2 from the 14-bit hardware estimate plus two Newton steps (~1e-16 relative).
inline __m512d reciprocal(__m512d r2) {
  const __m512d two = _mm512_set1_pd(2.0);
  __m512d inv = _mm512_rcp14_pd(r2);
  inv = _mm512_mul_pd(inv, _mm512_fnmadd_pd(r2, inv, two));
  inv = _mm512_mul_pd(inv, _mm512_fnmadd_pd(r2, inv, two));
  return inv;
}

}  // namespace

PlanePoint sum_blob_velocity(const SourceView& sources, PlanePoint p) {
  const double* xs = sources.x.data();
  const double* ys = sources.y.data();
  const double* gs = sources.strength.data();
  const std::size_t n = sources.x.size();

  const __m512d px = _mm512_set1_pd(p.x1);
  const __m512d py = _mm512_set1_pd(p.x2);
  const __m512d d2 = _mm512_set1_pd(sources.delta * sources.delta);
  __m512d u0 = _mm512_setzero_pd();
  __m512d v0 = _mm512_setzero_pd();
  __m512d u1 = _mm512_setzero_pd();
  __m512d v1 = _mm512_setzero_pd();

  auto accumulate = [&](std::size_t j, __m512d& u, __m512d& v) {
    const __m512d dx = _mm512_sub_pd(px, _mm512_loadu_pd(xs + j));
    const __m512d dy = _mm512_sub_pd(py, _mm512_loadu_pd(ys + j));
    const __m512d r2 = _mm512_add_pd(_mm512_add_pd(_mm512_mul_pd(dx, dx), _mm512_mul_pd(dy, dy)), d2);
    const __m512d s = _mm512_mul_pd(_mm512_loadu_pd(gs + j), reciprocal(r2));
    u = _mm512_fnmadd_pd(dy, s, u);
    v = _mm512_fmadd_pd(dx, s, v);
  };
  for (std::size_t j = 0; j < n; j += 16) {
    accumulate(j, u0, v0);
    accumulate(j + 8, u1, v1);
  }
  const double u = _mm512_reduce_add_pd(_mm512_add_pd(u0, u1));
  const double v = _mm512_reduce_add_pd(_mm512_add_pd(v0, v1));
  return PlanePoint{u, v} * (1.0 / kernels::kTwoPi);
}

#else

PlanePoint sum_blob_velocity(const SourceView& sources, PlanePoint p) {
  constexpr std::size_t kLanes = kSourcePadding;
  const double* xs = sources.x.data();
  const double* ys = sources.y.data();
  const double* gs = sources.strength.data();
  const std::size_t n = sources.x.size();
  const double d2 = sources.delta * sources.delta;

  double au[kLanes] = {};
  double av[kLanes] = {};
  for (std::size_t j = 0; j < n; j += kLanes) {
    for (std::size_t l = 0; l < kLanes; ++l) {
      const double dx = p.x1 - xs[j + l];
      const double dy = p.x2 - ys[j + l];
      const double s = gs[j + l] / (dx * dx + dy * dy + d2);
      au[l] -= dy * s;
      av[l] += dx * s;
    }
  }
  for (std::size_t width = kLanes / 2; width > 0; width /= 2) {
    for (std::size_t l = 0; l < width; ++l) {
      au[l] += au[l + width];
      av[l] += av[l + width];
    }
  }
  return PlanePoint{au[0], av[0]} * (1.0 / kernels::kTwoPi);
}

#endif

PlanePoint sum_point_velocity(const SourceView& sources, PlanePoint p) {
  constexpr std::size_t kLanes = kSourcePadding;
  const double* xs = sources.x.data();
  const double* ys = sources.y.data();
  const double* gs = sources.strength.data();
  const std::size_t n = sources.x.size();

  double au[kLanes] = {};
  double av[kLanes] = {};
  for (std::size_t j = 0; j < n; j += kLanes) {
    for (std::size_t l = 0; l < kLanes; ++l) {
      const double dx = p.x1 - xs[j + l];
      const double dy = p.x2 - ys[j + l];
      const double r2 = dx * dx + dy * dy;
      const double s = r2 > 0.0 ? gs[j + l] / r2 : 0.0;
      au[l] -= dy * s;
      av[l] += dx * s;
    }
  }
  for (std::size_t width = kLanes / 2; width > 0; width /= 2) {
    for (std::size_t l = 0; l < width; ++l) {
      au[l] += au[l + width];
      av[l] += av[l + width];
    }
  }
  return PlanePoint{au[0], av[0]} * (1.0 / kernels::kTwoPi);
}

}  // namespace vw::field
