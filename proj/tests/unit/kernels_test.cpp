#include "oracles.hpp"
#include "vortexwave/error.hpp"
#include "vortexwave/kernels.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace vw;
using namespace vw::kernels;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("kernels") {
  TEST_CASE("biot_savart examples") {
    const PlanePoint a = biot_savart({1.0, 0.0});
    CHECK(a.x1 == 0.0);
    CHECK(a.x2 == doctest::Approx(1.0 / (2 * kPi)).epsilon(1e-15));
    CHECK(a.x2 == doctest::Approx(0.1591549).epsilon(1e-7));

    const PlanePoint b = biot_savart({0.0, 2.0});
    CHECK(b.x1 == doctest::Approx(-1.0 / (4 * kPi)).epsilon(1e-15));
    CHECK(b.x2 == 0.0);

    const PlanePoint x{3.0, 4.0};
    CHECK(dot(biot_savart(x), x) == 0.0);
    CHECK(norm(biot_savart(x)) == doctest::Approx(1.0 / (2 * kPi * 5.0)).epsilon(1e-15));
  }

  TEST_CASE("biot_savart rejects the origin") {
    CHECK_THROWS_AS(biot_savart({0.0, 0.0}), DomainError);
  }

  TEST_CASE("regularized kernel examples") {
    const double eps = 0.01;
    const PlanePoint edge = regularized_kernel({eps, 0.0}, eps);
    CHECK(edge.x1 == 0.0);
    CHECK(edge.x2 == doctest::Approx(1.0 / (2 * kPi * eps)).epsilon(1e-14));

    const PlanePoint origin = regularized_kernel({0.0, 0.0}, eps);
    CHECK(origin.x1 == 0.0);
    CHECK(origin.x2 == 0.0);

    const PlanePoint half = regularized_kernel({eps / 2, 0.0}, eps);
    CHECK(half.x1 == 0.0);
    CHECK(half.x2 == doctest::Approx(7.0 / (16 * kPi * eps)).epsilon(1e-14));
  }

  TEST_CASE("regularized kernel is C1 across the matching radius") {
    // One-sided differences of the profile f(r) = |K(r, 0)| on each side of eps.
    const double eps = 0.05;
    const double step = 1e-7;
    auto profile = [&](double r) { return regularized_kernel({r, 0.0}, eps).x2; };
    const double inner = (profile(eps) - profile(eps - step)) / step;
    const double outer = (profile(eps + step) - profile(eps)) / step;
    CHECK(inner == doctest::Approx(outer).epsilon(1e-4));
    CHECK(profile(eps - 1e-13) == doctest::Approx(profile(eps + 1e-13)).epsilon(1e-10));
  }

  TEST_CASE("regularized kernel is bounded by 1/(pi eps)") {
    const double eps = 0.02;
    double worst = 0.0;
    for (int i = 0; i <= 4000; ++i) {
      const double r = 4.0 * eps * i / 4000.0;
      worst = std::max(worst, norm(regularized_kernel({r * 0.6, r * 0.8}, eps)));
    }
    CHECK(worst <= 1.0 / (kPi * eps));
  }

  TEST_CASE("regularized kernel equals the exact kernel outside eps bitwise") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> angle(0.0, 2 * kPi), logr(std::log(0.01), std::log(100.0));
    for (int i = 0; i < 10000; ++i) {
      const double r = std::exp(logr(rng));
      const double t = angle(rng);
      const PlanePoint x{r * std::cos(t), r * std::sin(t)};
      const PlanePoint a = regularized_kernel(x, 0.01);
      const PlanePoint b = biot_savart(x);
      REQUIRE(a.x1 == b.x1);
      REQUIRE(a.x2 == b.x2);
    }
  }

  TEST_CASE("regularized kernel is tangential and divergence free") {
    const double eps = 0.1;
    for (double r : {0.01, 0.03, 0.07, 0.2}) {
      const PlanePoint x{r * 0.8, -r * 0.6};
      CHECK(std::abs(dot(regularized_kernel(x, eps), x)) < 1e-17);
      const double div = oracle::fd_divergence([&](PlanePoint p) { return regularized_kernel(p, eps); }, x, 1e-5);
      CHECK(std::abs(div) < 1e-6);
    }
  }

  TEST_CASE("blob kernel examples") {
    const PlanePoint zero = blob_kernel({0.0, 0.0}, 0.3);
    CHECK(zero.x1 == 0.0);
    CHECK(zero.x2 == 0.0);
    CHECK(blob_kernel({1.0, 0.0}, 1.0).x2 == doctest::Approx(1.0 / (4 * kPi)).epsilon(1e-15));
    const PlanePoint tiny = blob_kernel({1.0, 0.0}, 1e-6);
    CHECK(std::abs(tiny.x2 - biot_savart({1.0, 0.0}).x2) < 1e-10);
  }

  TEST_CASE("blob kernel converges to the exact kernel with bound delta^2/(2 pi |x|^3)") {
    const PlanePoint x{0.3, -0.4};
    for (double delta : {1e-1, 1e-2, 1e-3}) {
      const double diff = norm(blob_kernel(x, delta) - biot_savart(x));
      CHECK(diff <= delta * delta / (2 * kPi * std::pow(norm(x), 3)) * (1 + 1e-12));
    }
  }

  TEST_CASE("cutoff examples") {
    const double delta = 0.2;
    const auto inside = cutoff({delta / 4, 0.0}, delta);
    CHECK(inside.value == 0.0);
    CHECK(inside.gradient.x1 == 0.0);
    CHECK(inside.gradient.x2 == 0.0);
    const auto outside = cutoff({0.0, 2 * delta}, delta);
    CHECK(outside.value == 1.0);
    CHECK(outside.gradient.x1 == 0.0);
    CHECK(outside.gradient.x2 == 0.0);
  }

  TEST_CASE("cutoff ramp is monotone, radial and orthogonal to the kernel") {
    const double delta = 0.1;
    double previous = 0.0;
    for (int i = 1; i < 400; ++i) {
      const double r = delta / 2 + (delta / 2) * i / 400.0;
      const PlanePoint x{r * std::cos(1.1 * i), r * std::sin(1.1 * i)};
      const auto s = cutoff(x, delta);
      CHECK(s.value >= previous);
      previous = s.value;
      CHECK(std::abs(dot(biot_savart(x), s.gradient)) <= 1e-12 * norm(biot_savart(x)) * norm(s.gradient));
      CHECK(std::abs(dot(perp(s.gradient), x)) <= 1e-12 * norm(s.gradient) * norm(x));
      // gradient agrees with a central difference of the value
      const double h = 1e-7;
      const double gx = (cutoff({x.x1 + h, x.x2}, delta).value - cutoff({x.x1 - h, x.x2}, delta).value) / (2 * h);
      CHECK(gx == doctest::Approx(s.gradient.x1).epsilon(1e-5).scale(1.0));
    }
  }

  TEST_CASE("cutoff gradient norms scale with delta") {
    // int |grad chi_delta|^q dx = 2 pi int r |chi'(r)|^q dr, which scales like delta^(2 - q).
    auto integral = [](double delta, double q) {
      double sum = 0.0;
      const int n = 20000;
      const double a = delta / 2, b = delta, h = (b - a) / n;
      for (int i = 0; i < n; ++i) {
        const double r = a + (i + 0.5) * h;
        sum += std::pow(norm(cutoff({r, 0.0}, delta).gradient), q) * 2 * kPi * r * h;
      }
      return sum;
    };
    CHECK(integral(0.1, 1.0) == doctest::Approx(10.0 * integral(0.01, 1.0)).epsilon(1e-9));
    CHECK(integral(0.1, 2.0) == doctest::Approx(integral(0.01, 2.0)).epsilon(1e-9));
  }

  TEST_CASE("al_modulus examples and errors") {
    CHECK(al_modulus(1.0) == 1.0);
    CHECK(al_modulus(0.0) == 0.0);
    CHECK(al_modulus(std::exp(-1.0)) == doctest::Approx(2.0 / std::exp(1.0)).epsilon(1e-15));
    CHECK(al_modulus(0.735) < al_modulus(0.9));
    CHECK(al_modulus(5.0) == 1.0);
    CHECK(al_modulus(std::nextafter(1.0, 0.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(al_modulus(-1e-300), DomainError);
    CHECK_THROWS_AS(al_modulus(std::nan("")), DomainError);
  }

  TEST_CASE("al_modulus satisfies phi(t) <= p t^(1 - 1/p)") {
    for (int i = 0; i <= 500; ++i) {
      const double t = std::pow(10.0, -9.0 + 10.0 * i / 500.0);
      for (int p = 1; p <= 64; ++p) CHECK(al_modulus(t) <= p * std::pow(t, 1.0 - 1.0 / p) + 1e-12);
    }
  }

  TEST_CASE("kernel params validation") {
    KernelParams ok;
    CHECK_NOTHROW(ok.validate());
    for (auto bad : {KernelParams{0.0, 0.01, 0.1}, KernelParams{2.0, 0.01, 0.1}, KernelParams{0.02, 1.5, 0.1},
                     KernelParams{0.02, 0.01, -1.0}})
      CHECK_THROWS_AS(bad.validate(), DomainError);
  }
}
