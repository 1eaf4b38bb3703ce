#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "fblab/kernels.hpp"

using fblab::kernels::Table;

namespace {

// Uniform in [lo, hi) from the top 53 bits, so the stream is identical on
// every platform.
struct Uniform {
  std::mt19937_64 rng;
  explicit Uniform(unsigned long long seed) : rng(seed) {}
  double operator()(double lo, double hi) {
    const double u = double(rng() >> 11) * 0x1p-53;
    return lo + (hi - lo) * u;
  }
};

}  // namespace

TEST_CASE("active table is one of the named tables") {
  const Table& t = fblab::kernels::active();
  const std::string name = t.name;
  CHECK((name == "scalar" || name == "avx2"));
  REQUIRE(fblab::kernels::scalar() != nullptr);
  if (name == "avx2") CHECK(fblab::kernels::avx2() != nullptr);
}

TEST_CASE("scalar reductions match straightforward sums") {
  const Table* s = fblab::kernels::scalar();
  REQUIRE(s != nullptr);
  Uniform u(7);
  for (std::size_t n : {std::size_t(1), std::size_t(7), std::size_t(64), std::size_t(1037)}) {
    std::vector<double> w(n), f(n), g(n);
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = u(0.0, 1.0);
      f[i] = u(-1.0, 1.0);
      g[i] = u(-1.0, 1.0);
    }
    double sum = 0.0, dotv = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sum += w[i] * f[i];
      dotv += w[i] * f[i] * g[i];
    }
    CHECK(s->weighted_sum(w.data(), f.data(), n) == doctest::Approx(sum).epsilon(1e-13));
    CHECK(s->weighted_dot(w.data(), f.data(), g.data(), n) ==
          doctest::Approx(dotv).epsilon(1e-13));
  }
}

TEST_CASE("avx2 path agrees with scalar to roundoff") {
  const Table* a = fblab::kernels::avx2();
  if (a == nullptr) return;  // host or build without AVX2: nothing to compare
  const Table* s = fblab::kernels::scalar();
  REQUIRE(s != nullptr);

  Uniform u(99);
  std::vector<double> w(4097), f(4097), g(4097);
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = u(0.0, 2.0);
    f[i] = u(-3.0, 3.0);
    g[i] = u(-3.0, 3.0);
  }
  for (std::size_t n : {std::size_t(1), std::size_t(5), std::size_t(16), std::size_t(4097)}) {
    const double s1 = s->weighted_sum(w.data(), f.data(), n);
    const double a1 = a->weighted_sum(w.data(), f.data(), n);
    CHECK(a1 == doctest::Approx(s1).epsilon(1e-13));
    const double s2 = s->weighted_dot(w.data(), f.data(), g.data(), n);
    const double a2 = a->weighted_dot(w.data(), f.data(), g.data(), n);
    CHECK(a2 == doctest::Approx(s2).epsilon(1e-13));
  }

  // SOR sweeps and the residual on a random interior state
  const int nx = 37, ny = 23;
  const double h = 0.1, omega = 1.6, qrhs = 0.25 * h * h;
  std::vector<double> u0(std::size_t(nx) * ny);
  for (double& v : u0) v = u(0.0, 1.0);
  std::vector<double> us = u0, ua = u0;
  for (int pass = 0; pass < 3; ++pass)
    for (int color = 0; color < 2; ++color) {
      s->sor_sweep_color(us.data(), nx, ny, omega, qrhs, color);
      a->sor_sweep_color(ua.data(), nx, ny, omega, qrhs, color);
    }
  double worst = 0.0;
  for (std::size_t i = 0; i < us.size(); ++i) worst = std::max(worst, std::abs(us[i] - ua[i]));
  CHECK(worst < 1e-12);
  const double rs = s->complementarity_residual(us.data(), nx, ny, h, 0.5 * h * h);
  const double ra = a->complementarity_residual(ua.data(), nx, ny, h, 0.5 * h * h);
  CHECK(ra == doctest::Approx(rs).epsilon(1e-10));
}

TEST_CASE("sor sweep projects onto the constraint and fixes the boundary") {
  const Table* s = fblab::kernels::scalar();
  const int nx = 9, ny = 9;
  const double h = 0.125, qrhs = 0.25 * h * h;
  std::vector<double> u(std::size_t(nx) * ny, 0.0);
  for (int i = 0; i < nx; ++i) u[i] = -0.0;  // boundary stays whatever it is
  u[4 * nx + 4] = -1.0;                      // interior negative seed
  s->sor_sweep_color(u.data(), nx, ny, 1.0, qrhs, 0);
  s->sor_sweep_color(u.data(), nx, ny, 1.0, qrhs, 1);
  for (int j = 1; j < ny - 1; ++j)
    for (int i = 1; i < nx - 1; ++i) CHECK(u[std::size_t(j) * nx + i] >= 0.0);
}

TEST_CASE("complementarity residual is zero for an exact discrete solution") {
  // u = x^2/2 on a strip solves the five-point equation lap u = 1 exactly
  const Table* s = fblab::kernels::scalar();
  const int nx = 21, ny = 7;
  const double h = 0.05;
  std::vector<double> u(std::size_t(nx) * ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double x = h * i;
      u[std::size_t(j) * nx + i] = 0.5 * x * x + 1.0;  // strictly positive
    }
  CHECK(s->complementarity_residual(u.data(), nx, ny, h, 0.0) < 1e-10);
}
