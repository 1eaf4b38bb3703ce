#include <algorithm>
#include <cmath>

#include "fblab/kernels.hpp"

namespace fblab::kernels {
namespace {

double weighted_sum_scalar(const double* w, const double* f, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += w[i] * f[i];
  return acc;
}

double weighted_dot_scalar(const double* w, const double* f, const double* g, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += w[i] * f[i] * g[i];
  return acc;
}

void sor_sweep_color_scalar(double* u, int nx, int ny, double omega, double qrhs, int color) {
  for (int j = 1; j < ny - 1; ++j) {
    double* row = u + static_cast<std::size_t>(j) * nx;
    const double* up = row + nx;
    const double* dn = row - nx;
    int i = 1 + ((1 + j + color) & 1);
    for (; i < nx - 1; i += 2) {
      const double avg = 0.25 * (row[i - 1] + row[i + 1] + up[i] + dn[i]);
      const double cand = (1.0 - omega) * row[i] + omega * (avg - qrhs);
      row[i] = cand > 0.0 ? cand : 0.0;
    }
  }
}

double complementarity_residual_scalar(const double* u, int nx, int ny, double h, double thr) {
  const double inv_h2 = 1.0 / (h * h);
  double worst = 0.0;
  for (int j = 1; j < ny - 1; ++j) {
    const double* row = u + static_cast<std::size_t>(j) * nx;
    const double* up = row + nx;
    const double* dn = row - nx;
    for (int i = 1; i < nx - 1; ++i) {
      const double lap = (row[i - 1] + row[i + 1] + up[i] + dn[i] - 4.0 * row[i]) * inv_h2;
      const double res = row[i] > thr ? std::abs(lap - 1.0) : std::max(0.0, lap - 1.0);
      worst = std::max(worst, res);
    }
  }
  return worst;
}

const Table kScalarTable = {
    "scalar",
    weighted_sum_scalar,
    weighted_dot_scalar,
    sor_sweep_color_scalar,
    complementarity_residual_scalar,
};

}  // namespace

const Table* scalar() { return &kScalarTable; }

}  // namespace fblab::kernels
