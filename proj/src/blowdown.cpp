#include "fblab/blowdown.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "fblab/thin_obstacle.hpp"

namespace fblab {

namespace {

void require_radius(double r, const char* op) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument(std::string(op) + ": r must be positive and finite");
  }
}

}  // namespace

FieldSampler rescale(const FieldSampler& w, double r, RescaleKind kind,
                     const FunctionalConfig& cfg) {
  cfg.validate();
  require_radius(r, "rescale");
  double scale = 0.0;
  switch (kind) {
    case RescaleKind::quadratic:
      scale = r * r;
      break;
    case RescaleKind::frequency:
      scale = r * std::sqrt(r);
      break;
    case RescaleKind::normalized: {
      const double H = boundary_l2(w, r, cfg);
      if (!(H > 0.0)) throw std::domain_error("rescale: zero boundary norm");
      scale = std::sqrt(H);
      break;
    }
  }
  const double inv = 1.0 / scale;
  FieldSampler::ValueFn value = [w, r, inv](Point2 x) {
    return inv * w(Point2{r * x.x1, r * x.x2});
  };
  if (!w.has_gradient()) return FieldSampler(std::move(value));
  FieldSampler::GradFn grad = [w, r, inv](Point2 x) {
    const Vec2 g = w.gradient(Point2{r * x.x1, r * x.x2});
    return Vec2{r * inv * g.d1, r * inv * g.d2};
  };
  return FieldSampler(std::move(value), std::move(grad));
}

BlowdownEstimate alpha_estimate(const FieldSampler& w, double r, const FunctionalConfig& cfg) {
  cfg.validate();
  require_radius(r, "alpha_estimate");
  const double alpha = matching_functional(w, r, cfg);

  const CircleRule unit = circle_rule(1.0, cfg.n_angular);
  const double inv = 1.0 / (r * std::sqrt(r));
  double sq = 0.0;
  for (std::size_t k = 0; k < unit.nodes.size(); ++k) {
    const Point2 theta = unit.nodes[k];
    const double diff = inv * w(Point2{r * theta.x1, r * theta.x2}) - alpha * vhat32(theta);
    sq += unit.weights[k] * diff * diff;
  }
  return BlowdownEstimate{r, alpha, std::sqrt(sq)};
}

double gamma_match(double alpha_u, double alpha_1) {
  if (!(alpha_u > 0.0) || !(alpha_1 > 0.0) || !std::isfinite(alpha_u) || !std::isfinite(alpha_1)) {
    throw std::domain_error("gamma_match: both coefficients must be positive and finite");
  }
  const double ratio = alpha_u / alpha_1;
  return ratio * ratio;
}

RegionDecomposition region_decomposition(const ScalarField& u, const ScalarField& u_sigma,
                                         int min_size, double u_zero_tol) {
  const Grid2& grid = u.grid();
  if (!grid.same_layout(u_sigma.grid())) {
    throw std::invalid_argument("u_sigma: grid layout differs from u");
  }
  if (min_size < 1) throw std::invalid_argument("min_size: must be >= 1");
  if (!(u_zero_tol >= 0.0) || !std::isfinite(u_zero_tol)) {
    throw std::invalid_argument("u_zero_tol: must be non-negative and finite");
  }
  const int nx = grid.nx(), ny = grid.ny();
  const double band = u_zero_tol * grid.h() * grid.h();

  std::vector<signed char> sign(grid.size(), 0);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double d = u.at(i, j) - u_sigma.at(i, j);
      if (d > band) {
        sign[grid.index(i, j)] = 1;
      } else if (d < -band) {
        sign[grid.index(i, j)] = -1;
      }
    }
  }

  RegionDecomposition out{grid, std::vector<int>(grid.size(), 0), 0};
  std::vector<signed char> seen(grid.size(), 0);
  std::vector<std::size_t> stack, component;
  // Scanning in index order makes each seed the smallest index of its
  // component, so labels come out canonical regardless of fill order.
  for (std::size_t seed = 0; seed < sign.size(); ++seed) {
    if (sign[seed] == 0 || seen[seed]) continue;
    const signed char s = sign[seed];
    bool touches_boundary = false;
    component.clear();
    stack.assign(1, seed);
    seen[seed] = 1;
    while (!stack.empty()) {
      const std::size_t idx = stack.back();
      stack.pop_back();
      component.push_back(idx);
      const int i = static_cast<int>(idx % static_cast<std::size_t>(nx));
      const int j = static_cast<int>(idx / static_cast<std::size_t>(nx));
      if (i == 0 || i == nx - 1 || j == 0 || j == ny - 1) touches_boundary = true;
      const int di[4] = {1, -1, 0, 0};
      const int dj[4] = {0, 0, 1, -1};
      for (int d = 0; d < 4; ++d) {
        const int ni = i + di[d], nj = j + dj[d];
        if (ni < 0 || ni >= nx || nj < 0 || nj >= ny) continue;
        const std::size_t nidx = grid.index(ni, nj);
        if (!seen[nidx] && sign[nidx] == s) {
          seen[nidx] = 1;
          stack.push_back(nidx);
        }
      }
    }
    if (component.size() < static_cast<std::size_t>(min_size) && !touches_boundary) continue;
    ++out.k;
    for (std::size_t idx : component) out.labels[idx] = out.k;
  }
  return out;
}

BlowdownReport blowdown_report(const FieldSampler& w, const std::vector<double>& radii,
                               const FunctionalConfig& cfg) {
  cfg.validate();
  if (radii.empty()) throw std::invalid_argument("radii: must be non-empty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    require_radius(radii[i], "blowdown_report");
    if (i > 0 && !(radii[i] > radii[i - 1])) {
      throw std::invalid_argument("radii: must be strictly increasing");
    }
  }
  const CircleRule unit = circle_rule(1.0, cfg.n_angular);
  BlowdownReport report;
  for (double r : radii) {
    report.estimates.push_back(alpha_estimate(w, r, cfg));

    double H = 0.0;
    std::vector<double> trace(unit.nodes.size());
    for (std::size_t k = 0; k < unit.nodes.size(); ++k) {
      trace[k] = w(Point2{r * unit.nodes[k].x1, r * unit.nodes[k].x2});
      H += unit.weights[k] * trace[k] * trace[k];
    }
    if (!(H > 0.0)) throw std::domain_error("blowdown_report: zero boundary norm");
    const double inv = 1.0 / std::sqrt(H);
    double sq = 0.0;
    for (std::size_t k = 0; k < unit.nodes.size(); ++k) {
      const double diff = inv * trace[k] - vhat32(unit.nodes[k]);
      sq += unit.weights[k] * diff * diff;
    }
    report.normalized_residual.push_back(std::sqrt(sq));
  }
  const double first = std::abs(report.estimates.front().alpha);
  const double last = std::abs(report.estimates.back().alpha);
  report.nonconvergent = last > 0.0 && last >= 2.0 * first;
  return report;
}

}  // namespace fblab
