#include "fblab/geometry.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <numbers>

namespace fblab {

double norm(Point2 a) { return std::hypot(a.x1, a.x2); }
double dot(Point2 a, Point2 b) { return a.x1 * b.x1 + a.x2 * b.x2; }

Grid2::Grid2(double xmin, double xmax, double ymin, double ymax, int nx, int ny)
    : xmin_(xmin), xmax_(xmax), ymin_(ymin), ymax_(ymax), nx_(nx), ny_(ny) {
  if (!(std::isfinite(xmin) && std::isfinite(xmax) && std::isfinite(ymin) && std::isfinite(ymax)))
    throw std::invalid_argument("Grid2: extents must be finite");
  if (!(xmax > xmin) || !(ymax > ymin)) throw std::invalid_argument("Grid2: empty box");
  if (nx < 2 || ny < 2) throw std::invalid_argument("Grid2: need at least 2 nodes per side");
  const double hx = (xmax - xmin) / (nx - 1);
  const double hy = (ymax - ymin) / (ny - 1);
  if (std::abs(hx - hy) > 1e-12 * std::max(hx, hy))
    throw std::invalid_argument("Grid2: cells must be square (hx != hy)");
  h_ = hx;
}

Grid2 Grid2::from_box(double xmin, double xmax, double ymin, double ymax, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("Grid2::from_box: h must be positive");
  const double ax = std::floor(xmin / h + 1e-9) * h;
  const double ay = std::floor(ymin / h + 1e-9) * h;
  const int nx = static_cast<int>(std::ceil((xmax - ax) / h - 1e-9)) + 1;
  const int ny = static_cast<int>(std::ceil((ymax - ay) / h - 1e-9)) + 1;
  return Grid2(ax, ax + (nx - 1) * h, ay, ay + (ny - 1) * h, nx, ny);
}

Point2 Grid2::node(int i, int j) const {
  return {xmin_ + h_ * i, ymin_ + h_ * j};
}

bool Grid2::contains(Point2 p) const {
  return p.x1 >= xmin_ && p.x1 <= xmax_ && p.x2 >= ymin_ && p.x2 <= ymax_;
}

void Grid2::nearest(Point2 p, int& i, int& j) const {
  i = static_cast<int>(std::lround((p.x1 - xmin_) / h_));
  j = static_cast<int>(std::lround((p.x2 - ymin_) / h_));
  i = std::max(0, std::min(nx_ - 1, i));
  j = std::max(0, std::min(ny_ - 1, j));
}

bool Grid2::same_layout(const Grid2& o) const {
  return nx_ == o.nx_ && ny_ == o.ny_ && xmin_ == o.xmin_ && xmax_ == o.xmax_ &&
         ymin_ == o.ymin_ && ymax_ == o.ymax_;
}

ScalarField::ScalarField(Grid2 grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw std::invalid_argument("ScalarField: value count does not match grid");
  check_finite();
}

ScalarField::ScalarField(Grid2 grid, double fill) : grid_(grid), values_(grid.size(), fill) {
  if (!std::isfinite(fill)) throw std::invalid_argument("ScalarField: non-finite fill");
}

void ScalarField::check_finite() const {
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("ScalarField: non-finite value");
}

bool paraboloid_contains(const Paraboloid& p, Point2 x) {
  if (!(p.gamma > 0.0)) throw std::domain_error("paraboloid_contains: gamma must be positive");
  const double y1 = x.x1 + p.sigma;
  return x.x2 >= 0.0 && y1 * y1 <= p.gamma * x.x2;
}

double halfspace_poly(Point2 x) {
  const double t = std::max(0.0, x.x1);
  return 0.5 * t * t;
}

namespace {

struct CellPos {
  int i, j;
  double t, s;  // local coordinates in [0,1]
};

CellPos locate(const Grid2& g, Point2 x) {
  if (!g.contains(x)) throw std::domain_error("bilinear: point outside the grid box");
  const double fx = (x.x1 - g.xmin()) / g.h();
  const double fy = (x.x2 - g.ymin()) / g.h();
  int i = std::min(static_cast<int>(fx), g.nx() - 2);
  int j = std::min(static_cast<int>(fy), g.ny() - 2);
  i = std::max(0, i);
  j = std::max(0, j);
  return {i, j, fx - i, fy - j};
}

}  // namespace

double bilinear_sample(const ScalarField& f, Point2 x) {
  const auto c = locate(f.grid(), x);
  const double v00 = f.at(c.i, c.j);
  const double v10 = f.at(c.i + 1, c.j);
  const double v01 = f.at(c.i, c.j + 1);
  const double v11 = f.at(c.i + 1, c.j + 1);
  return (1 - c.t) * (1 - c.s) * v00 + c.t * (1 - c.s) * v10 + (1 - c.t) * c.s * v01 +
         c.t * c.s * v11;
}

Vec2 bilinear_gradient(const ScalarField& f, Point2 x) {
  const auto c = locate(f.grid(), x);
  const double h = f.grid().h();
  const double v00 = f.at(c.i, c.j);
  const double v10 = f.at(c.i + 1, c.j);
  const double v01 = f.at(c.i, c.j + 1);
  const double v11 = f.at(c.i + 1, c.j + 1);
  const double d1 = ((1 - c.s) * (v10 - v00) + c.s * (v11 - v01)) / h;
  const double d2 = ((1 - c.t) * (v01 - v00) + c.t * (v11 - v10)) / h;
  return {d1, d2};
}

CircleRule circle_rule(double r, int n) {
  if (!(r > 0.0)) throw std::invalid_argument("circle_rule: r must be positive");
  if (n < 4) throw std::invalid_argument("circle_rule: need at least 4 nodes");
  CircleRule rule;
  rule.r = r;
  rule.angles.resize(n);
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double step = 2.0 * std::numbers::pi / n;
  const double w = step * r;
  double wsum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double th = (k + 0.5) * step;
    rule.angles[k] = th;
    rule.nodes[k] = {r * std::cos(th), r * std::sin(th)};
    rule.weights[k] = w;
    wsum += w;
  }
  const double target = 2.0 * std::numbers::pi * r;
  if (std::abs(wsum - target) > 1e-10 * target)
    throw std::runtime_error("circle_rule: weight sum drifted");
  return rule;
}

Vec2 FieldSampler::gradient(Point2 x) const {
  if (!grad_) throw std::logic_error("FieldSampler: no analytic gradient attached");
  return grad_(x);
}

Vec2 FieldSampler::gradient_or_fd(Point2 x, double step) const {
  if (grad_) return grad_(x);
  if (!(step > 0.0)) throw std::invalid_argument("gradient_or_fd: step must be positive");
  const double d1 = (value_({x.x1 + step, x.x2}) - value_({x.x1 - step, x.x2})) / (2 * step);
  const double d2 = (value_({x.x1, x.x2 + step}) - value_({x.x1, x.x2 - step})) / (2 * step);
  return {d1, d2};
}

FieldSampler bilinear_sampler(ScalarField field) {
  auto shared = std::make_shared<ScalarField>(std::move(field));
  return FieldSampler(
      [shared](Point2 x) { return bilinear_sample(*shared, x); },
      [shared](Point2 x) { return bilinear_gradient(*shared, x); });
}

namespace {

// Nodes and weights by Newton iteration on the Legendre recurrence; the usual
// symmetric construction, accurate to machine precision for moderate n.
void build_gauss(int n, std::vector<double>& xs, std::vector<double>& ws) {
  xs.assign(n, 0.0);
  ws.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int k = 0; k < m; ++k) {
    double x = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    xs[k] = -x;
    xs[n - 1 - k] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    ws[k] = w;
    ws[n - 1 - k] = w;
  }
  if (n % 2 == 1) xs[n / 2] = 0.0;
}

struct GaussCache {
  std::map<int, std::pair<std::vector<double>, std::vector<double>>> table;
  const std::pair<std::vector<double>, std::vector<double>>& get(int n) {
    auto it = table.find(n);
    if (it == table.end()) {
      std::pair<std::vector<double>, std::vector<double>> nw;
      build_gauss(n, nw.first, nw.second);
      it = table.emplace(n, std::move(nw)).first;
    }
    return it->second;
  }
};

GaussCache& gauss_cache() {
  static GaussCache cache;
  return cache;
}

}  // namespace

const std::vector<double>& gauss_nodes(int n) {
  if (n < 1 || n > 256) throw std::invalid_argument("gauss_nodes: order out of range");
  return gauss_cache().get(n).first;
}

const std::vector<double>& gauss_weights(int n) {
  if (n < 1 || n > 256) throw std::invalid_argument("gauss_weights: order out of range");
  return gauss_cache().get(n).second;
}

}  // namespace fblab
