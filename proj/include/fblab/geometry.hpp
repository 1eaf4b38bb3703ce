#pragma once
// Plane geometry, uniform node-centered grids, paraboloid membership and the
// equispaced circle quadrature rule shared by every other module.

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace fblab {

struct Point2 {
  double x1 = 0.0;
  double x2 = 0.0;
};

struct Vec2 {
  double d1 = 0.0;
  double d2 = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x1, s * a.x2}; }

double norm(Point2 a);
double dot(Point2 a, Point2 b);

// Uniform node-centered grid on [xmin,xmax] x [ymin,ymax].  Cells are square:
// the two spacings must agree to 1e-12 relative (checked, not assumed).
class Grid2 {
 public:
  Grid2(double xmin, double xmax, double ymin, double ymax, int nx, int ny);

  // Builds the grid from a target spacing h, snapping the extents outward to
  // integer multiples of h so that 0 lands on a node whenever the box
  // straddles an axis.
  static Grid2 from_box(double xmin, double xmax, double ymin, double ymax, double h);

  double xmin() const { return xmin_; }
  double xmax() const { return xmax_; }
  double ymin() const { return ymin_; }
  double ymax() const { return ymax_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double h() const { return h_; }

  std::size_t size() const { return static_cast<std::size_t>(nx_) * ny_; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx_ + i; }
  Point2 node(int i, int j) const;
  bool contains(Point2 p) const;

  // Nearest node indices, clamped to the grid.
  void nearest(Point2 p, int& i, int& j) const;

  bool same_layout(const Grid2& o) const;

 private:
  double xmin_, xmax_, ymin_, ymax_;
  int nx_, ny_;
  double h_;
};

// Row-major nodal values; node (0,0) sits at (xmin,ymin).  All values finite
// (checked on construction and on load).
class ScalarField {
 public:
  ScalarField(Grid2 grid, std::vector<double> values);
  explicit ScalarField(Grid2 grid, double fill = 0.0);

  const Grid2& grid() const { return grid_; }
  double& at(int i, int j) { return values_[grid_.index(i, j)]; }
  double at(int i, int j) const { return values_[grid_.index(i, j)]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  void check_finite() const;

 private:
  Grid2 grid_;
  std::vector<double> values_;
};

// Coincidence-set paraboloid {|y1 + sigma| <= sqrt(gamma * y2), y2 >= 0},
// i.e. the canonical gamma-paraboloid shifted by -sigma along the x1 axis.
struct Paraboloid {
  double gamma = 1.0;
  double sigma = 0.0;
};

// Membership test of the closed set.  gamma must be positive.
bool paraboloid_contains(const Paraboloid& p, Point2 x);

// Half-space profile max(0, x1)^2 / 2: the quadratic blow-down attached to a
// straight free boundary.
double halfspace_poly(Point2 x);

// Bilinear interpolation on the grid box; throws std::domain_error outside.
double bilinear_sample(const ScalarField& f, Point2 x);

// Gradient of the bilinear interpolant (piecewise per cell, discontinuous
// across cell edges).
Vec2 bilinear_gradient(const ScalarField& f, Point2 x);

// Equispaced quadrature nodes on the circle of radius r with uniform weights
// 2*pi*r/n.  Angles are offset by half a spacing so nodes never land on the
// coordinate axes; the rule stays spectrally exact for trigonometric
// polynomials of degree < n.  Weight sum equals 2*pi*r to 1e-10 relative
// (checked).
struct CircleRule {
  double r = 1.0;
  std::vector<double> angles;
  std::vector<Point2> nodes;
  std::vector<double> weights;
};

CircleRule circle_rule(double r, int n);

// A scalar field of the plane exposed through point evaluation, with an
// optional analytic gradient.  Samplers are pure: repeated evaluation at the
// same point returns bit-identical results.
class FieldSampler {
 public:
  using ValueFn = std::function<double(Point2)>;
  using GradFn = std::function<Vec2(Point2)>;

  FieldSampler() = default;
  explicit FieldSampler(ValueFn v) : value_(std::move(v)) {}
  FieldSampler(ValueFn v, GradFn g) : value_(std::move(v)), grad_(std::move(g)) {}

  double operator()(Point2 x) const { return value_(x); }
  bool has_gradient() const { return static_cast<bool>(grad_); }
  Vec2 gradient(Point2 x) const;

  // Analytic gradient when present, otherwise central differences with the
  // given step.
  Vec2 gradient_or_fd(Point2 x, double step) const;

 private:
  ValueFn value_;
  GradFn grad_;
};

// Sampler over a nodal field via bilinear interpolation; the field is copied.
FieldSampler bilinear_sampler(ScalarField field);

// Gauss-Legendre nodes/weights on [-1,1]; cached per order.
const std::vector<double>& gauss_nodes(int n);
const std::vector<double>& gauss_weights(int n);

}  // namespace fblab
