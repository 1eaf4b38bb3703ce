#pragma once
// Membrane solutions with paraboloid coincidence set, built from the
// normalized single-layer kernel
//
//   G(x, y) = log|x - y| - log|y| + x.y / |y|^2,
//
// whose subtractions pin G(0, y) = 0 and grad_x G(0, y) = 0, so that
//
//   V(x) = -(1 / 2 pi) integral over the paraboloid of G(x, y) dy
//
// converges absolutely and u(x) = max(0, x1^2 / 2 + V(x)) solves the membrane
// problem with that coincidence set and u(0) = 0, grad u(0) = 0.  On the
// paraboloid itself V = -x1^2 / 2 exactly (in shifted coordinates), which the
// tests lean on as an oracle.
//
// Quadrature: the inner y1 integral has a closed antiderivative, so the near
// field reduces to a 1d adaptive integral in sqrt(y2) (the substitution
// absorbs the paraboloid tip).  Beyond a cut height growing with |x| the
// closed form cancels catastrophically; there the integrand switches to a
// numerically stable rewrite of G and the remaining infinite tail is mapped
// onto (0, 1] by y2 = Ycut / t^2, which the integrand extends smoothly to
// t = 0, so no truncation height is ever chosen.

#include <vector>

#include "fblab/geometry.hpp"

namespace fblab {

struct PotentialConfig {
  double abs_tol = 1e-8;    // absolute accuracy target for V and its gradient
  double near_cell = 1.0;   // half-width of the forced grading window around y2 = x2
  double base_panel = 0.5;  // root panel granularity of the near-field integral
};

// G(x, y); throws std::domain_error at y = 0 and at x = y.
double kernel_g(Point2 x, Point2 y);

// grad_x G(x, y); same domain errors.
Vec2 grad_kernel_g(Point2 x, Point2 y);

// Proven bound on the contribution of {y in the paraboloid : y2 >= height}
// to |V(x)|: (12 / pi) |x|^2 sqrt(gamma / height).  Requires
// height >= 2 * xnorm (the Taylor argument behind it needs |y| >= 2|x|).
double tail_bound(double gamma, double height, double xnorm);

struct PotentialEval {
  double value = 0.0;
  Vec2 grad;
};

// V and grad V in one pass (the two share every quadrature panel).
PotentialEval potential_eval(const Paraboloid& pb, Point2 x, const PotentialConfig& cfg = {});

double potential_paraboloid(const Paraboloid& pb, Point2 x, const PotentialConfig& cfg = {});

Vec2 potential_gradient(const Paraboloid& pb, Point2 x, const PotentialConfig& cfg = {});

// Potential of the paraboloid truncated at y2 <= height; testing hook for the
// tail bound.
double potential_truncated(const Paraboloid& pb, Point2 x, double height,
                           const PotentialConfig& cfg = {});

// u(x) = max(0, p + V) in shifted coordinates.  The clamp only absorbs
// quadrature noise on the coincidence set; no membership short-circuit.
double u_paraboloid(const Paraboloid& pb, Point2 x, const PotentialConfig& cfg = {});

Vec2 u_gradient(const Paraboloid& pb, Point2 x, const PotentialConfig& cfg = {});

FieldSampler potential_sampler(const Paraboloid& pb, const PotentialConfig& cfg = {});

FieldSampler u_sampler(const Paraboloid& pb, const PotentialConfig& cfg = {});

// Least-squares slope of log|f| against log r along the ray r * dir/|dir|.
// Throws std::domain_error when |f| < 1e-14 at some radius (degenerate ray).
double growth_exponent_fit(const FieldSampler& f, Point2 dir, const std::vector<double>& radii);

}  // namespace fblab
