#include "fblab/potential.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace fblab {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kInf = std::numeric_limits<double>::infinity();

using Vec3 = std::array<double, 3>;

// ---- adaptive Gauss quadrature of a 3-component integrand ----------------

template <class F>
Vec3 gauss15(const F& f, double a, double b) {
  const auto& xs = gauss_nodes(15);
  const auto& ws = gauss_weights(15);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Vec3 acc{0.0, 0.0, 0.0};
  for (int k = 0; k < 15; ++k) {
    const Vec3 v = f(mid + half * xs[k]);
    acc[0] += ws[k] * v[0];
    acc[1] += ws[k] * v[1];
    acc[2] += ws[k] * v[2];
  }
  for (double& c : acc) c *= half;
  return acc;
}

// Globally adaptive bisection: panels carry the two-half refinement of their
// own value, the worst error estimate is split first, and refinement stops
// once the summed estimate meets the budget.  Unlike per-node tolerance
// halving this cannot saturate a subtree around an integrable kink: effort
// concentrates on the one chain of panels that still matters.
struct Panel {
  double err, a, b;
  Vec3 left, right;
};

struct PanelWorse {
  bool operator()(const Panel& p, const Panel& q) const {
    if (p.err != q.err) return p.err < q.err;
    return p.a > q.a;  // deterministic tie-break
  }
};

template <class F>
Vec3 adaptive(const F& f, const std::vector<std::pair<double, double>>& roots, double tol) {
  std::priority_queue<Panel, std::vector<Panel>, PanelWorse> queue;
  Vec3 total{0.0, 0.0, 0.0};
  double live_err = 0.0;    // refinable
  double frozen_err = 0.0;  // panels at the width floor
  const auto make = [&](double a, double b, const Vec3& whole) {
    const double m = 0.5 * (a + b);
    Panel p{0.0, a, b, gauss15(f, a, m), gauss15(f, m, b)};
    for (int i = 0; i < 3; ++i) {
      p.err = std::max(p.err, std::abs(whole[i] - p.left[i] - p.right[i]));
      total[i] += p.left[i] + p.right[i];
    }
    live_err += p.err;
    queue.push(p);
  };
  for (const auto& [a, b] : roots)
    if (b > a) make(a, b, gauss15(f, a, b));
  for (int splits = 0; live_err + frozen_err > tol && !queue.empty() && splits < 6000; ++splits) {
    const Panel p = queue.top();
    queue.pop();
    live_err -= p.err;
    if (p.b - p.a <= 1e-13 * (std::abs(p.a) + std::abs(p.b) + 1.0)) {
      frozen_err += p.err;
      continue;
    }
    const double m = 0.5 * (p.a + p.b);
    for (int i = 0; i < 3; ++i) total[i] -= p.left[i] + p.right[i];
    make(p.a, m, p.left);
    make(m, p.b, p.right);
  }
  return total;
}

// ---- near field: closed y1 antiderivatives --------------------------------

// Antiderivative of log(s^2 + c^2) in s, for c >= 0; odd in s.
double alog(double s, double c) {
  if (s == 0.0) return 0.0;
  return s * (std::log(s * s + c * c) - 2.0) + 2.0 * c * std::atan2(s, c);
}

struct StripGeom {
  double x1, x2, gamma;
};

// Exact y1 integrals of (G, dG/dx1, dG/dx2) across the strip section
// {|y1| <= w(y2)} at height y2 > 0.
Vec3 near_integrand(const StripGeom& g, double y2) {
  const double w = std::sqrt(g.gamma * y2);
  const double c = g.x2 - y2;
  const double ac = std::abs(c);
  const double ilog = 0.5 * (alog(w - g.x1, ac) - alog(-w - g.x1, ac));
  const double i0 = alog(w, y2);
  const double tip = std::atan(w / y2);
  const double gv = ilog - i0 + 2.0 * g.x2 * tip;
  const double pw = g.x1 + w;
  const double mw = g.x1 - w;
  const double ga = 0.5 * (std::log(pw * pw + c * c) - std::log(mw * mw + c * c));
  const double gb = std::atan((w - g.x1) / c) + std::atan((w + g.x1) / c) + 2.0 * tip;
  return {gv, ga, gb};
}

// ---- far field: stable kernel forms, tail mapped onto (0, 1] --------------

struct FarGeom {
  Point2 x;
  double gamma, ycut;
};

Vec3 far_integrand(const FarGeom& g, double t) {
  const double y2 = g.ycut / (t * t);
  const double jac = 2.0 * g.ycut / (t * t * t);
  const double w = std::sqrt(g.gamma * y2);
  const double rx2 = g.x.x1 * g.x.x1 + g.x.x2 * g.x.x2;
  const auto& xs = gauss_nodes(8);
  const auto& ws = gauss_weights(8);
  double sv = 0.0, s1 = 0.0, s2 = 0.0;
  // Fused stable forms sharing all intermediates: with
  // q = (|x|^2 - 2 x.y) / |y|^2 one has |x - y|^2 = |y|^2 (1 + q) and
  // grad G = (q y + x) / (|y|^2 (1 + q)).
  for (int k = 0; k < 8; ++k) {
    const double y1 = w * xs[k];
    const double ry2 = y1 * y1 + y2 * y2;
    const double q = (rx2 - 2.0 * (g.x.x1 * y1 + g.x.x2 * y2)) / ry2;
    const double denom = ry2 * (1.0 + q);
    sv += ws[k] * (0.5 * (std::log1p(q) - q) + 0.5 * rx2 / ry2);
    s1 += ws[k] * (q * y1 + g.x.x1) / denom;
    s2 += ws[k] * (q * y2 + g.x.x2) / denom;
  }
  const double scale = jac * w;
  return {scale * sv, scale * s1, scale * s2};
}

// ---- assembly --------------------------------------------------------------

void validate(const Paraboloid& pb, const PotentialConfig& cfg) {
  if (!(pb.gamma > 0.0) || !std::isfinite(pb.gamma))
    throw std::invalid_argument("paraboloid: gamma must be positive and finite");
  if (!std::isfinite(pb.sigma)) throw std::invalid_argument("paraboloid: sigma must be finite");
  if (!(cfg.abs_tol > 0.0) || !(cfg.near_cell > 0.0) || !(cfg.base_panel > 0.0))
    throw std::invalid_argument("potential config: abs_tol, near_cell, base_panel must be positive");
}

void check_point(Point2 x) {
  if (!std::isfinite(x.x1) || !std::isfinite(x.x2))
    throw std::invalid_argument("potential: evaluation point must be finite");
}

// 2 pi * (V, dV/dx1, dV/dx2) over the strip slice {y2 <= height}, negated
// later by the caller.  The near field integrates in tau = sqrt(y2): the
// substitution makes w linear in tau, which turns the tip into a mild
// tau^k log tau endpoint instead of a sqrt kink.
Vec3 integrate_strip(const StripGeom& g, double height, const PotentialConfig& cfg) {
  const double xn = std::hypot(g.x1, g.x2);
  const double ycut = std::max({2.5 * (xn + 1.0), 4.0 * g.gamma, 8.0});
  const double target = kTwoPi * cfg.abs_tol * 0.5;

  const double ytop = std::min(height, ycut);
  const double tau_top = std::sqrt(ytop);
  std::vector<double> bk{0.0, tau_top};
  const auto mark = [&](double y) {
    if (y > 0.0 && y < ytop) bk.push_back(std::sqrt(y));
  };
  mark(g.x2);
  mark(g.x2 - cfg.near_cell);
  mark(g.x2 + cfg.near_cell);
  mark(g.x1 * g.x1 / g.gamma);
  std::sort(bk.begin(), bk.end());
  bk.erase(std::unique(bk.begin(), bk.end(),
                       [&](double a, double b) { return b - a <= 1e-12 * tau_top; }),
           bk.end());

  const double max_len = cfg.base_panel * std::max(1.0, std::sqrt(ycut) / 6.0);
  std::vector<std::pair<double, double>> roots;
  for (std::size_t i = 0; i + 1 < bk.size(); ++i) {
    const double len = bk[i + 1] - bk[i];
    const int pieces = std::max(1, static_cast<int>(std::ceil(len / max_len)));
    for (int p = 0; p < pieces; ++p)
      roots.emplace_back(bk[i] + len * p / pieces, bk[i] + len * (p + 1) / pieces);
  }

  const auto ftau = [&](double tau) {
    Vec3 v = near_integrand(g, tau * tau);
    for (double& c : v) c *= 2.0 * tau;
    return v;
  };
  Vec3 acc = adaptive(ftau, roots, 0.6 * target);

  if (height > ycut) {
    const FarGeom far{{g.x1, g.x2}, g.gamma, ycut};
    const double t0 = std::isinf(height) ? 0.0 : std::sqrt(ycut / height);
    const Vec3 part =
        adaptive([&](double t) { return far_integrand(far, t); }, {{t0, 1.0}}, 0.4 * target);
    for (int i = 0; i < 3; ++i) acc[i] += part[i];
  }
  return acc;
}

}  // namespace

double kernel_g(Point2 x, Point2 y) {
  const double ry2 = y.x1 * y.x1 + y.x2 * y.x2;
  if (ry2 == 0.0) throw std::domain_error("kernel_g: y = 0");
  const double d1 = x.x1 - y.x1;
  const double d2 = x.x2 - y.x2;
  const double rd2 = d1 * d1 + d2 * d2;
  if (rd2 == 0.0) throw std::domain_error("kernel_g: x = y");
  const double rx2 = x.x1 * x.x1 + x.x2 * x.x2;
  const double s = (x.x1 * y.x1 + x.x2 * y.x2) / ry2;
  if (ry2 >= 4.0 * rx2) {
    // log1p(q) + 2 s cancels near q = -2 s; fold the cancellation into
    // log1p(q) - q, whose absolute error stays at eps * |q|.
    const double q = rx2 / ry2 - 2.0 * s;
    return 0.5 * (std::log1p(q) - q) + 0.5 * rx2 / ry2;
  }
  return 0.5 * std::log(rd2) - 0.5 * std::log(ry2) + s;
}

Vec2 grad_kernel_g(Point2 x, Point2 y) {
  const double ry2 = y.x1 * y.x1 + y.x2 * y.x2;
  if (ry2 == 0.0) throw std::domain_error("grad_kernel_g: y = 0");
  const double d1 = x.x1 - y.x1;
  const double d2 = x.x2 - y.x2;
  const double rd2 = d1 * d1 + d2 * d2;
  if (rd2 == 0.0) throw std::domain_error("grad_kernel_g: x = y");
  const double rx2 = x.x1 * x.x1 + x.x2 * x.x2;
  if (ry2 >= 4.0 * rx2) {
    const double a = rx2 - 2.0 * (x.x1 * y.x1 + x.x2 * y.x2);
    const double denom = ry2 * rd2;
    return {(y.x1 * a + x.x1 * ry2) / denom, (y.x2 * a + x.x2 * ry2) / denom};
  }
  return {d1 / rd2 + y.x1 / ry2, d2 / rd2 + y.x2 / ry2};
}

double tail_bound(double gamma, double height, double xnorm) {
  if (!(gamma > 0.0) || !(height > 0.0) || !(xnorm >= 0.0))
    throw std::invalid_argument("tail_bound: gamma and height must be positive, xnorm nonnegative");
  if (height < 2.0 * xnorm)
    throw std::invalid_argument("tail_bound: requires height >= 2 * xnorm");
  return (12.0 / kPi) * xnorm * xnorm * std::sqrt(gamma / height);
}

PotentialEval potential_eval(const Paraboloid& pb, Point2 x, const PotentialConfig& cfg) {
  validate(pb, cfg);
  check_point(x);
  const StripGeom g{x.x1 + pb.sigma, x.x2, pb.gamma};
  const Vec3 I = integrate_strip(g, kInf, cfg);
  return {-I[0] / kTwoPi, {-I[1] / kTwoPi, -I[2] / kTwoPi}};
}

double potential_paraboloid(const Paraboloid& pb, Point2 x, const PotentialConfig& cfg) {
  return potential_eval(pb, x, cfg).value;
}

Vec2 potential_gradient(const Paraboloid& pb, Point2 x, const PotentialConfig& cfg) {
  return potential_eval(pb, x, cfg).grad;
}

double potential_truncated(const Paraboloid& pb, Point2 x, double height,
                           const PotentialConfig& cfg) {
  validate(pb, cfg);
  check_point(x);
  if (!(height > 0.0)) throw std::invalid_argument("potential_truncated: height must be positive");
  const StripGeom g{x.x1 + pb.sigma, x.x2, pb.gamma};
  return -integrate_strip(g, height, cfg)[0] / kTwoPi;
}

double u_paraboloid(const Paraboloid& pb, Point2 x, const PotentialConfig& cfg) {
  const PotentialEval pe = potential_eval(pb, x, cfg);
  const double xs = x.x1 + pb.sigma;
  const double phi = 0.5 * xs * xs + pe.value;
  return phi > 0.0 ? phi : 0.0;
}

Vec2 u_gradient(const Paraboloid& pb, Point2 x, const PotentialConfig& cfg) {
  const PotentialEval pe = potential_eval(pb, x, cfg);
  const double xs = x.x1 + pb.sigma;
  const double phi = 0.5 * xs * xs + pe.value;
  if (phi <= 0.0) return {0.0, 0.0};
  return {xs + pe.grad.d1, pe.grad.d2};
}

FieldSampler potential_sampler(const Paraboloid& pb, const PotentialConfig& cfg) {
  validate(pb, cfg);
  return FieldSampler([pb, cfg](Point2 x) { return potential_paraboloid(pb, x, cfg); },
                      [pb, cfg](Point2 x) { return potential_gradient(pb, x, cfg); });
}

FieldSampler u_sampler(const Paraboloid& pb, const PotentialConfig& cfg) {
  validate(pb, cfg);
  return FieldSampler([pb, cfg](Point2 x) { return u_paraboloid(pb, x, cfg); },
                      [pb, cfg](Point2 x) { return u_gradient(pb, x, cfg); });
}

double growth_exponent_fit(const FieldSampler& f, Point2 dir, const std::vector<double>& radii) {
  const double dn = std::hypot(dir.x1, dir.x2);
  if (!(dn > 0.0)) throw std::invalid_argument("growth fit: direction must be nonzero");
  if (radii.size() < 2) throw std::invalid_argument("growth fit: need at least two radii");
  std::vector<double> lr, lv;
  lr.reserve(radii.size());
  lv.reserve(radii.size());
  for (double r : radii) {
    if (!(r > 0.0) || !std::isfinite(r))
      throw std::invalid_argument("growth fit: radii must be positive and finite");
    const double val = f({r * dir.x1 / dn, r * dir.x2 / dn});
    if (std::abs(val) < 1e-14)
      throw std::domain_error("growth fit: field vanishes along this ray");
    lr.push_back(std::log(r));
    lv.push_back(std::log(std::abs(val)));
  }
  double mr = 0.0, mv = 0.0;
  for (std::size_t i = 0; i < lr.size(); ++i) {
    mr += lr[i];
    mv += lv[i];
  }
  mr /= static_cast<double>(lr.size());
  mv /= static_cast<double>(lv.size());
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lr.size(); ++i) {
    sxx += (lr[i] - mr) * (lr[i] - mr);
    sxy += (lr[i] - mr) * (lv[i] - mv);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("growth fit: radii must not all coincide");
  return sxy / sxx;
}

}  // namespace fblab
