#include "fblab/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "fblab/blowdown.hpp"
#include "fblab/thin_obstacle.hpp"

namespace fblab {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

// Radial quadrature for integrals over [0, R] or an annulus [a, b]: composite
// Gauss-16 panels.  Toward the origin the panels are graded geometrically
// (widths halve), which keeps homogeneous integrands rho^s accurate without
// knowing s.
struct RadialRule {
  std::vector<double> rho;
  std::vector<double> w;
};

void append_panel(RadialRule& rule, double lo, double hi) {
  const auto& xs = gauss_nodes(16);
  const auto& ws = gauss_weights(16);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    rule.rho.push_back(mid + half * xs[k]);
    rule.w.push_back(half * ws[k]);
  }
}

RadialRule graded_rule(double R, int n_radial) {
  const int levels = std::max(3, n_radial / 16 - 1);
  RadialRule rule;
  double hi = R;
  for (int j = 0; j < levels; ++j) {
    const double lo = 0.5 * hi;
    append_panel(rule, lo, hi);
    hi = lo;
  }
  append_panel(rule, 0.0, hi);
  return rule;
}

RadialRule annulus_rule(double a, double b, int n_radial) {
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / b * (n_radial / 16.0))));
  RadialRule rule;
  for (int j = 0; j < panels; ++j) {
    append_panel(rule, a + (b - a) * j / panels, a + (b - a) * (j + 1) / panels);
  }
  return rule;
}

// Tensor polar integral: the same unit-circle rule at every radial node.
// integrand(x) is multiplied by the area weight w_rho * rho * (2 pi / n).
template <class F>
double polar_integral(const RadialRule& radial, const CircleRule& unit, const F& integrand) {
  double total = 0.0;
  for (std::size_t q = 0; q < radial.rho.size(); ++q) {
    const double rho = radial.rho[q];
    double ring = 0.0;
    for (std::size_t k = 0; k < unit.nodes.size(); ++k) {
      ring += unit.weights[k] * integrand(Point2{rho * unit.nodes[k].x1, rho * unit.nodes[k].x2});
    }
    total += radial.w[q] * rho * ring;
  }
  return total;
}

template <class F>
double disk_integral(double R, const FunctionalConfig& cfg, const F& integrand) {
  return polar_integral(graded_rule(R, cfg.n_radial), circle_rule(1.0, cfg.n_angular), integrand);
}

double trace_square(const FieldSampler& w, double r, const CircleRule& unit) {
  double total = 0.0;
  for (std::size_t k = 0; k < unit.nodes.size(); ++k) {
    const double v = w(Point2{r * unit.nodes[k].x1, r * unit.nodes[k].x2});
    total += unit.weights[k] * v * v;
  }
  return total;
}

void require_radius(double r, const char* op) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument(std::string(op) + ": r must be positive and finite");
  }
}

double sector_angle(const Sector& s, Point2 x) {
  double t = std::fmod(std::atan2(x.x2, x.x1) - s.theta0, kTau);
  if (t < 0.0) t += kTau;
  return t;
}

void check_sector(const Sector& s) {
  if (!(s.phi0 > 0.0) || s.phi0 > kTau || !std::isfinite(s.theta0)) {
    throw std::invalid_argument("sector: phi0 must lie in (0, 2pi] and theta0 be finite");
  }
}

}  // namespace

void FunctionalConfig::validate() const {
  if (n_angular < 64) throw std::invalid_argument("n_angular: must be >= 64");
  if (n_radial < 32) throw std::invalid_argument("n_radial: must be >= 32");
  if (!(gradient_step > 0.0) || !std::isfinite(gradient_step)) {
    throw std::invalid_argument("gradient_step: must be positive and finite");
  }
}

double boundary_l2(const FieldSampler& w, double r, const FunctionalConfig& cfg) {
  cfg.validate();
  require_radius(r, "boundary_l2");
  return trace_square(w, r, circle_rule(1.0, cfg.n_angular));
}

double dirichlet_energy(const FieldSampler& w, double r, const FunctionalConfig& cfg) {
  cfg.validate();
  require_radius(r, "dirichlet_energy");
  const double step = cfg.gradient_step;
  return disk_integral(r, cfg, [&](Point2 x) {
    const Vec2 g = w.gradient_or_fd(x, step);
    return g.d1 * g.d1 + g.d2 * g.d2;
  });
}

double almgren(const FieldSampler& w, double r, const FunctionalConfig& cfg) {
  const double H = boundary_l2(w, r, cfg);
  if (H <= 0.0) throw std::domain_error("almgren: boundary norm vanishes");
  return dirichlet_energy(w, r, cfg) / H;
}

RadialProfile almgren_profile(const FieldSampler& w, const std::vector<double>& radii,
                              const FunctionalConfig& cfg) {
  cfg.validate();
  if (radii.empty()) throw std::invalid_argument("radii: must be non-empty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    require_radius(radii[i], "almgren_profile");
    if (i > 0 && !(radii[i] > radii[i - 1])) {
      throw std::invalid_argument("radii: must be strictly increasing");
    }
  }
  const CircleRule unit = circle_rule(1.0, cfg.n_angular);
  const double step = cfg.gradient_step;
  const auto energy_density = [&](Point2 x) {
    const Vec2 g = w.gradient_or_fd(x, step);
    return g.d1 * g.d1 + g.d2 * g.d2;
  };

  RadialProfile out;
  out.radii = radii;
  out.values.reserve(radii.size());
  double D = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const RadialRule rule = (i == 0) ? graded_rule(radii[0], cfg.n_radial)
                                     : annulus_rule(radii[i - 1], radii[i], cfg.n_radial);
    D += polar_integral(rule, unit, energy_density);
    const double H = trace_square(w, radii[i], unit);
    if (H <= 0.0) throw std::domain_error("almgren_profile: boundary norm vanishes");
    out.values.push_back(D / H);
  }
  return out;
}

double acf_modified(const FieldSampler& v1, const FieldSampler& v2, const FieldSampler& v3,
                    const std::array<RegionPredicate, 3>& supports, double r, double beta,
                    const FunctionalConfig& cfg) {
  cfg.validate();
  require_radius(r, "acf_modified");
  if (!std::isfinite(beta)) throw std::invalid_argument("beta: must be finite");
  for (const auto& s : supports) {
    if (!s) throw std::invalid_argument("supports: all three predicates must be set");
  }
  const FieldSampler* fields[3] = {&v1, &v2, &v3};
  const double step = cfg.gradient_step;
  double D[3] = {0.0, 0.0, 0.0};

  const RadialRule radial = graded_rule(r, cfg.n_radial);
  const CircleRule unit = circle_rule(1.0, cfg.n_angular);
  for (std::size_t q = 0; q < radial.rho.size(); ++q) {
    const double rho = radial.rho[q];
    for (std::size_t k = 0; k < unit.nodes.size(); ++k) {
      const Point2 x{rho * unit.nodes[k].x1, rho * unit.nodes[k].x2};
      int hit = -1;
      for (int i = 0; i < 3; ++i) {
        if (supports[i](x)) {
          if (hit >= 0) throw std::invalid_argument("supports: overlap at a quadrature node");
          hit = i;
        }
      }
      if (hit < 0) continue;
      const Vec2 g = fields[hit]->gradient_or_fd(x, step);
      D[hit] += radial.w[q] * rho * unit.weights[k] * (g.d1 * g.d1 + g.d2 * g.d2);
    }
  }
  return std::pow(r, -beta) * D[0] * D[1] * D[2];
}

double sliding_phi(const FieldSampler& u, const FieldSampler& u_sigma,
                   const RegionDecomposition& regions, double r, const FunctionalConfig& cfg) {
  if (regions.k < 3) throw std::invalid_argument("regions: need at least 3 labeled regions");

  std::vector<long> count(static_cast<std::size_t>(regions.k) + 1, 0);
  for (int lbl : regions.labels) {
    if (lbl > 0) ++count[static_cast<std::size_t>(lbl)];
  }
  std::vector<int> order(static_cast<std::size_t>(regions.k));
  std::iota(order.begin(), order.end(), 1);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (count[a] != count[b]) return count[a] > count[b];
    return a < b;
  });

  const Grid2& grid = regions.grid;
  const std::vector<int>& labels = regions.labels;
  const auto label_at = [&grid, &labels](Point2 x) -> int {
    if (!grid.contains(x)) return 0;
    int i = 0, j = 0;
    grid.nearest(x, i, j);
    return labels[grid.index(i, j)];
  };

  const double step = cfg.gradient_step;
  std::array<FieldSampler, 3> v;
  std::array<RegionPredicate, 3> preds;
  for (int i = 0; i < 3; ++i) {
    const int ell = order[static_cast<std::size_t>(i)];
    preds[i] = [label_at, ell](Point2 x) { return label_at(x) == ell; };
    v[i] = FieldSampler(
        [&u, &u_sigma, label_at, ell](Point2 x) -> double {
          if (label_at(x) != ell) return 0.0;
          return std::abs(u(x) - u_sigma(x));
        },
        [&u, &u_sigma, label_at, ell, step](Point2 x) -> Vec2 {
          if (label_at(x) != ell) return Vec2{0.0, 0.0};
          const double sgn = (u(x) - u_sigma(x)) >= 0.0 ? 1.0 : -1.0;
          const Vec2 gu = u.gradient_or_fd(x, step);
          const Vec2 gs = u_sigma.gradient_or_fd(x, step);
          return Vec2{sgn * (gu.d1 - gs.d1), sgn * (gu.d2 - gs.d2)};
        });
  }
  return acf_modified(v[0], v[1], v[2], preds, r, 9.0, cfg);
}

double doubling_ratio(const FieldSampler& w, double r, const FunctionalConfig& cfg) {
  cfg.validate();
  require_radius(r, "doubling_ratio");
  const CircleRule unit = circle_rule(1.0, cfg.n_angular);
  const double den = trace_square(w, r, unit);
  if (den <= 0.0) throw std::domain_error("doubling_ratio: boundary norm vanishes at r");
  return trace_square(w, 2.0 * r, unit) / den;
}

double matching_functional(const FieldSampler& w, double r, const FunctionalConfig& cfg) {
  cfg.validate();
  require_radius(r, "matching_functional");
  const CircleRule unit = circle_rule(1.0, cfg.n_angular);
  double total = 0.0;
  for (std::size_t k = 0; k < unit.nodes.size(); ++k) {
    const Point2 theta = unit.nodes[k];
    total += unit.weights[k] * vhat32(theta) * w(Point2{r * theta.x1, r * theta.x2});
  }
  return total / (r * std::sqrt(r));
}

double hprime_identity_gap(const FieldSampler& w, const FieldSampler& laplacian_density,
                           double r, const FunctionalConfig& cfg) {
  cfg.validate();
  require_radius(r, "hprime_identity_gap");
  const CircleRule unit = circle_rule(1.0, cfg.n_angular);
  const double s = 1e-3 * r;
  const double Hp = trace_square(w, r + s, unit);
  const double Hm = trace_square(w, r - s, unit);
  const double H = trace_square(w, r, unit);
  if (Hp <= 0.0 || Hm <= 0.0 || H <= 0.0) {
    throw std::domain_error("hprime_identity_gap: boundary norm vanishes");
  }
  const double lhs = (std::log(Hp) - std::log(Hm)) / (2.0 * s);

  const double phi = dirichlet_energy(w, r, cfg) / H;
  const double P = disk_integral(r, cfg, [&](Point2 x) { return w(x) * laplacian_density(x); });
  const double rhs = (2.0 / r) * (phi + P / H);
  return std::abs(lhs - rhs);
}

double frequency_derivative_gap(const FieldSampler& w, const FieldSampler& coincidence,
                                double r, const FunctionalConfig& cfg) {
  cfg.validate();
  require_radius(r, "frequency_derivative_gap");
  const double s = 1e-3 * r;
  const double deriv = (almgren(w, r + s, cfg) - almgren(w, r - s, cfg)) / (2.0 * s);
  const double H = boundary_l2(w, r, cfg);
  if (H <= 0.0) throw std::domain_error("frequency_derivative_gap: boundary norm vanishes");
  const double I = disk_integral(1.0, cfg, [&](Point2 x) {
    return x.x1 * x.x1 * coincidence(Point2{r * x.x1, r * x.x2});
  });
  const double bound = -2.0 * r * r * r / H * I;
  return std::max(0.0, bound - deriv);
}

double difference_energy_ratio(const FieldSampler& u1, const FieldSampler& u2, double r,
                               const FunctionalConfig& cfg) {
  cfg.validate();
  require_radius(r, "difference_energy_ratio");
  const double step = cfg.gradient_step;
  const double num = disk_integral(r, cfg, [&](Point2 x) {
    const Vec2 a = u1.gradient_or_fd(x, step);
    const Vec2 b = u2.gradient_or_fd(x, step);
    const double d1 = a.d1 - b.d1, d2 = a.d2 - b.d2;
    return d1 * d1 + d2 * d2;
  });
  const double den = disk_integral(2.0 * r, cfg, [&](Point2 x) {
    const double d = u1(x) - u2(x);
    return d * d;
  }) / (r * r);
  if (den <= 0.0) throw std::domain_error("difference_energy_ratio: zero difference mass");
  return num / den;
}

RegionPredicate sector_indicator(const Sector& s) {
  check_sector(s);
  return [s](Point2 x) { return sector_angle(s, x) < s.phi0; };
}

FieldSampler sector_eigenfunction(const Sector& s, int m, double amplitude) {
  check_sector(s);
  if (m < 1) throw std::invalid_argument("m: sector eigenfunction index must be >= 1");
  if (!std::isfinite(amplitude)) throw std::invalid_argument("amplitude: must be finite");
  const double k = m * (kTau / 2.0) / s.phi0;
  return FieldSampler(
      [s, k, amplitude](Point2 x) -> double {
        const double t = sector_angle(s, x);
        if (t >= s.phi0) return 0.0;
        return amplitude * std::pow(norm(x), k) * std::sin(k * t);
      },
      [s, k, amplitude](Point2 x) -> Vec2 {
        const double t = sector_angle(s, x);
        if (t >= s.phi0) return Vec2{0.0, 0.0};
        const double rho = norm(x);
        if (rho == 0.0) {
          if (k > 1.0) return Vec2{0.0, 0.0};
          throw std::domain_error("sector_eigenfunction: gradient undefined at the vertex");
        }
        const double c = amplitude * k * std::pow(rho, k - 1.0);
        const double er1 = x.x1 / rho, er2 = x.x2 / rho;
        const double sk = std::sin(k * t), ck = std::cos(k * t);
        return Vec2{c * (sk * er1 - ck * er2), c * (sk * er2 + ck * er1)};
      });
}

std::vector<double> smooth3(const std::vector<double>& v) {
  const std::size_t n = v.size();
  if (n < 3) return v;
  std::vector<double> out(n);
  out[0] = 0.5 * (v[0] + v[1]);
  out[n - 1] = 0.5 * (v[n - 2] + v[n - 1]);
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (v[i - 1] + v[i] + v[i + 1]) / 3.0;
  return out;
}

}  // namespace fblab
