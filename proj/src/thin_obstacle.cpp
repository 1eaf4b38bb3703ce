#include "fblab/thin_obstacle.hpp"

#include <cmath>
#include <complex>

namespace fblab {
namespace {

constexpr double kPi = 3.14159265358979323846;

// z^kappa with the principal branch; callers arrange arg(z) in [0, pi] by
// passing a nonnegative imaginary part.
std::complex<double> upper_pow(double re, double im, double kappa) {
  return std::pow(std::complex<double>(re, im), kappa);
}

double sign_of(double t) { return t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0); }

void check_profile(const ThinProfile& p) {
  if (p.m < 0) throw std::invalid_argument("thin profile: m must be >= 0");
  if (p.kind == ThinKind::re_halfinteger && p.m < 1)
    throw std::invalid_argument("thin profile: re_halfinteger needs m >= 1");
  if (!std::isfinite(p.scale)) throw std::invalid_argument("thin profile: scale must be finite");
}

}  // namespace

double homogeneity(const ThinProfile& p) {
  check_profile(p);
  switch (p.kind) {
    case ThinKind::even_polynomial: return 2.0 * p.m;
    case ThinKind::re_halfinteger: return 2.0 * p.m - 0.5;
    case ThinKind::im_odd: return 2.0 * p.m + 1.0;
  }
  throw std::invalid_argument("thin profile: unknown kind");
}

double thin_value(const ThinProfile& p, Point2 x) {
  const double kappa = homogeneity(p);
  if (kappa == 0.0) return p.scale;  // complex pow(0, 0) would NaN at the origin
  const std::complex<double> w = upper_pow(x.x1, std::abs(x.x2), kappa);
  const double raw = p.kind == ThinKind::im_odd ? w.imag() : w.real();
  return p.scale * raw;
}

Vec2 thin_gradient(const ThinProfile& p, Point2 x) {
  const double kappa = homogeneity(p);
  if (p.kind == ThinKind::im_odd && x.x2 == 0.0)
    throw std::domain_error("thin gradient: on the kink line {x2 = 0}");
  if (p.kind == ThinKind::re_halfinteger && x.x2 == 0.0 && x.x1 <= 0.0)
    throw std::domain_error("thin gradient: on the kink ray {x2 = 0, x1 <= 0}");
  if (kappa == 0.0) return {0.0, 0.0};
  // d/dt1 Re z^k = k Re z^(k-1), d/dt2 Re z^k = -k Im z^(k-1) for z = t1+it2
  // in the upper half plane; reflection in t2 makes Re even and Im odd.
  const std::complex<double> w = upper_pow(x.x1, std::abs(x.x2), kappa - 1.0);
  const double s2 = sign_of(x.x2);
  double g1, g2;
  if (p.kind == ThinKind::im_odd) {
    g1 = kappa * w.imag();
    g2 = kappa * w.real() * s2;
  } else {
    g1 = kappa * w.real();
    g2 = -kappa * w.imag() * s2;
  }
  return {p.scale * g1, p.scale * g2};
}

FieldSampler thin_sampler(const ThinProfile& p) {
  check_profile(p);
  return FieldSampler([p](Point2 x) { return thin_value(p, x); },
                      [p](Point2 x) { return thin_gradient(p, x); });
}

double vhat32(Point2 x) {
  const std::complex<double> w = upper_pow(-x.x2, std::abs(x.x1), 1.5);
  return w.real() / std::sqrt(kPi);
}

Vec2 vhat32_grad(Point2 x) {
  if (x.x1 == 0.0 && x.x2 >= 0.0)
    throw std::domain_error("vhat32 gradient: on the ray {x1 = 0, x2 >= 0}");
  // Frame map (t1, t2) = (-x2, x1), value = pi^(-1/2) Re (t1 + i|t2|)^(3/2).
  const std::complex<double> w = upper_pow(-x.x2, std::abs(x.x1), 0.5);
  const double c = 1.5 / std::sqrt(kPi);
  const double dt1 = c * w.real();
  const double dt2 = -c * w.imag() * sign_of(x.x1);
  return {dt2, -dt1};
}

FieldSampler vhat_sampler() {
  return FieldSampler([](Point2 x) { return vhat32(x); },
                      [](Point2 x) { return vhat32_grad(x); });
}

}  // namespace fblab
