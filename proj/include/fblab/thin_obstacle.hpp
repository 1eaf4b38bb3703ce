#pragma once
// Homogeneous profiles with a kink on a half-line or a line.  The half-space
// solution of the membrane problem looks, after subtracting the quadratic
// part and blowing down, like the 3/2-homogeneous profile vhat32; the other
// families below supply calibration inputs of known homogeneity for the
// frequency and doubling diagnostics.

#include <stdexcept>

#include "fblab/geometry.hpp"

namespace fblab {

enum class ThinKind {
  even_polynomial,  // Re (x1 + i|x2|)^(2m), smooth, homogeneity 2m
  re_halfinteger,   // Re (x1 + i|x2|)^(2m - 1/2), kink on {x2 = 0, x1 < 0}
  im_odd,           // Im (x1 + i|x2|)^(2m + 1), kink on {x2 = 0}
};

struct ThinProfile {
  ThinKind kind = ThinKind::re_halfinteger;
  int m = 1;
  double scale = 1.0;
};

// Homogeneity exponent of the profile.
double homogeneity(const ThinProfile& p);

double thin_value(const ThinProfile& p, Point2 x);

// Throws std::domain_error on the gradient's jump set (see ThinKind).
Vec2 thin_gradient(const ThinProfile& p, Point2 x);

FieldSampler thin_sampler(const ThinProfile& p);

// vhat32(x) = pi^(-1/2) Re (-x2 + i|x1|)^(3/2): the 3/2-homogeneous blowdown
// profile, even in x1, zero on the ray {x1 = 0, x2 >= 0}, nonpositive on
// {x2 >= 0}, nonincreasing in x2, with unit L2 norm against the normalized
// circle measure r^-1 dsigma on the unit circle.  vhat32(0, -1) = pi^(-1/2).
// The frame (t1, t2) = (-x2, x1) rotates the standard slit {t1 <= 0, t2 = 0}
// onto the ray above.
double vhat32(Point2 x);

// Throws std::domain_error on the ray {x1 = 0, x2 >= 0} where the normal
// derivative jumps.  |grad vhat32|^2 = (9 / 4 pi) |x| everywhere else.
Vec2 vhat32_grad(Point2 x);

FieldSampler vhat_sampler();

}  // namespace fblab
