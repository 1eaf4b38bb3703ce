#pragma once

#include <array>
#include <functional>
#include <vector>

#include "fblab/geometry.hpp"

namespace fblab {

struct RegionDecomposition;  // defined in fblab/blowdown.hpp

// Radial profile r -> value, r strictly increasing and positive, values
// finite.  The container for every monotonicity diagnostic in this module.
struct RadialProfile {
  std::vector<double> radii;
  std::vector<double> values;
};

// Quadrature knobs shared by the radial functionals.
//
// Boundary integrals use the half-offset circle rule with n_angular nodes.
// Area integrals use a tensor polar rule: the same angular nodes at each
// radial node of a composite Gauss rule that is geometrically graded toward
// the origin (panel widths halve toward 0), so homogeneous integrands
// rho^s with s > -1 are handled without special casing.  n_radial is the
// approximate total number of radial nodes.
//
// gradient_step is the central-difference step used for samplers without an
// analytic gradient; keep it well above the sampler's own noise floor
// (e.g. a potential evaluated at abs_tol = 1e-8 supports steps >= 1e-2
// before the difference quotient is noise-dominated).
struct FunctionalConfig {
  int n_angular = 1024;
  int n_radial = 256;
  double gradient_step = 1e-4;

  void validate() const;  // n_angular >= 64, n_radial >= 32, step > 0
};

using RegionPredicate = std::function<bool(Point2)>;

// H(r,w) = r^{-1} * integral of w^2 over the circle of radius r, computed in
// the unit-circle form: integral over theta of w(r*theta)^2.
double boundary_l2(const FieldSampler& w, double r, const FunctionalConfig& cfg = {});

// D(r,w) = integral of |grad w|^2 over the disk of radius r.
double dirichlet_energy(const FieldSampler& w, double r, const FunctionalConfig& cfg = {});

// Frequency phi(r,w) = D(r,w) / H(r,w).  Throws std::domain_error when the
// boundary norm vanishes.
double almgren(const FieldSampler& w, double r, const FunctionalConfig& cfg = {});

// Frequency profile over strictly increasing radii.  The Dirichlet integrals
// are accumulated over annuli so the profile costs one disk integration, not
// one per radius.
RadialProfile almgren_profile(const FieldSampler& w, const std::vector<double>& radii,
                              const FunctionalConfig& cfg = {});

// Three-phase functional r^{-beta} * product over i of the Dirichlet
// integral of v_i restricted to its support.  The supports must be pairwise
// disjoint; this is checked at every quadrature node and a violation throws
// std::invalid_argument.  Gradients of v_i are only evaluated inside the
// respective support (the factor is 0 outside by assumption).
double acf_modified(const FieldSampler& v1, const FieldSampler& v2, const FieldSampler& v3,
                    const std::array<RegionPredicate, 3>& supports, double r, double beta,
                    const FunctionalConfig& cfg = {});

// Sliding functional: acf_modified with beta = 9 applied to |u - u_sigma|
// masked by the three largest regions of the decomposition (ties broken by
// label).  Throws std::invalid_argument when fewer than 3 regions exist.
double sliding_phi(const FieldSampler& u, const FieldSampler& u_sigma,
                   const RegionDecomposition& regions, double r,
                   const FunctionalConfig& cfg = {});

// H(2r,w) / H(r,w) in the unit-circle form; equals 2^(2k) for any
// k-homogeneous w.  Throws std::domain_error on a vanishing denominator.
double doubling_ratio(const FieldSampler& w, double r, const FunctionalConfig& cfg = {});

// r^{-3/2} * integral over theta of vhat(theta) * w(r*theta): the projection
// of the frequency-rescaled trace onto the half-space profile vhat.
double matching_functional(const FieldSampler& w, double r, const FunctionalConfig& cfg = {});

// Residual of the logarithmic derivative identity
//   d/dr log H(r,w) = (2/r) * (phi(r,w) + P(r)/H(r,w)),
//   P(r) = integral over the disk of radius r of w * laplacian_density.
// The left side is a central difference of log H at step r*1e-3.  Returns
// the absolute gap.  For harmonic w pass density 0; for an obstacle-problem
// difference w = u - p pass the negative coincidence indicator.
double hprime_identity_gap(const FieldSampler& w, const FieldSampler& laplacian_density,
                           double r, const FunctionalConfig& cfg = {});

// One-sided residual of the frequency-derivative bound
//   d/dr phi(r,w) >= -(2 r^3 / H(r,w)) * integral over {|x| < 1, rx in the
//   coincidence set} of x1^2.
// coincidence(x) should be 1 on the coincidence set and 0 elsewhere (it is
// evaluated at rx).  The derivative is a central difference at step r*1e-3.
// Returns max(0, bound - derivative): 0 when the inequality holds.
double frequency_derivative_gap(const FieldSampler& w, const FieldSampler& coincidence,
                                double r, const FunctionalConfig& cfg = {});

// Diagnostic ratio
//   integral over B_r of |grad(u1-u2)|^2   /   r^{-2} * integral over B_2r
//   of (u1-u2)^2.
// Bounded for solution pairs by a universal constant; reported, never gated.
double difference_energy_ratio(const FieldSampler& u1, const FieldSampler& u2, double r,
                               const FunctionalConfig& cfg = {});

// --- fixtures -------------------------------------------------------------

// Angular sector {theta0 <= theta < theta0 + phi0} (angles mod 2pi, width in
// (0, 2pi]).  Half-open so that adjacent sectors partition the plane.
struct Sector {
  double theta0 = 0.0;
  double phi0 = 2.0 * 3.14159265358979323846 / 3.0;
};

RegionPredicate sector_indicator(const Sector& s);

// amplitude * rho^k * sin(k * (theta - theta0)) inside the sector and 0
// outside, with k = m * pi / phi0: the m-th Dirichlet eigenfunction profile
// of the sector.  Analytic gradient; |grad|^2 = (amplitude*k)^2 rho^(2k-2)
// inside, independent of the angle.
FieldSampler sector_eigenfunction(const Sector& s, int m, double amplitude = 1.0);

// 3-point moving average used before differencing noisy profiles; endpoints
// are averaged with their single neighbour.
std::vector<double> smooth3(const std::vector<double>& v);

}  // namespace fblab
