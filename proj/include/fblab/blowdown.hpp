#pragma once

#include <vector>

#include "fblab/functionals.hpp"
#include "fblab/geometry.hpp"

namespace fblab {

// Rescaling w -> w(r.)/s with the three normalizations in use:
//   quadratic   s = r^2        (solution-scale blow-down)
//   frequency   s = r^{3/2}    (difference-scale blow-down)
//   normalized  s = L2 norm of the trace w(r.) on the unit circle
enum class RescaleKind { quadratic, frequency, normalized };

// Projection data at one scale: alpha is the coefficient of the half-space
// profile vhat in the frequency-rescaled trace, residual the L2(unit circle)
// distance to alpha * vhat.
struct BlowdownEstimate {
  double r = 0.0;
  double alpha = 0.0;
  double residual = 0.0;
};

// Sign regions of a difference field on a grid: labels[index] is 0 where no
// region was retained and 1..k otherwise.  Regions are 4-connected components
// of one strict sign; the labeling is canonical (regions ordered by their
// smallest node index), so it is independent of sweep order.
struct RegionDecomposition {
  Grid2 grid;
  std::vector<int> labels;
  int k = 0;
};

// The sampler x -> w(rx)/s.  Keeps the analytic gradient when w has one.
// For RescaleKind::normalized the trace norm is computed once with the
// cfg.n_angular circle rule; a vanishing norm throws std::domain_error.
FieldSampler rescale(const FieldSampler& w, double r, RescaleKind kind,
                     const FunctionalConfig& cfg = {});

// alpha = matching_functional(w, r); residual from the same circle rule.
BlowdownEstimate alpha_estimate(const FieldSampler& w, double r,
                                const FunctionalConfig& cfg = {});

// (alpha_u / alpha_1)^2.  Both inputs must be positive.
double gamma_match(double alpha_u, double alpha_1);

// Strict sign regions of d = u - u_sigma with the dead band
// |d| <= u_zero_tol * h^2 excluded.  Components smaller than min_size nodes
// are discarded unless they touch the outer boundary of the grid (an
// unbounded region clipped by the box must survive no matter how thin its
// visible part is).
RegionDecomposition region_decomposition(const ScalarField& u, const ScalarField& u_sigma,
                                         int min_size = 8, double u_zero_tol = 0.5);

// Per-radius projection table plus the trace residual of the normalized
// rescaling against vhat.  nonconvergent is set when |alpha| at least
// doubles from the first to the last radius (a diverging projection, e.g. a
// supercritically homogeneous input).
struct BlowdownReport {
  std::vector<BlowdownEstimate> estimates;
  std::vector<double> normalized_residual;
  bool nonconvergent = false;
};

BlowdownReport blowdown_report(const FieldSampler& w, const std::vector<double>& radii,
                               const FunctionalConfig& cfg = {});

}  // namespace fblab
