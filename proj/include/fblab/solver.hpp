#pragma once
// Discrete membrane problem on a grid: find u >= 0 with the five-point
// Laplacian equal to 1 wherever u > 0 and <= 1 elsewhere, matching the given
// Dirichlet ring.  Solved by projected red-black SOR; the complementarity
// residual is measured in the Laplacian scale, so tolerances do not depend
// on the mesh width.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fblab/geometry.hpp"

namespace fblab {

struct SolverConfig {
  double omega = 1.8;       // SOR relaxation factor, in (0, 2)
  double tol = 1e-8;        // complementarity residual target
  int max_iter = 50000;     // full red+black sweeps
  double u_zero_tol = 0.5;  // zero-set threshold: u <= u_zero_tol * h^2
};

struct SolverReport {
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
  double hessian_bound = 0.0;  // max second difference of the solution
  int mask_violations = 0;     // rows whose zero set is not one interval
  std::vector<std::pair<int, double>> checkpoints;  // (sweep, residual), every 32 sweeps
};

class SolverNonConvergence : public std::runtime_error {
 public:
  SolverNonConvergence(int iterations, double residual)
      : std::runtime_error("obstacle solver: residual " + std::to_string(residual) + " after " +
                           std::to_string(iterations) + " sweeps"),
        iterations(iterations),
        residual(residual) {}
  int iterations;
  double residual;
};

// The boundary ring of `data` is the Dirichlet condition (must be >= 0 and
// finite); the interior is the starting guess, clamped to >= 0.  Throws
// SolverNonConvergence when max_iter sweeps leave the residual above tol.
ScalarField solve_obstacle(const ScalarField& data, const SolverConfig& cfg, SolverReport& report);

// Zero set {u <= u_zero_tol * h^2} of a discrete solution, with the rows
// whose slice is not a single interval reported (never repaired).
struct CoincidenceMask {
  Grid2 grid;
  std::vector<std::uint8_t> values;  // row-major, 1 = coincidence node
  std::vector<int> violating_rows;

  bool at(int i, int j) const { return values[grid.index(i, j)] != 0; }
};

CoincidenceMask extract_mask(const ScalarField& u, double u_zero_tol);

// Exact-membership mask of a paraboloid on a grid.
CoincidenceMask paraboloid_mask(const Grid2& grid, const Paraboloid& pb);

// Exact Euclidean Hausdorff distance between the node sets of two masks.
// Both empty: 0.  Exactly one empty: +infinity.
double mask_hausdorff(const CoincidenceMask& a, const CoincidenceMask& b);

// Checks x1^2 <= x2^(1 + delta) at every mask node with x2 >= r2.
struct GrowthCheck {
  bool ok = true;
  Point2 worst;          // offending node (when !ok)
  double excess = 0.0;   // max of x1^2 - x2^(1+delta) over checked nodes
};

GrowthCheck coincidence_growth_check(const CoincidenceMask& mask, double delta, double r2);

// Max of |D11 u|, |D22 u|, |D12 u| over interior nodes (centered second
// differences), a discrete stand-in for the solution's Hessian sup-norm.
double hessian_bound(const ScalarField& u);

}  // namespace fblab
