#include "fblab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fblab/kernels.hpp"

namespace fblab {
namespace {

void validate(const SolverConfig& cfg) {
  if (!(cfg.omega > 0.0) || !(cfg.omega < 2.0))
    throw std::invalid_argument("solver: omega must lie in (0, 2)");
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("solver: tol must be positive");
  if (cfg.max_iter < 1) throw std::invalid_argument("solver: max_iter must be at least 1");
  if (!(cfg.u_zero_tol >= 0.0)) throw std::invalid_argument("solver: u_zero_tol must be >= 0");
}

}  // namespace

ScalarField solve_obstacle(const ScalarField& data, const SolverConfig& cfg,
                           SolverReport& report) {
  validate(cfg);
  const Grid2& grid = data.grid();
  const int nx = grid.nx();
  const int ny = grid.ny();
  if (nx < 3 || ny < 3) throw std::invalid_argument("solver: grid needs at least 3x3 nodes");

  ScalarField u = data;
  u.check_finite();
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const bool ring = i == 0 || j == 0 || i == nx - 1 || j == ny - 1;
      double& v = u.values()[grid.index(i, j)];
      if (ring && v < 0.0)
        throw std::invalid_argument("solver: boundary data must be nonneg (obstacle constraint)");
      if (!ring && v < 0.0) v = 0.0;
    }

  const auto& kt = kernels::active();
  const double h = grid.h();
  const double qrhs = 0.25 * h * h;
  const double thr = cfg.u_zero_tol * h * h;

  report = SolverReport{};
  double residual = std::numeric_limits<double>::infinity();
  int sweep = 0;
  while (sweep < cfg.max_iter) {
    kt.sor_sweep_color(u.values().data(), nx, ny, cfg.omega, qrhs, 0);
    kt.sor_sweep_color(u.values().data(), nx, ny, cfg.omega, qrhs, 1);
    ++sweep;
    const bool check = sweep % 8 == 0 || sweep == cfg.max_iter;
    if (check) residual = kt.complementarity_residual(u.values().data(), nx, ny, h, thr);
    if (sweep % 32 == 0) report.checkpoints.emplace_back(sweep, residual);
    if (check && residual <= cfg.tol) break;
  }
  if (residual > cfg.tol) throw SolverNonConvergence(sweep, residual);

  report.iterations = sweep;
  report.residual = residual;
  report.converged = true;
  report.hessian_bound = hessian_bound(u);
  report.mask_violations = static_cast<int>(extract_mask(u, cfg.u_zero_tol).violating_rows.size());
  return u;
}

CoincidenceMask extract_mask(const ScalarField& u, double u_zero_tol) {
  if (!(u_zero_tol >= 0.0)) throw std::invalid_argument("extract_mask: u_zero_tol must be >= 0");
  const Grid2& grid = u.grid();
  const double thr = u_zero_tol * grid.h() * grid.h();
  CoincidenceMask m{grid, std::vector<std::uint8_t>(u.values().size(), 0), {}};
  for (std::size_t k = 0; k < u.values().size(); ++k) m.values[k] = u.values()[k] <= thr ? 1 : 0;
  for (int j = 0; j < grid.ny(); ++j) {
    int runs = 0;
    bool in_run = false;
    for (int i = 0; i < grid.nx(); ++i) {
      const bool on = m.values[grid.index(i, j)] != 0;
      if (on && !in_run) ++runs;
      in_run = on;
    }
    if (runs > 1) m.violating_rows.push_back(j);
  }
  return m;
}

CoincidenceMask paraboloid_mask(const Grid2& grid, const Paraboloid& pb) {
  CoincidenceMask m{grid, std::vector<std::uint8_t>(static_cast<std::size_t>(grid.nx()) * grid.ny(), 0),
                    {}};
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i)
      m.values[grid.index(i, j)] = paraboloid_contains(pb, grid.node(i, j)) ? 1 : 0;
  return m;
}

namespace {

// Per-row sorted column coordinates of the mask's nodes.
std::vector<std::vector<double>> rows_of(const CoincidenceMask& m) {
  std::vector<std::vector<double>> rows(m.grid.ny());
  for (int j = 0; j < m.grid.ny(); ++j)
    for (int i = 0; i < m.grid.nx(); ++i)
      if (m.at(i, j)) rows[j].push_back(m.grid.node(i, j).x1);
  return rows;
}

double directed_hausdorff(const CoincidenceMask& from, const std::vector<std::vector<double>>& rows,
                          const CoincidenceMask& to) {
  double worst = 0.0;
  for (int j = 0; j < from.grid.ny(); ++j)
    for (int i = 0; i < from.grid.nx(); ++i) {
      if (!from.at(i, j)) continue;
      const Point2 p = from.grid.node(i, j);
      double best2 = std::numeric_limits<double>::infinity();
      for (int r = 0; r < to.grid.ny(); ++r) {
        const auto& cols = rows[r];
        if (cols.empty()) continue;
        const double dy = to.grid.node(0, r).x2 - p.x2;
        if (dy * dy >= best2) continue;
        const auto it = std::lower_bound(cols.begin(), cols.end(), p.x1);
        if (it != cols.end()) best2 = std::min(best2, (*it - p.x1) * (*it - p.x1) + dy * dy);
        if (it != cols.begin()) {
          const double dx = p.x1 - *std::prev(it);
          best2 = std::min(best2, dx * dx + dy * dy);
        }
      }
      worst = std::max(worst, best2);
    }
  return std::sqrt(worst);
}

bool mask_empty(const CoincidenceMask& m) {
  return std::all_of(m.values.begin(), m.values.end(), [](std::uint8_t v) { return v == 0; });
}

}  // namespace

double mask_hausdorff(const CoincidenceMask& a, const CoincidenceMask& b) {
  const bool ea = mask_empty(a);
  const bool eb = mask_empty(b);
  if (ea && eb) return 0.0;
  if (ea || eb) return std::numeric_limits<double>::infinity();
  const auto rows_a = rows_of(a);
  const auto rows_b = rows_of(b);
  return std::max(directed_hausdorff(a, rows_b, b), directed_hausdorff(b, rows_a, a));
}

GrowthCheck coincidence_growth_check(const CoincidenceMask& mask, double delta, double r2) {
  if (!(delta >= 0.0)) throw std::invalid_argument("growth check: delta must be >= 0");
  if (!(r2 > 0.0)) throw std::invalid_argument("growth check: r2 must be positive");
  GrowthCheck out;
  out.excess = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (int j = 0; j < mask.grid.ny(); ++j)
    for (int i = 0; i < mask.grid.nx(); ++i) {
      if (!mask.at(i, j)) continue;
      const Point2 p = mask.grid.node(i, j);
      if (p.x2 < r2) continue;
      any = true;
      const double excess = p.x1 * p.x1 - std::pow(p.x2, 1.0 + delta);
      if (excess > out.excess) {
        out.excess = excess;
        out.worst = p;
      }
      if (excess > 0.0) out.ok = false;
    }
  if (!any) out.excess = 0.0;
  return out;
}

double hessian_bound(const ScalarField& u) {
  const Grid2& grid = u.grid();
  if (grid.nx() < 3 || grid.ny() < 3)
    throw std::invalid_argument("hessian bound: grid needs at least 3x3 nodes");
  const double inv_h2 = 1.0 / (grid.h() * grid.h());
  const auto v = [&](int i, int j) { return u.values()[grid.index(i, j)]; };
  double worst = 0.0;
  for (int j = 1; j < grid.ny() - 1; ++j)
    for (int i = 1; i < grid.nx() - 1; ++i) {
      const double d11 = (v(i + 1, j) - 2.0 * v(i, j) + v(i - 1, j)) * inv_h2;
      const double d22 = (v(i, j + 1) - 2.0 * v(i, j) + v(i, j - 1)) * inv_h2;
      const double d12 =
          (v(i + 1, j + 1) - v(i + 1, j - 1) - v(i - 1, j + 1) + v(i - 1, j - 1)) * 0.25 * inv_h2;
      worst = std::max({worst, std::abs(d11), std::abs(d22), std::abs(d12)});
    }
  return worst;
}

}  // namespace fblab
