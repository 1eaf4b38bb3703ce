#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fblab/blowdown.hpp"
#include "fblab/functionals.hpp"
#include "fblab/geometry.hpp"
#include "fblab/io.hpp"
#include "fblab/potential.hpp"
#include "fblab/reference.hpp"
#include "fblab/solver.hpp"
#include "fblab/thin_obstacle.hpp"

namespace {

using nlohmann::json;  // plain json objects keep keys sorted

constexpr double kPi = 3.14159265358979323846;

long long g_seed = 0;  // echoed into JSON artifacts for provenance

void write_json_file(const json& j, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  out << j.dump(2) << "\n";
}

// w = u - x1^2/2 for the gamma-paraboloid solution shifted by sigma, with
// its analytic gradient.
fblab::FieldSampler paraboloid_difference(double gamma, double sigma, double abs_tol) {
  fblab::Paraboloid pb{gamma, sigma};
  fblab::PotentialConfig pcfg;
  pcfg.abs_tol = abs_tol;
  return fblab::FieldSampler(
      [pb, pcfg](fblab::Point2 x) {
        return fblab::u_paraboloid(pb, x, pcfg) - 0.5 * x.x1 * x.x1;
      },
      [pb, pcfg](fblab::Point2 x) {
        const fblab::Vec2 g = fblab::u_gradient(pb, x, pcfg);
        return fblab::Vec2{g.d1 - x.x1, g.d2};
      });
}

fblab::FieldSampler make_source(const std::string& source, double gamma, double sigma,
                                double abs_tol) {
  if (source == "vhat") return fblab::vhat_sampler();
  if (source == "paraboloid") return paraboloid_difference(gamma, sigma, abs_tol);
  throw std::invalid_argument("source: must be vhat or paraboloid");
}

struct BoxParams {
  double xmin = -4.0, xmax = 4.0, ymin = -2.0, ymax = 6.0, h = 0.1;
};

void add_box_options(CLI::App* cmd, BoxParams& box) {
  cmd->add_option("--xmin", box.xmin, "left extent");
  cmd->add_option("--xmax", box.xmax, "right extent");
  cmd->add_option("--ymin", box.ymin, "bottom extent");
  cmd->add_option("--ymax", box.ymax, "top extent");
  cmd->add_option("--h", box.h, "grid spacing")->check(CLI::PositiveNumber);
}

void add_config_file(CLI::App* cmd) {
  cmd->set_config("--config", "", "read options from a key = value file");
}

std::string trim_copy(std::string s) {
  const auto notspace = [](unsigned char c) { return std::isspace(c) == 0; };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
  s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
  return s;
}

// CLI11 only reads config files attached to the command parse() is called on,
// so each subcommand's --config is expanded up front: the file's key = value
// lines are spliced in as long flags right after the subcommand token.
// Flags given explicitly on the command line win; their keys are skipped.
std::vector<std::string> expand_config_args(const std::vector<std::string>& subcommands,
                                            int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto sub = args.begin();
  for (; sub != args.end(); ++sub)
    if (std::find(subcommands.begin(), subcommands.end(), *sub) != subcommands.end()) break;
  if (sub == args.end()) return args;
  const auto cfg = std::find(sub, args.end(), "--config");
  if (cfg == args.end() || std::next(cfg) == args.end()) return args;

  const std::string path = *std::next(cfg);
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  std::vector<std::string> flags;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim_copy(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string key = eq == std::string::npos ? "" : trim_copy(line.substr(0, eq));
    const std::string value = eq == std::string::npos ? "" : trim_copy(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key = value");
    if (std::find(sub, args.end(), "--" + key) != args.end()) continue;
    flags.push_back("--" + key);
    flags.push_back(value);
  }
  args.insert(std::next(sub), flags.begin(), flags.end());
  return args;
}

json grid_json(const fblab::Grid2& g) {
  return json{{"xmin", g.xmin()}, {"xmax", g.xmax()}, {"ymin", g.ymin()},
              {"ymax", g.ymax()}, {"h", g.h()},       {"nx", g.nx()},
              {"ny", g.ny()}};
}

// --- potential ---------------------------------------------------------

struct PotentialParams {
  double gamma = 1.0, sigma = 0.0, abs_tol = 1e-8;
  std::string field = "u";
  BoxParams box;
  std::string out = "potential.csv";
  std::string summary = "potential.json";
};

void run_potential(const PotentialParams& p) {
  const fblab::Grid2 grid =
      fblab::Grid2::from_box(p.box.xmin, p.box.xmax, p.box.ymin, p.box.ymax, p.box.h);
  fblab::Paraboloid pb{p.gamma, p.sigma};
  fblab::PotentialConfig pcfg;
  pcfg.abs_tol = p.abs_tol;
  fblab::ScalarField field(grid, 0.0);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      const fblab::Point2 x = grid.node(i, j);
      const double v = p.field == "u" ? fblab::u_paraboloid(pb, x, pcfg)
                                      : fblab::potential_paraboloid(pb, x, pcfg);
      field.at(i, j) = v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  fblab::write_field_csv(field, p.out);
  json j{{"schema", "fblab.potential.v1"},
         {"field", p.field},
         {"gamma", p.gamma},
         {"sigma", p.sigma},
         {"abs_tol", p.abs_tol},
         {"grid", grid_json(grid)},
         {"min_value", lo},
         {"max_value", hi},
         {"seed", g_seed}};
  write_json_file(j, p.summary);
}

// --- solve --------------------------------------------------------------

struct SolveParams {
  double gamma = 1.0, sigma = 0.0;
  BoxParams box{-6.0, 6.0, -2.0, 10.0, 0.05};
  fblab::SolverConfig solver;
  std::string out = "solve.csv";
  std::string mask_out = "solve_mask.csv";
  std::string report_out = "solve.json";
};

void run_solve(const SolveParams& p) {
  const fblab::Grid2 grid =
      fblab::Grid2::from_box(p.box.xmin, p.box.xmax, p.box.ymin, p.box.ymax, p.box.h);
  fblab::Paraboloid pb{p.gamma, p.sigma};
  fblab::PotentialConfig pcfg;
  pcfg.abs_tol = p.solver.tol / 10.0;  // boundary data below the solver floor
  fblab::ScalarField data(grid, 0.0);
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      if (i == 0 || i == grid.nx() - 1 || j == 0 || j == grid.ny() - 1) {
        data.at(i, j) = fblab::u_paraboloid(pb, grid.node(i, j), pcfg);
      }
    }
  }
  fblab::SolverReport report;
  const fblab::ScalarField u = fblab::solve_obstacle(data, p.solver, report);
  const fblab::CoincidenceMask mask = fblab::extract_mask(u, p.solver.u_zero_tol);
  fblab::write_field_csv(u, p.out);
  fblab::write_mask_csv(grid, mask.values, p.mask_out);

  json checkpoints = json::array();
  for (const auto& [sweep, res] : report.checkpoints) {
    checkpoints.push_back(json{{"sweep", sweep}, {"residual", res}});
  }
  json j{{"schema", "fblab.solve.v1"},
         {"gamma", p.gamma},
         {"sigma", p.sigma},
         {"grid", grid_json(grid)},
         {"omega", p.solver.omega},
         {"tol", p.solver.tol},
         {"u_zero_tol", p.solver.u_zero_tol},
         {"iterations", report.iterations},
         {"residual", report.residual},
         {"converged", report.converged},
         {"hessian_bound", report.hessian_bound},
         {"mask_violations", report.mask_violations},
         {"checkpoints", checkpoints},
         {"seed", g_seed}};
  write_json_file(j, p.report_out);
}

// --- radial profiles ------------------------------------------------------

struct ProfileParams {
  std::string source = "paraboloid";
  double gamma = 1.0, sigma = 0.0, abs_tol = 1e-8;
  std::vector<double> radii;
  fblab::FunctionalConfig fcfg;
  std::string out;
};

void add_profile_options(CLI::App* cmd, ProfileParams& p, const char* default_out) {
  p.out = default_out;
  cmd->add_option("--source", p.source, "field: vhat or paraboloid")
      ->check(CLI::IsMember({"vhat", "paraboloid"}));
  cmd->add_option("--gamma", p.gamma, "paraboloid opening")->check(CLI::PositiveNumber);
  cmd->add_option("--sigma", p.sigma, "horizontal shift");
  cmd->add_option("--abs-tol", p.abs_tol, "potential quadrature tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--radii", p.radii, "evaluation radii, strictly increasing")
      ->delimiter(',')
      ->expected(1, -1);
  cmd->add_option("--n-angular", p.fcfg.n_angular, "circle-rule node count");
  cmd->add_option("--n-radial", p.fcfg.n_radial, "radial node budget for area integrals");
  cmd->add_option("--out", p.out, "profile CSV path");
}

void run_frequency(const ProfileParams& p) {
  const fblab::FieldSampler w = make_source(p.source, p.gamma, p.sigma, p.abs_tol);
  const fblab::RadialProfile prof = fblab::almgren_profile(w, p.radii, p.fcfg);
  fblab::write_profile_csv(prof.radii, prof.values, "value", p.out);
}

void run_doubling(const ProfileParams& p) {
  const fblab::FieldSampler w = make_source(p.source, p.gamma, p.sigma, p.abs_tol);
  std::vector<double> values;
  values.reserve(p.radii.size());
  for (double r : p.radii) values.push_back(fblab::doubling_ratio(w, r, p.fcfg));
  fblab::write_profile_csv(p.radii, values, "value", p.out);
}

void run_matching(const ProfileParams& p) {
  const fblab::FieldSampler w = make_source(p.source, p.gamma, p.sigma, p.abs_tol);
  std::vector<double> values;
  values.reserve(p.radii.size());
  for (double r : p.radii) values.push_back(fblab::matching_functional(w, r, p.fcfg));
  fblab::write_profile_csv(p.radii, values, "value", p.out);
}

// --- acf ------------------------------------------------------------------

struct AcfParams {
  double beta = 9.0;
  double theta0 = 0.0;
  int m1 = 1, m2 = 1, m3 = 1;
  std::vector<double> radii{0.1, 0.2, 0.35, 0.5, 0.7, 1.0};
  fblab::FunctionalConfig fcfg;
  std::string out = "acf.csv";
};

void run_acf(const AcfParams& p) {
  const double third = 2.0 * kPi / 3.0;
  const fblab::Sector s1{p.theta0, third}, s2{p.theta0 + third, third},
      s3{p.theta0 + 2.0 * third, third};
  const fblab::FieldSampler v1 = fblab::sector_eigenfunction(s1, p.m1);
  const fblab::FieldSampler v2 = fblab::sector_eigenfunction(s2, p.m2);
  const fblab::FieldSampler v3 = fblab::sector_eigenfunction(s3, p.m3);
  const std::array<fblab::RegionPredicate, 3> preds{
      fblab::sector_indicator(s1), fblab::sector_indicator(s2), fblab::sector_indicator(s3)};
  std::vector<double> values;
  values.reserve(p.radii.size());
  for (double r : p.radii) {
    values.push_back(fblab::acf_modified(v1, v2, v3, preds, r, p.beta, p.fcfg));
  }
  fblab::write_profile_csv(p.radii, values, "value", p.out);
}

// --- blowdown --------------------------------------------------------------

struct BlowdownParams {
  ProfileParams profile;
  std::string report_out = "blowdown.json";
};

void run_blowdown(const BlowdownParams& p) {
  const fblab::FieldSampler w =
      make_source(p.profile.source, p.profile.gamma, p.profile.sigma, p.profile.abs_tol);
  const fblab::BlowdownReport rep = fblab::blowdown_report(w, p.profile.radii, p.profile.fcfg);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < rep.estimates.size(); ++i) {
    const auto& e = rep.estimates[i];
    rows.push_back({e.r, e.alpha, e.residual, rep.normalized_residual[i]});
  }
  fblab::write_table_csv({"r", "alpha", "residual", "normalized_residual"}, rows, p.profile.out);
  json j{{"schema", "fblab.blowdown.v1"},
         {"source", p.profile.source},
         {"gamma", p.profile.gamma},
         {"sigma", p.profile.sigma},
         {"nonconvergent", rep.nonconvergent},
         {"seed", g_seed}};
  write_json_file(j, p.report_out);
}

// --- match -------------------------------------------------------------------

struct MatchParams {
  double gamma = 1.0, sigma = 0.0, abs_tol = 1e-8;
  double alpha1 = fblab::kAlphaOneReference;
  std::vector<double> radii{50.0, 100.0, 200.0};
  fblab::FunctionalConfig fcfg;
  std::string out = "match.csv";
  std::string summary = "match.json";
};

// Two-point extrapolation of alpha(r) = alpha_inf + c * r^{-1/2} from the
// last two radii; with a single radius the value is used as-is.
double extrapolate_alpha(const std::vector<double>& radii, const std::vector<double>& alphas) {
  const std::size_t n = radii.size();
  if (n == 1) return alphas[0];
  const double sN = 1.0 / std::sqrt(radii[n - 1]);
  const double sP = 1.0 / std::sqrt(radii[n - 2]);
  return alphas[n - 1] - sN * (alphas[n - 1] - alphas[n - 2]) / (sN - sP);
}

void run_match(const MatchParams& p) {
  const fblab::FieldSampler w = paraboloid_difference(p.gamma, p.sigma, p.abs_tol);
  std::vector<double> alphas;
  std::vector<std::vector<double>> rows;
  for (double r : p.radii) {
    const fblab::BlowdownEstimate e = fblab::alpha_estimate(w, r, p.fcfg);
    alphas.push_back(e.alpha);
    rows.push_back({e.r, e.alpha, e.residual});
  }
  fblab::write_table_csv({"r", "alpha", "residual"}, rows, p.out);
  const double alpha_u = extrapolate_alpha(p.radii, alphas);
  const double gamma_est = fblab::gamma_match(alpha_u, p.alpha1);
  json j{{"schema", "fblab.match.v1"},
         {"alpha_u", alpha_u},
         {"alpha_1", p.alpha1},
         {"alpha_ref_tag", fblab::kAlphaOneReferenceTag},
         {"gamma", gamma_est},
         {"gamma_input", p.gamma},
         {"relative_error", std::abs(gamma_est - p.gamma) / p.gamma},
         {"seed", g_seed}};
  write_json_file(j, p.summary);
}

// --- regions -----------------------------------------------------------------

struct RegionsParams {
  double gamma = 1.0, sigma = 0.25, abs_tol = 1e-8;
  BoxParams box{-8.0, 8.0, -2.0, 14.0, 0.1};
  int min_size = 8;
  double u_zero_tol = 0.5;
  std::string out = "regions.csv";
  std::string summary = "regions.json";
};

void run_regions(const RegionsParams& p) {
  const fblab::Grid2 grid =
      fblab::Grid2::from_box(p.box.xmin, p.box.xmax, p.box.ymin, p.box.ymax, p.box.h);
  fblab::Paraboloid pb{p.gamma, 0.0};
  fblab::PotentialConfig pcfg;
  pcfg.abs_tol = p.abs_tol;
  fblab::ScalarField u(grid, 0.0), u_sigma(grid, 0.0);
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) {
      const fblab::Point2 x = grid.node(i, j);
      u.at(i, j) = fblab::u_paraboloid(pb, x, pcfg);
      u_sigma.at(i, j) = fblab::u_paraboloid(pb, fblab::Point2{x.x1 + p.sigma, x.x2}, pcfg);
    }
  }
  const fblab::RegionDecomposition regions =
      fblab::region_decomposition(u, u_sigma, p.min_size, p.u_zero_tol);
  fblab::write_label_csv(grid, regions.labels, p.out);

  std::vector<long long> sizes(static_cast<std::size_t>(regions.k), 0);
  for (int lbl : regions.labels) {
    if (lbl > 0) ++sizes[static_cast<std::size_t>(lbl - 1)];
  }
  json j{{"schema", "fblab.regions.v1"},
         {"gamma", p.gamma},
         {"sigma", p.sigma},
         {"grid", grid_json(grid)},
         {"min_size", p.min_size},
         {"u_zero_tol", p.u_zero_tol},
         {"k", regions.k},
         {"region_sizes", sizes},
         {"seed", g_seed}};
  write_json_file(j, p.summary);
}

// Flags are long-form only, so the default -h shorthand must go: it would
// collide with --h (the grid spacing).
CLI::App* add_cmd(CLI::App& app, const char* name, const char* desc) {
  CLI::App* cmd = app.add_subcommand(name, desc);
  cmd->set_help_flag("--help", "print help and exit");
  cmd->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  return cmd;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for the planar obstacle problem: paraboloid potentials,"
               " discrete solves, and radial monotonicity diagnostics"};
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);
  app.add_option("--seed", g_seed, "seed echoed into JSON artifacts (randomized sweeps only)");

  PotentialParams pot;
  {
    CLI::App* cmd = add_cmd(app, "potential", "evaluate the paraboloid potential on a grid");
    cmd->add_option("--gamma", pot.gamma)->check(CLI::PositiveNumber);
    cmd->add_option("--sigma", pot.sigma);
    cmd->add_option("--abs-tol", pot.abs_tol)->check(CLI::PositiveNumber);
    cmd->add_option("--field", pot.field, "u (solution) or v (potential)")
        ->check(CLI::IsMember({"u", "v"}));
    add_box_options(cmd, pot.box);
    cmd->add_option("--out", pot.out);
    cmd->add_option("--summary", pot.summary);
    add_config_file(cmd);
    cmd->callback([&pot]() { run_potential(pot); });
  }

  SolveParams solve;
  {
    CLI::App* cmd = add_cmd(app, "solve", "projected SOR solve with exact boundary data");
    cmd->add_option("--gamma", solve.gamma)->check(CLI::PositiveNumber);
    cmd->add_option("--sigma", solve.sigma);
    add_box_options(cmd, solve.box);
    cmd->add_option("--omega", solve.solver.omega, "SOR relaxation factor");
    cmd->add_option("--tol", solve.solver.tol, "complementarity residual target")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-iter", solve.solver.max_iter)->check(CLI::PositiveNumber);
    cmd->add_option("--u-zero-tol", solve.solver.u_zero_tol, "zero-set threshold (times h^2)");
    cmd->add_option("--out", solve.out);
    cmd->add_option("--mask-out", solve.mask_out);
    cmd->add_option("--report-out", solve.report_out);
    add_config_file(cmd);
    cmd->callback([&solve]() { run_solve(solve); });
  }

  ProfileParams freq;
  freq.radii = {1.0, 2.0, 4.0, 8.0, 16.0};
  {
    CLI::App* cmd = add_cmd(app, "frequency", "Almgren frequency profile");
    add_profile_options(cmd, freq, "frequency.csv");
    add_config_file(cmd);
    cmd->callback([&freq]() { run_frequency(freq); });
  }

  AcfParams acf;
  {
    CLI::App* cmd = add_cmd(app, "acf", "three-phase functional on equal thirds");
    cmd->add_option("--beta", acf.beta, "scaling exponent");
    cmd->add_option("--theta0", acf.theta0, "rotation of the sector triple");
    cmd->add_option("--m1", acf.m1)->check(CLI::PositiveNumber);
    cmd->add_option("--m2", acf.m2)->check(CLI::PositiveNumber);
    cmd->add_option("--m3", acf.m3)->check(CLI::PositiveNumber);
    cmd->add_option("--radii", acf.radii)->delimiter(',')->expected(1, -1);
    cmd->add_option("--n-angular", acf.fcfg.n_angular);
    cmd->add_option("--n-radial", acf.fcfg.n_radial);
    cmd->add_option("--out", acf.out);
    add_config_file(cmd);
    cmd->callback([&acf]() { run_acf(acf); });
  }

  ProfileParams dbl;
  dbl.radii = {5.0, 10.0, 20.0};
  {
    CLI::App* cmd = add_cmd(app, "doubling", "trace doubling-ratio profile");
    add_profile_options(cmd, dbl, "doubling.csv");
    add_config_file(cmd);
    cmd->callback([&dbl]() { run_doubling(dbl); });
  }

  ProfileParams mat;
  mat.radii = {2.0, 5.0, 10.0, 20.0, 40.0};
  {
    CLI::App* cmd = add_cmd(app, "matching", "half-space profile projection");
    add_profile_options(cmd, mat, "matching.csv");
    add_config_file(cmd);
    cmd->callback([&mat]() { run_matching(mat); });
  }

  BlowdownParams blow;
  blow.profile.radii = {10.0, 20.0, 40.0, 80.0};
  {
    CLI::App* cmd = add_cmd(app, "blowdown", "projection coefficients across scales");
    add_profile_options(cmd, blow.profile, "blowdown.csv");
    cmd->add_option("--report-out", blow.report_out);
    add_config_file(cmd);
    cmd->callback([&blow]() { run_blowdown(blow); });
  }

  MatchParams match;
  {
    CLI::App* cmd = add_cmd(app, "match", "estimate gamma from the blow-down coefficient");
    cmd->add_option("--gamma", match.gamma)->check(CLI::PositiveNumber);
    cmd->add_option("--sigma", match.sigma);
    cmd->add_option("--abs-tol", match.abs_tol)->check(CLI::PositiveNumber);
    cmd->add_option("--alpha1", match.alpha1, "reference coefficient")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--radii", match.radii)->delimiter(',')->expected(1, -1);
    cmd->add_option("--n-angular", match.fcfg.n_angular);
    cmd->add_option("--out", match.out);
    cmd->add_option("--summary", match.summary);
    add_config_file(cmd);
    cmd->callback([&match]() { run_match(match); });
  }

  RegionsParams reg;
  {
    CLI::App* cmd = add_cmd(app, "regions", "sign regions of a sliding difference");
    cmd->add_option("--gamma", reg.gamma)->check(CLI::PositiveNumber);
    cmd->add_option("--sigma", reg.sigma);
    cmd->add_option("--abs-tol", reg.abs_tol)->check(CLI::PositiveNumber);
    add_box_options(cmd, reg.box);
    cmd->add_option("--min-size", reg.min_size, "smallest retained interior region")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--u-zero-tol", reg.u_zero_tol, "dead band (times h^2)");
    cmd->add_option("--out", reg.out);
    cmd->add_option("--summary", reg.summary);
    add_config_file(cmd);
    cmd->callback([&reg]() { run_regions(reg); });
  }

  std::vector<std::string> subcommand_names;
  for (const CLI::App* s : app.get_subcommands(nullptr)) subcommand_names.push_back(s->get_name());

  try {
    std::vector<std::string> args = expand_config_args(subcommand_names, argc, argv);
    std::reverse(args.begin(), args.end());  // parse(vector) wants reversed tokens
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const fblab::SolverNonConvergence& e) {
    json diag{{"schema", "fblab.diagnostic.v1"},
              {"error", "solver non-convergence"},
              {"iterations", e.iterations},
              {"residual", e.residual}};
    std::cout << diag.dump(2) << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    json diag{{"schema", "fblab.diagnostic.v1"}, {"error", e.what()}};
    std::cout << diag.dump(2) << "\n";
    return 2;
  }
  return 0;
}
