// biharm: batch front-end. One subcommand per module, one config file each.
//   exit 0  success (verify-all: every criterion passed)
//   exit 1  a computation failed or a criterion failed
//   exit 2  bad command line or config

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "biharm/acceptance.hpp"
#include "biharm/blowup_analysis.hpp"
#include "biharm/branch_continuation.hpp"
#include "biharm/config.hpp"
#include "biharm/counterexample.hpp"
#include "biharm/green_kernels.hpp"
#include "biharm/pohozaev.hpp"
#include "biharm/radial_profile.hpp"
#include "biharm/radial_solver.hpp"
#include "biharm/report_io.hpp"

namespace fs = std::filesystem;
using namespace biharm;

namespace {

class Outputs {
 public:
  explicit Outputs(const RunConfig& cfg) : cfg_(cfg) {}

  void put(const std::string& name, const std::string& data) {
    const bool is_csv = name.size() > 4 && name.compare(name.size() - 4, 4, ".csv") == 0;
    if (is_csv ? !cfg_.output.csv : !cfg_.output.json) return;
    write_file_atomic(cfg_.output.dir / name, data);
    files_.push_back({name, data.size()});
  }

  void manifest(const std::string& command, double seconds, int code) const {
    write_file_atomic(cfg_.output.dir / "run.json", run_manifest_json(command, cfg_, files_, seconds, code));
  }

 private:
  const RunConfig& cfg_;
  std::vector<ManifestEntry> files_;
};

int cmd_solve(const RunConfig& cfg, Outputs& out) {
  const auto spec = cfg.nonlinearity.build();
  const auto sol = solve(spec, cfg.solver.lambda, cfg.solver.boundary(), cfg.solver.build_grid(),
                         cfg.solver.build_config());
  out.put("solution.csv", solution_csv(sol));
  out.put("solution.json", solution_json(sol, cfg));
  fmt::print("u(0) = {:.12f}, {} Newton iterations, residual {:.2e}\n", sol.u.front(), sol.newton_iters,
             sol.residual_norm);
  return 0;
}

SolutionBranch trace_from(const RunConfig& cfg, const NonlinearitySpec& spec, double M_end) {
  return trace(spec, cfg.solver.boundary(), cfg.solver.build_grid(), cfg.solver.build_config(), cfg.branch.M_start,
               M_end, cfg.branch.dM);
}

int cmd_branch(const RunConfig& cfg, Outputs& out) {
  const auto spec = cfg.nonlinearity.build();
  const auto branch = trace_from(cfg, spec, cfg.branch.M_end);
  const auto energy = energy_along_branch(branch, spec);
  out.put("branch.csv", branch_csv(branch));
  out.put("branch.json", branch_json(branch, energy, cfg));
  fmt::print("{} points, {} folds, energy sup {:.6f}{}\n", branch.points.size(), branch.fold_count(), energy.sup,
             branch.truncated ? " (truncated: " + branch.diagnostic + ")" : "");
  return branch.truncated ? 1 : 0;
}

int cmd_blowup(const RunConfig& cfg, Outputs& out) {
  const auto spec = cfg.nonlinearity.build();
  const double M_top = *std::max_element(cfg.blowup.at_M.begin(), cfg.blowup.at_M.end());
  const auto branch = trace_from(cfg, spec, std::max(M_top, cfg.branch.M_start));
  if (branch.empty()) {
    fmt::print(stderr, "branch is empty: {}\n", branch.diagnostic);
    return 1;
  }
  int code = 0;
  for (double M : cfg.blowup.at_M) {
    const BranchPoint* below = nullptr;
    for (const auto& p : branch.points) {
      if (p.M <= M + 1e-12) below = &p;
    }
    if (!below) {
      fmt::print(stderr, "M = {} lies below the traced branch\n", M);
      code = 1;
      continue;
    }
    RadialSolution sol = below->solution;
    if (std::fabs(below->M - M) > 1e-12) {
      sol = solve_at_max(spec, M, cfg.solver.boundary(), sol.grid, cfg.solver.build_config(), sol);
    }
    const auto report = rescale(sol, spec, sol.lambda, cfg.blowup.R_max, cfg.blowup.samples);
    std::optional<GradientLpCheck> grad;
    if (!report.subcritical) grad = gradient_Lp_check(sol, spec, 2, 1.0, {}, cfg.solver.build_config());
    out.put(blowup_file_name(M), blowup_json(report, grad ? &*grad : nullptr, cfg));
    fmt::print("M = {}: mu = {:.4e}, sup|v - bubble| = {:.4e}\n", M, report.mu, report.deviation_sup);
  }
  return code;
}

int cmd_pohozaev(const RunConfig& cfg, Outputs& out) {
  const auto spec = cfg.nonlinearity.build();
  const double lambda = cfg.solver.lambda;
  const auto sol = solve(spec, lambda, cfg.solver.boundary(), cfg.solver.build_grid(), cfg.solver.build_config());
  std::vector<std::pair<std::string, PohozaevReport>> reports;
  reports.emplace_back("ball", pohozaev_ball(sol, spec, lambda, cfg.pohozaev.y_offset));
  if (cfg.pohozaev.r_inner > 0.0) {
    reports.emplace_back("sub_ball", pohozaev_annulus(sol, spec, lambda, cfg.pohozaev.x0_offset, cfg.pohozaev.r_inner));
  }
  out.put("pohozaev.json", pohozaev_json(reports, cfg));
  for (const auto& [label, r] : reports) {
    fmt::print("{}: LHS {:.10g}, RHS {:.10g}, relative residual {:.3e}\n", label, r.lhs(), r.rhs(), r.relative_residual);
  }
  return 0;
}

int cmd_green(const RunConfig& cfg, Outputs& out) {
  const auto two = verify_two_sided_estimate(cfg.green.samples, cfg.green.seed);
  const auto grad = verify_gradient_estimate(cfg.green.samples, cfg.green.fd_step, cfg.green.seed);
  out.put("green_samples.csv", green_samples_csv(green_samples(cfg.green.samples, cfg.green.seed)));
  out.put("green.json", green_json(two, grad, cfg));
  fmt::print("R_max/R_min = {:.4f}; gradient bound {}\n", two.R_max / two.R_min, grad.passed() ? "stable" : "UNSTABLE");
  return two.passed() && grad.passed() ? 0 : 1;
}

int cmd_counterexample(const RunConfig& cfg, Outputs& out) {
  const auto& c = cfg.counterexample;
  const auto p = params_for_rho(c.alpha, c.ell_rho);
  const auto grid = geometric_ell_grid(c.ell_rho, c.ell_max, c.grid_points);
  const auto cert = certify(p, grid);
  out.put("counterexample.csv", counterexample_csv(p, grid));
  out.put("counterexample.json", counterexample_json(p, cert, cfg));
  for (const auto& cl : cert.clauses) fmt::print("{} {}: {}\n", cl.passed ? "ok  " : "FAIL", cl.name, cl.detail);
  return cert.passed() ? 0 : 1;
}

int cmd_verify_all(const RunConfig& cfg, Outputs& out) {
  AcceptanceOptions opt;
  opt.config = cfg;
  opt.seed = cfg.green.seed;
  const auto run = run_acceptance(opt);
  for (const auto& r : run.results) fmt::print("{}\n", format_result_line(r));
  for (const auto& [name, data] : run.payloads) out.put(name, data);
  const auto passed = std::count_if(run.results.begin(), run.results.end(), [](const auto& r) { return r.passed; });
  fmt::print("{}/{} criteria passed\n", passed, run.results.size());
  return run.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial solvers and diagnostics for fourth-order Liouville-type problems on the unit ball of R^4"};
  app.require_subcommand(1);
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;

  using Handler = int (*)(const RunConfig&, Outputs&);
  const std::vector<std::tuple<std::string, std::string, Handler>> commands = {
      {"solve", "single radial solve -> solution.csv", cmd_solve},
      {"branch", "continuation in M = u(0) -> branch.csv", cmd_branch},
      {"blowup", "rescaled profiles at [blowup] at_M -> blowup_<M>.json", cmd_blowup},
      {"pohozaev", "Pohozaev balance on the ball or a sub-ball -> pohozaev.json", cmd_pohozaev},
      {"green", "kernel sampling and estimates -> green_samples.csv", cmd_green},
      {"counterexample", "explicit potential certificate -> counterexample.csv", cmd_counterexample},
      {"verify-all", "full acceptance suite; exit 0 iff every criterion passes", cmd_verify_all},
  };
  std::vector<std::pair<CLI::App*, Handler>> subs;
  for (const auto& [name, help, fn] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("config", config_path, "INI config file")->required();
    sub->add_option("--seed", seed, "override [green] seed");
    sub->add_option("--out-dir", out_dir, "override [output] dir");
    subs.emplace_back(sub, fn);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  RunConfig cfg;
  try {
    cfg = load_config(config_path);
  } catch (const ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return 2;
  }
  if (seed) cfg.green.seed = *seed;
  if (out_dir) cfg.output.dir = *out_dir;

  for (const auto& [sub, fn] : subs) {
    if (!sub->parsed()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outputs out(cfg);
    int code = 1;
    try {
      code = fn(cfg, out);
    } catch (const std::exception& e) {
      fmt::print(stderr, "{} failed: {}\n", sub->get_name(), e.what());
      code = 1;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    try {
      out.manifest(sub->get_name(), secs, code);
    } catch (const std::exception& e) {
      fmt::print(stderr, "cannot write run.json: {}\n", e.what());
      return 1;
    }
    return code;
  }
  return 2;
}
