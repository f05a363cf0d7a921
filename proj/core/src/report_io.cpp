#include "biharm/report_io.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>
#include <system_error>

#include <Eigen/Core>
#include <boost/version.hpp>
#include <fmt/format.h>

#include "json.hpp"

namespace biharm {
namespace {

using nlohmann::ordered_json;

// nlohmann writes non-finite doubles as null; keep them visible instead.
ordered_json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

ordered_json num_array(const std::vector<double>& v) {
  ordered_json a = ordered_json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

ordered_json config_json(const RunConfig& cfg) {
  ordered_json j = ordered_json::object();
  for (const auto& [section, keys] : cfg.resolved()) {
    ordered_json s = ordered_json::object();
    for (const auto& [k, v] : keys) s[k] = v;
    j[section] = std::move(s);
  }
  return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json boundary_terms_json(const BoundaryTerms& b) {
  return {{"half_lap_sq", num(b.half_lap_sq)},
          {"minus2_un_lap", num(b.minus2_un_lap)},
          {"lapn_xgradu", num(b.lapn_xgradu)},
          {"un_xgradlap", num(b.un_xgradlap)},
          {"gradlap_gradu_xn", num(b.gradlap_gradu_xn)},
          {"sum", num(b.sum())}};
}

ordered_json solver_summary(const RadialSolution& sol) {
  return {{"grid", sol.grid.describe()},
          {"n", sol.grid.size()},
          {"bc", to_string(sol.bc)},
          {"lambda", num(sol.lambda)},
          {"M", num(sol.M)},
          {"u0", num(sol.u.empty() ? 0.0 : sol.u.front())},
          {"residual_norm", num(sol.residual_norm)},
          {"residual_floor", num(sol.residual_floor)},
          {"newton_iters", sol.newton_iters},
          {"converged", sol.converged}};
}

}  // namespace

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(fmt::format("cannot open {} for writing", tmp.string()));
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error(fmt::format("write to {} failed", tmp.string()));
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error(fmt::format("rename {} -> {}: {}", tmp.string(), path.string(), ec.message()));
  }
}

std::string solution_csv(const RadialSolution& sol) {
  std::string out = "r,u,du,lap_u,dlap_u\n";
  const auto& r = sol.grid.nodes();
  for (std::size_t i = 0; i < r.size(); ++i) {
    out += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", r[i], sol.u[i], sol.du[i], sol.lap_u[i],
                       sol.dlap_u[i]);
  }
  return out;
}

std::string solution_json(const RadialSolution& sol, const RunConfig& cfg) {
  ordered_json j;
  j["kind"] = "solution";
  j["config"] = config_json(cfg);
  j["solution"] = solver_summary(sol);
  j["monotonicity"] = [&] {
    const auto m = monotonicity_check(sol);
    return ordered_json{{"max_du_strip", num(m.max_du_strip)}, {"max_du_all", num(m.max_du_all)}, {"passed", m.passed()}};
  }();
  return dump(j);
}

std::string branch_csv(const SolutionBranch& branch) {
  std::string out = "M,lambda,energy,mu,fold\n";
  for (const auto& p : branch.points) {
    out += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{}\n", p.M, p.lambda, p.energy, p.mu, p.fold ? 1 : 0);
  }
  return out;
}

std::string branch_json(const SolutionBranch& branch, const BranchEnergy& energy, const RunConfig& cfg) {
  ordered_json j;
  j["kind"] = "branch";
  j["config"] = config_json(cfg);
  j["points"] = branch.points.size();
  j["truncated"] = branch.truncated;
  j["diagnostic"] = branch.diagnostic;
  j["fold_count"] = branch.fold_count();
  j["energy_sup"] = num(energy.sup);
  bool monotone = true;
  for (const auto& p : branch.points) monotone = monotone && p.monotone;
  j["monotone_everywhere"] = monotone;
  if (!branch.points.empty()) j["last"] = solver_summary(branch.points.back().solution);
  return dump(j);
}

std::string blowup_json(const BlowupReport& r, const GradientLpCheck* gradient, const RunConfig& cfg) {
  ordered_json j;
  j["kind"] = "blowup";
  j["config"] = config_json(cfg);
  j["M"] = num(r.M);
  j["mu"] = num(r.mu);
  j["lambda"] = num(r.lambda);
  j["beta"] = num(r.beta);
  j["a_inf"] = num(r.a_inf);
  j["R_max"] = num(r.R_max);
  j["truncated"] = r.truncated;
  j["subcritical"] = r.subcritical;
  j["deviation_sup"] = num(r.deviation_sup);
  j["theta_target"] = num(r.theta_target);
  j["fraction_expected"] = num(r.fraction_expected);
  j["fraction_canonical"] = num(r.fraction_canonical);
  ordered_json le = ordered_json::array();
  for (const auto& [R, v] : r.local_energy) {
    le.push_back({{"R", num(R)}, {"energy", num(v)}, {"fraction", num(r.theta_target > 0 ? v / r.theta_target : 0.0)}});
  }
  j["local_energy"] = std::move(le);
  j["surrogate"] = r.surrogate;
  if (gradient) {
    j["gradient_Lp"] = {{"order", gradient->coarse.order},
                        {"p", num(gradient->coarse.p)},
                        {"C_coarse", num(gradient->coarse.C)},
                        {"C_fine", num(gradient->fine.C)},
                        {"ratio", num(gradient->ratio)},
                        {"passed", gradient->passed()}};
  }
  j["profile"] = {{"rho", num_array(r.rho)}, {"v", num_array(r.v)}, {"v_bubble", num_array(r.v_bubble)}};
  return dump(j);
}

std::string pohozaev_json(const std::vector<std::pair<std::string, PohozaevReport>>& reports,
                          const RunConfig& cfg) {
  ordered_json j;
  j["kind"] = "pohozaev";
  j["config"] = config_json(cfg);
  ordered_json list = ordered_json::array();
  for (const auto& [label, r] : reports) {
    ordered_json e;
    e["domain"] = label;
    e["y"] = num(r.y);
    e["rho"] = num(r.rho);
    e["volume_H_term"] = num(r.volume_H_term);
    e["volume_gradH_term"] = num(r.volume_gradH_term);
    e["boundary_H_term"] = num(r.boundary_H_term);
    e["b"] = boundary_terms_json(r.b_terms);
    e["lhs"] = num(r.lhs());
    e["rhs"] = num(r.rhs());
    e["residual"] = num(r.residual);
    e["relative_residual"] = num(r.relative_residual);
    ordered_json pieces = ordered_json::array();
    for (const auto& p : r.pieces) {
      pieces.push_back({{"name", p.name}, {"boundary_H_term", num(p.boundary_H_term)}, {"b", boundary_terms_json(p.b)}});
    }
    e["pieces"] = std::move(pieces);
    list.push_back(std::move(e));
  }
  j["reports"] = std::move(list);
  return dump(j);
}

std::string green_samples_csv(const std::vector<GreenSample>& samples) {
  std::string out = "dist,G,bound,ratio\n";
  for (const auto& s : samples) {
    out += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}\n", s.dist, s.G, s.bound, s.G / s.bound);
  }
  return out;
}

std::string green_json(const TwoSidedReport& t, const GradientEstimateReport& g, const RunConfig& cfg) {
  ordered_json j;
  j["kind"] = "green";
  j["config"] = config_json(cfg);
  j["two_sided"] = {{"samples", t.samples},
                    {"R_min", num(t.R_min)},
                    {"R_max", num(t.R_max)},
                    {"ratio", num(t.R_max / t.R_min)},
                    {"passed", t.passed()}};
  j["gradient"] = {{"samples", g.samples},
                   {"fd_step", num(g.fd_step)},
                   {"sup_grad_dist", num(g.sup_grad_dist)},
                   {"sup_grad_dist_half", num(g.sup_grad_dist_half)},
                   {"sup_value_log", num(g.sup_value_log)},
                   {"sup_value_log_half", num(g.sup_value_log_half)},
                   {"max_fd_error", num(g.max_fd_error)},
                   {"passed", g.passed()}};
  return dump(j);
}

std::string counterexample_csv(const CounterexampleParams& p, const std::vector<double>& ell_grid) {
  std::ostringstream os;
  write_counterexample_csv(os, p, ell_grid);
  return os.str();
}

std::string counterexample_json(const CounterexampleParams& p, const CounterexampleCertificate& c,
                                const RunConfig& cfg) {
  ordered_json j;
  j["kind"] = "counterexample";
  j["config"] = config_json(cfg);
  j["params"] = {{"alpha", num(p.alpha)},   {"gamma", num(p.gamma)},   {"delta", num(p.delta)},
                 {"ell_rho", num(p.ell_rho)}, {"x0", num(p.x0)},       {"y0", num(p.y0)},
                 {"x", num(p.x)},           {"y", num(p.y)},           {"A", num(p.A)},
                 {"B_rho2", num(p.B_rho2)}, {"beta", num(p.beta)},     {"beta_ratio", num(p.beta_ratio)},
                 {"value_residual", num(p.value_residual)}, {"slope_residual", num(p.slope_residual)}};
  ordered_json clauses = ordered_json::array();
  for (const auto& cl : c.clauses) {
    ordered_json e{{"name", cl.name}, {"passed", cl.passed}, {"detail", cl.detail}};
    if (cl.witness_ell) e["witness_ell"] = num(*cl.witness_ell);
    clauses.push_back(std::move(e));
  }
  j["clauses"] = std::move(clauses);
  j["summary"] = {{"min_bilap_r4", num(c.min_bilap_r4)},
                  {"ell_star", num(c.ell_star)},
                  {"w_growth_ratio", num(c.w_growth_ratio)},
                  {"min_log_a", num(c.min_log_a)},
                  {"max_log_a", num(c.max_log_a)},
                  {"a_limit", num(a_limit(p.alpha))},
                  {"w_at_rho", num(c.w_at_rho)},
                  {"dw_at_rho", num(c.dw_at_rho)},
                  {"max_identity_residual", num(c.max_identity_residual)},
                  {"min_fprime", num(c.min_fprime)},
                  {"max_fprime", num(c.max_fprime)},
                  {"max_h2", num(c.max_h2)}};
  j["passed"] = c.passed();
  return dump(j);
}

std::string blowup_file_name(double M) {
  if (M == std::floor(M) && std::fabs(M) < 1e15) return fmt::format("blowup_{}.json", static_cast<long long>(M));
  return fmt::format("blowup_{}.json", M);
}

std::string run_manifest_json(const std::string& command, const RunConfig& cfg,
                              const std::vector<ManifestEntry>& files, double wall_seconds, int exit_code) {
  ordered_json j;
  j["command"] = command;
  j["config_source"] = cfg.source;
  j["config"] = config_json(cfg);
  j["versions"] = {{"biharm", BIHARM_VERSION},
                   {"compiler", __VERSION__},
                   {"eigen", fmt::format("{}.{}.{}", EIGEN_WORLD_VERSION, EIGEN_MAJOR_VERSION, EIGEN_MINOR_VERSION)},
                   {"boost", BOOST_LIB_VERSION},
                   {"fmt", FMT_VERSION}};
  ordered_json fl = ordered_json::array();
  for (const auto& f : files) fl.push_back({{"file", f.file}, {"bytes", f.bytes}});
  j["files"] = std::move(fl);
  j["exit_code"] = exit_code;
  j["wall_seconds"] = wall_seconds;
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  j["finished_utc"] = buf;
  return dump(j);
}

}  // namespace biharm
