#include "biharm/radial_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "biharm/finite_difference.hpp"
#include "biharm/quadrature.hpp"
#include "radial_system.hpp"

namespace biharm {

std::string to_string(BoundaryCondition bc) {
  return bc == BoundaryCondition::Dirichlet ? "dirichlet" : "navier";
}

BoundaryCondition boundary_condition_from_string(const std::string& name) {
  if (name == "dirichlet") return BoundaryCondition::Dirichlet;
  if (name == "navier") return BoundaryCondition::Navier;
  throw std::invalid_argument(fmt::format("unknown boundary condition '{}'", name));
}

std::string to_string(Damping d) { return d == Damping::None ? "none" : "halving"; }

Damping damping_from_string(const std::string& name) {
  if (name == "none") return Damping::None;
  if (name == "halving") return Damping::LineSearchHalving;
  throw std::invalid_argument(fmt::format("unknown damping '{}'", name));
}

void SolverConfig::validate() const {
  if (!(newton_tol > 0.0)) throw std::invalid_argument("newton_tol must be > 0");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (max_halvings < 0) throw std::invalid_argument("max_halvings must be >= 0");
}

namespace {

Eigen::VectorXd initial_vector(std::size_t n, const std::optional<RadialSolution>& init,
                               bool bordered, double lambda) {
  Eigen::VectorXd z = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(2 * n + (bordered ? 1 : 0)));
  if (init) {
    if (init->u.size() != n || init->lap_u.size() != n) {
      throw std::invalid_argument("initial guess lives on a different grid");
    }
    for (std::size_t i = 0; i < n; ++i) {
      z[2 * i] = init->u[i];
      z[2 * i + 1] = init->lap_u[i];
    }
  }
  if (bordered) z[2 * n] = lambda;
  return z;
}

RadialSolution run(const NonlinearitySpec& spec, double lambda, BoundaryCondition bc,
                   const RadialGrid& grid, const SolverConfig& config,
                   const std::optional<RadialSolution>& init, std::optional<double> target_M) {
  config.validate();
  detail::RadialSystem sys(spec, bc, grid, target_M);
  auto pack = [&](const Eigen::VectorXd& z, double res, double floor, int it) {
    return detail::pack_solution(sys, grid, bc, z, lambda, res, floor, it);
  };
  auto z0 = initial_vector(grid.size(), init, target_M.has_value(),
                           target_M ? (init ? init->lambda : 0.0) : lambda);
  const auto out = detail::newton(sys, std::move(z0), lambda, config, pack);
  auto sol = pack(out.z, out.residual, out.floor, out.iters);
  sol.converged = true;
  return sol;
}

}  // namespace

RadialSolution solve(const NonlinearitySpec& spec, double lambda, BoundaryCondition bc,
                     const RadialGrid& grid, const SolverConfig& config,
                     const std::optional<RadialSolution>& init) {
  if (!(lambda >= 0.0)) throw std::invalid_argument(fmt::format("lambda must be >= 0, got {}", lambda));
  return run(spec, lambda, bc, grid, config, init, std::nullopt);
}

RadialSolution solve_at_max(const NonlinearitySpec& spec, double M, BoundaryCondition bc,
                            const RadialGrid& grid, const SolverConfig& config,
                            const RadialSolution& init) {
  return run(spec, init.lambda, bc, grid, config, init, M);
}

double solution_energy(const RadialSolution& sol, const NonlinearitySpec& spec) {
  const auto& r = sol.grid.nodes();
  std::vector<double> y(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    y[i] = r[i] * r[i] * r[i] * sol.lambda * spec.potential()(r[i]) *
           eval_f_extended(spec, sol.u[i]).first;
  }
  return 2.0 * std::numbers::pi * std::numbers::pi * simpson_nonuniform(r, y);
}

MonotonicityReport monotonicity_check(const RadialSolution& sol) {
  MonotonicityReport rep;
  rep.max_du_strip = -std::numeric_limits<double>::infinity();
  rep.max_du_all = -std::numeric_limits<double>::infinity();
  const auto& r = sol.grid.nodes();
  for (std::size_t i = 1; i < r.size(); ++i) {
    rep.max_du_all = std::max(rep.max_du_all, sol.du[i]);
    if (r[i] >= 0.5) rep.max_du_strip = std::max(rep.max_du_strip, sol.du[i]);
  }
  return rep;
}

double radial_bilaplacian_at(double r, double d1, double d2, double d3, double d4) {
  if (!(r > 0.0)) throw std::domain_error("radial_bilaplacian_at needs r > 0; use the origin limit");
  return d4 + 6.0 * d3 / r + 3.0 * d2 / (r * r) - 3.0 * d1 / (r * r * r);
}

std::vector<double> radial_bilaplacian(const std::function<double(double)>& u,
                                       std::span<const double> r, bool even, double h) {
  std::vector<double> out;
  out.reserve(r.size());
  std::function<double(double)> g = u;
  if (even) g = [&u](double s) { return u(std::fabs(s)); };
  for (double ri : r) {
    const double step = h > 0.0 ? h : 0.02 * std::max(1.0, ri);
    if (ri == 0.0) {
      if (!even) throw std::domain_error("bilaplacian at r = 0 needs even-parity data");
      out.push_back(radial_bilaplacian_origin(central_derivative(g, 0.0, step, 4)));
      continue;
    }
    if (!even && ri - 4 * step <= 0.0) {
      throw std::domain_error(fmt::format("stencil at r = {} crosses the origin", ri));
    }
    out.push_back(radial_bilaplacian_at(ri, central_derivative(g, ri, step, 1),
                                        central_derivative(g, ri, step, 2),
                                        central_derivative(g, ri, step, 3),
                                        central_derivative(g, ri, step, 4)));
  }
  return out;
}

std::vector<double> radial_bilaplacian(std::span<const double> r, std::span<const double> d1,
                                       std::span<const double> d2, std::span<const double> d3,
                                       std::span<const double> d4) {
  if (d1.size() != r.size() || d2.size() != r.size() || d3.size() != r.size() ||
      d4.size() != r.size()) {
    throw std::invalid_argument("radial_bilaplacian: derivative arrays differ in length");
  }
  std::vector<double> out(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    out[i] = r[i] == 0.0 ? radial_bilaplacian_origin(d4[i])
                         : radial_bilaplacian_at(r[i], d1[i], d2[i], d3[i], d4[i]);
  }
  return out;
}

}  // namespace biharm
