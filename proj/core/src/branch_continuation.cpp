#include "biharm/branch_continuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace biharm {

int SolutionBranch::fold_count() const {
  return static_cast<int>(std::count_if(points.begin(), points.end(),
                                        [](const BranchPoint& p) { return p.fold; }));
}

double rescaling_mu(const NonlinearitySpec& spec, double lambda, double M) {
  if (!(lambda > 0.0)) return std::numeric_limits<double>::infinity();
  const auto f = eval_f(spec, std::max(M, 0.0));
  if (f.is_zero()) return std::numeric_limits<double>::infinity();
  const double log_prod = std::log(lambda) + std::log(spec.potential()(0.0)) + f.log_abs();
  return std::exp(-0.25 * log_prod);
}

namespace {

RadialSolution zero_solution(const RadialGrid& grid, BoundaryCondition bc) {
  RadialSolution s;
  s.grid = grid;
  s.bc = bc;
  const std::size_t n = grid.size();
  s.u.assign(n, 0.0);
  s.du.assign(n, 0.0);
  s.lap_u.assign(n, 0.0);
  s.dlap_u.assign(n, 0.0);
  return s;
}

// z1 + t (z1 - z0) on u, Delta u and lambda.
RadialSolution extrapolate(const RadialSolution& s0, const RadialSolution& s1, double t) {
  RadialSolution p = s1;
  for (std::size_t i = 0; i < p.u.size(); ++i) {
    p.u[i] = s1.u[i] + t * (s1.u[i] - s0.u[i]);
    p.lap_u[i] = s1.lap_u[i] + t * (s1.lap_u[i] - s0.lap_u[i]);
  }
  p.lambda = s1.lambda + t * (s1.lambda - s0.lambda);
  return p;
}

}  // namespace

SolutionBranch trace(const NonlinearitySpec& spec, BoundaryCondition bc, const RadialGrid& grid,
                     const SolverConfig& config, double M_start, double M_end, double dM) {
  if (!(M_start <= M_end)) {
    throw std::invalid_argument(fmt::format("trace: M_start = {} exceeds M_end = {}", M_start, M_end));
  }
  if (!(dM > 0.0)) throw std::invalid_argument("trace: dM must be positive");
  if (!(M_start >= 0.0)) throw std::invalid_argument("trace: M_start must be >= 0");
  if (eval_f(spec, 0.0).is_zero()) {
    throw std::invalid_argument("trace: continuation from the trivial branch needs f(0) > 0");
  }

  SolutionBranch branch;
  const double min_step = dM / 16.0;
  auto accept = [&](const RadialSolution& s) {
    if (s.M < M_start - 1e-12 * std::max(1.0, M_start)) return;
    BranchPoint p;
    p.solution = s;
    p.lambda = s.lambda;
    p.M = s.M;
    p.energy = solution_energy(s, spec);
    p.mu = rescaling_mu(spec, s.lambda, s.M);
    p.monotone = bc != BoundaryCondition::Dirichlet || monotonicity_check(s).passed();
    branch.points.push_back(std::move(p));
  };

  // u = 0, lambda = 0 is the M = 0 member of every branch with f(0) > 0.
  RadialSolution prev = zero_solution(grid, bc);
  RadialSolution prev2 = prev;
  bool have_secant = false;
  accept(prev);

  double M = 0.0;
  double step = dM;
  int easy = 0;
  while (M < M_end - 1e-12 * std::max(1.0, M_end)) {
    // Land exactly on M_start and M_end.
    double target = M + step;
    if (M < M_start && target > M_start) target = M_start;
    if (target > M_end) target = M_end;
    const double h = target - M;

    RadialSolution guess = prev;
    if (have_secant) guess = extrapolate(prev2, prev, h / (prev.M - prev2.M));
    try {
      RadialSolution s = solve_at_max(spec, target, bc, grid, config, guess);
      prev2 = prev;
      prev = s;
      have_secant = true;
      M = target;
      accept(s);
      if (!branch.points.empty() && !branch.points.back().monotone) {
        branch.truncated = true;
        branch.diagnostic =
            fmt::format("monotonicity check failed at M = {}; u(0) no longer the maximum", M);
        break;
      }
      if (s.newton_iters <= 4 && ++easy >= 3 && step < dM) {
        step = std::min(2.0 * step, dM);
        easy = 0;
      }
    } catch (const std::runtime_error& e) {
      easy = 0;
      if (step / 2.0 < min_step * (1.0 - 1e-12)) {
        branch.truncated = true;
        branch.diagnostic = fmt::format("Newton failed at M = {} with step {}: {}", target, step, e.what());
        break;
      }
      step /= 2.0;
    }
  }

  auto& pts = branch.points;
  for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
    const double d0 = pts[k].lambda - pts[k - 1].lambda;
    const double d1 = pts[k + 1].lambda - pts[k].lambda;
    pts[k].fold = d0 * d1 < 0.0;
  }
  return branch;
}

BranchEnergy energy_along_branch(const SolutionBranch& branch, const NonlinearitySpec& spec) {
  if (branch.empty()) throw std::invalid_argument("energy_along_branch: empty branch");
  BranchEnergy out;
  for (const auto& p : branch.points) {
    out.energy.push_back(solution_energy(p.solution, spec));
    out.sup = std::max(out.sup, out.energy.back());
  }
  return out;
}

}  // namespace biharm
