#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "biharm/nonlinearity.hpp"
#include "biharm/radial_grid.hpp"

namespace biharm {

enum class BoundaryCondition { Dirichlet, Navier };
std::string to_string(BoundaryCondition bc);
BoundaryCondition boundary_condition_from_string(const std::string& name);

enum class Damping { None, LineSearchHalving };
std::string to_string(Damping d);
Damping damping_from_string(const std::string& name);

struct SolverConfig {
  double newton_tol = 1e-10;
  int max_iters = 50;
  Damping damping = Damping::LineSearchHalving;
  int max_halvings = 20;
  void validate() const;
};

/// Radial field on [0, 1] with u, u', Delta u and (Delta u)' at the nodes.
struct RadialSolution {
  RadialGrid grid;
  std::vector<double> u;
  std::vector<double> du;
  std::vector<double> lap_u;
  std::vector<double> dlap_u;
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  double lambda = 0.0;
  double M = 0.0;
  /// Max-norm of the row-scaled discrete system at the returned iterate.
  double residual_norm = 0.0;
  /// Roundoff level of that residual (16 eps times the largest row term);
  /// convergence is declared at max(newton_tol, residual_floor).
  double residual_floor = 0.0;
  int newton_iters = 0;
  /// Set only by a successful solve; best iterates and transfers leave it false.
  bool converged = false;
};

class NoConvergence : public std::runtime_error {
 public:
  NoConvergence(const std::string& what, RadialSolution best)
      : std::runtime_error(what), best_(std::move(best)) {}
  [[nodiscard]] const RadialSolution& best_iterate() const { return best_; }

 private:
  RadialSolution best_;
};

class SingularJacobian : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Newton solve of Delta u = v, Delta v = lambda h(r, u) on grid.
RadialSolution solve(const NonlinearitySpec& spec, double lambda, BoundaryCondition bc,
                     const RadialGrid& grid, const SolverConfig& config = {},
                     const std::optional<RadialSolution>& init = std::nullopt);

/// Same system with lambda unknown and u(0) = M imposed (one bordered row).
RadialSolution solve_at_max(const NonlinearitySpec& spec, double M, BoundaryCondition bc,
                            const RadialGrid& grid, const SolverConfig& config,
                            const RadialSolution& init);

/// 2 pi^2 int_0^1 r^3 lambda h(r, u) dr, composite Simpson on the solution grid.
double solution_energy(const RadialSolution& sol, const NonlinearitySpec& spec);

struct MonotonicityReport {
  double max_du_strip = 0.0;  // over r in [0.5, 1]
  double max_du_all = 0.0;    // over (0, 1]
  double tolerance = 1e-8;
  [[nodiscard]] bool passed() const { return max_du_strip <= tolerance; }
};
MonotonicityReport monotonicity_check(const RadialSolution& sol);

/// Delta^2 u = u'''' + 6u'''/r + 3u''/r^2 - 3u'/r^3 at r > 0.
double radial_bilaplacian_at(double r, double d1, double d2, double d3, double d4);
/// Even-parity limit at the origin: 8 u''''(0).
inline double radial_bilaplacian_origin(double d4) { return 8.0 * d4; }

/// Delta^2 u at each r from a closure, via 8th-order centered differences
/// with step `h` (0 picks 0.02 max(1, r)). `even` declares u(-r) = u(r) so
/// stencils may cross the origin; r = 0 without it throws.
std::vector<double> radial_bilaplacian(const std::function<double(double)>& u,
                                       std::span<const double> r, bool even, double h = 0.0);

/// Same from derivative arrays; r[i] == 0 entries use 8 d4[i].
std::vector<double> radial_bilaplacian(std::span<const double> r, std::span<const double> d1,
                                       std::span<const double> d2, std::span<const double> d3,
                                       std::span<const double> d4);

}  // namespace biharm
