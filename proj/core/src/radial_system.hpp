#pragma once

// Discrete coupled system shared by the plain solver and the branch tracer.
// Unknown vector z = [u_0, v_0, u_1, v_1, ..., u_{n-1}, v_{n-1}] (+ lambda
// when bordered).

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/SparseCore>

#include "biharm/nonlinearity.hpp"
#include "biharm/radial_grid.hpp"
#include "biharm/radial_solver.hpp"

namespace biharm::detail {

// Row weights on nodes i-2 .. i+2.
struct Stencil {
  double w[5] = {0.0, 0.0, 0.0, 0.0, 0.0};
};

class RadialSystem {
 public:
  RadialSystem(const NonlinearitySpec& spec, BoundaryCondition bc, const RadialGrid& grid,
               std::optional<double> target_M);

  [[nodiscard]] bool bordered() const { return target_M_.has_value(); }
  [[nodiscard]] std::size_t unknowns() const { return 2 * n_ + (bordered() ? 1 : 0); }

  /// Residual into F; returns the largest absolute single term (roundoff scale).
  double residual(const Eigen::VectorXd& z, double lambda, Eigen::VectorXd& F) const;
  Eigen::SparseMatrix<double> jacobian(const Eigen::VectorXd& z, double lambda) const;

  /// First-derivative values of w at every node from the residual stencils
  /// (0 at the origin, one-sided at r = 1).
  [[nodiscard]] std::vector<double> derivative(const std::vector<double>& w) const;

  [[nodiscard]] std::size_t n() const { return n_; }

 private:
  const NonlinearitySpec& spec_;
  BoundaryCondition bc_;
  const RadialGrid& grid_;
  std::optional<double> target_M_;
  std::size_t n_;
  std::vector<Stencil> lap_;    // h- h+ scaled Laplacian rows, interior
  std::vector<double> scale_;   // h- h+ per interior node
  std::vector<double> a_;       // potential at nodes
  double origin_w1_, origin_w2_, origin_w0_;  // r1^2 * Delta w(0) weights
  double origin_scale_;
  double bnd_m3_, bnd_m2_, bnd_m1_, bnd_0_;  // one-sided u'(1) weights
};

struct NewtonOutcome {
  Eigen::VectorXd z;
  double lambda;
  double residual;
  double floor;
  int iters;
};

/// Damped Newton. Throws NoConvergence / SingularJacobian; the caller
/// converts the iterate into a RadialSolution.
NewtonOutcome newton(const RadialSystem& sys, Eigen::VectorXd z, double lambda,
                     const SolverConfig& cfg, const std::function<RadialSolution(const Eigen::VectorXd&, double, double, int)>& pack);

RadialSolution pack_solution(const RadialSystem& sys, const RadialGrid& grid,
                             BoundaryCondition bc, const Eigen::VectorXd& z, double lambda,
                             double residual, double floor, int iters);

}  // namespace biharm::detail
