#pragma once

#include <string>
#include <vector>

#include "biharm/nonlinearity.hpp"
#include "biharm/radial_solver.hpp"

namespace biharm {

struct BranchPoint {
  RadialSolution solution;
  double lambda = 0.0;
  double M = 0.0;
  double energy = 0.0;
  double mu = 0.0;
  bool fold = false;
  bool monotone = true;
};

struct SolutionBranch {
  std::vector<BranchPoint> points;
  bool truncated = false;
  std::string diagnostic;
  [[nodiscard]] int fold_count() const;
  [[nodiscard]] bool empty() const { return points.empty(); }
};

/// mu = (lambda a(0) f(M))^{-1/4}, evaluated in log space.
double rescaling_mu(const NonlinearitySpec& spec, double lambda, double M);

/// Max-norm continuation: for M from M_start to M_end solves the bordered
/// system {PDE = 0, u(0) = M} for (u, lambda), warm-started by secant
/// extrapolation. Steps halve on failure down to dM/16 and double back
/// after three easy points. Points below M_start are solved but not kept.
SolutionBranch trace(const NonlinearitySpec& spec, BoundaryCondition bc, const RadialGrid& grid,
                     const SolverConfig& config, double M_start, double M_end, double dM);

struct BranchEnergy {
  std::vector<double> energy;
  double sup = 0.0;  // empirical Lambda
};
BranchEnergy energy_along_branch(const SolutionBranch& branch, const NonlinearitySpec& spec);

}  // namespace biharm
