#pragma once

#include <functional>
#include <vector>

#include "biharm/radial_grid.hpp"
#include "biharm/radial_solver.hpp"

namespace biharm {

/// Radial field evaluable anywhere in [0, 1]: u, u', Delta u, (Delta u)'.
struct RadialProfile {
  std::function<double(double)> u;
  std::function<double(double)> du;
  std::function<double(double)> lap;
  std::function<double(double)> dlap;

  /// Piecewise cubic Hermite on (u, u') and (Delta u, (Delta u)').
  static RadialProfile from_solution(const RadialSolution& sol);
};

/// Piecewise cubic Hermite interpolant of nodal values and slopes.
class HermiteCurve {
 public:
  HermiteCurve(std::vector<double> x, std::vector<double> y, std::vector<double> dy);
  [[nodiscard]] double value(double t) const;
  [[nodiscard]] double slope(double t) const;

 private:
  [[nodiscard]] std::size_t cell(double t) const;
  std::vector<double> x_, y_, dy_;
};

/// Re-sample a solution onto another grid (Hermite), keeping lambda and bc.
/// Derivative arrays are copied from the interpolant; residual fields are
/// reset, so the result is only a Newton starting point.
RadialSolution transfer(const RadialSolution& sol, const RadialGrid& grid);

}  // namespace biharm
