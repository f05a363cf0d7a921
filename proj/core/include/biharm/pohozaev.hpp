#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "biharm/nonlinearity.hpp"
#include "biharm/radial_solver.hpp"

namespace biharm {

/// Remaining boundary terms b(y, u), each with its sign included.
struct BoundaryTerms {
  double half_lap_sq = 0.0;        //  1/2 int (Lap u)^2 <x-y, n>
  double minus2_un_lap = 0.0;      // -2 int u_n Lap u
  double lapn_xgradu = 0.0;        // -int (Lap u)_n <x-y, grad u>
  double un_xgradlap = 0.0;        // -int u_n <x-y, grad Lap u>
  double gradlap_gradu_xn = 0.0;   //  int <grad Lap u, grad u> <x-y, n>

  [[nodiscard]] double sum() const;
  BoundaryTerms& operator+=(const BoundaryTerms& o);
};

struct BoundaryPiece {
  std::string name;
  double boundary_H_term = 0.0;
  BoundaryTerms b;
};

/// 4 int H + int <x-y, grad_x H> = int_boundary <x-y, n> H + b(y, u).
struct PohozaevReport {
  double volume_H_term = 0.0;
  double volume_gradH_term = 0.0;
  double boundary_H_term = 0.0;
  BoundaryTerms b_terms;
  double residual = 0.0;  // LHS - RHS
  double relative_residual = 0.0;
  /// Boundary components integrated separately; totals are their sums.
  std::vector<BoundaryPiece> pieces;
  /// Pairing point, on the e1 axis.
  double y = 0.0;
  /// Cap selection parameter (boundary-centred sub-balls only).
  double rho = 0.0;

  [[nodiscard]] double lhs() const { return volume_H_term + volume_gradH_term; }
  [[nodiscard]] double rhs() const { return boundary_H_term + b_terms.sum(); }
};

/// Whole unit ball, y = y_offset e1. Rejects non-converged solutions.
PohozaevReport pohozaev_ball(const RadialSolution& sol, const NonlinearitySpec& spec, double lambda,
                             double y_offset = 0.0);

/// Omega intersected with B_r(x0), x0 = x0_offset e1. Either the sub-ball is
/// interior (x0_offset + r < 1, paired at y = x0) or centred at e1
/// (x0_offset = 1, paired at y = (1 + rho) e1 from select_cap_rho).
PohozaevReport pohozaev_annulus(const RadialSolution& sol, const NonlinearitySpec& spec,
                                double lambda, double x0_offset, double r_inner);

/// rho = int (Lap u)^2 <x - x0, n> / int (Lap u)^2 <n(x0), n> over the cap
/// of the unit sphere inside B_r(e1). lap_sq is given as a function of the
/// polar angle from e1. With y = x0 + rho n(x0) the (Lap u)^2 cap term
/// vanishes.
double select_cap_rho(const std::function<double(double)>& lap_sq, double r);

/// 1/2 int_cap (Lap u)^2 <x - y, n> with y = (1 + rho) e1.
double cap_lap_sq_term(const std::function<double(double)>& lap_sq, double r, double rho);

}  // namespace biharm
