#pragma once

#include <string>
#include <utility>
#include <vector>

#include "biharm/branch_continuation.hpp"
#include "biharm/nonlinearity.hpp"
#include "biharm/radial_solver.hpp"

namespace biharm {

/// v(rho) = -(4/beta) log(1 + sqrt(a beta / 24) rho^2 / 4).
double bubble(double beta, double a_inf, double rho);

/// a int_{R^4} e^{beta v}: radial quadrature to a cut-off plus the analytic
/// tail bound (a 2 pi^2 (4/c)^4 / (4 R^4)). Throws QuadratureError when the
/// bound exceeds 1e-11 of the computed part.
double bubble_total_energy(double beta, double a_inf);

/// Share of the bubble energy inside |rho| < R:
/// 1 - 6[(1+S)^-2/2 - (1+S)^-3/3], S = sqrt(a beta / 24) R^2 / 4.
double bubble_mass_fraction(double beta, double a_inf, double R);
/// Same antiderivative with S = R^2 / 2 (the (a, beta) = (24, 4) profile).
double canonical_bubble_fraction(double R);

struct BlowupReport {
  double M = 0.0;
  double mu = 0.0;
  double lambda = 0.0;
  double beta = 0.0;
  double a_inf = 1.0;  // amplitude of the limit equation after rescaling
  double R_max = 5.0;
  bool truncated = false;    // mu R_max exceeded the grid
  bool subcritical = false;  // beta = 0: no bubble comparison
  std::vector<double> rho;
  std::vector<double> v;
  std::vector<double> v_bubble;
  double deviation_sup = 0.0;
  std::vector<std::pair<double, double>> local_energy;  // (R, value)
  double theta_target = 0.0;
  double fraction_expected = 0.0;   // realized bubble, R = R_max
  double fraction_canonical = 0.0;  // S = R^2/2 variant, R = R_max
  std::string surrogate = "|D^2 u| -> |Delta u|, |D^3 u| -> |(Delta u)'|";
};

/// v(rho) = u(mu rho) - M sampled by monotone cubic (PCHIP) interpolation on
/// rho in [0, R_max] (`samples` points), compared with bubble(beta, 1, .).
BlowupReport rescale(const RadialSolution& sol, const NonlinearitySpec& spec, double lambda,
                     double R_max = 5.0, std::size_t samples = 501);

/// 2 pi^2 int_0^{R mu} r^3 lambda h(r, u) dr for each R.
std::vector<double> local_energy(const RadialSolution& sol, const NonlinearitySpec& spec,
                                 double lambda, const std::vector<double>& R_list);

struct GradientLpFit {
  int order = 0;
  double p = 1.0;
  std::vector<double> radii;
  std::vector<double> values;  // 2 pi^2 int_0^r s^3 |D^i u|^p ds
  double C = 0.0;              // max values / r^{4 - i p}
};

/// Radial surrogates: i = 1 |u'|, i = 2 |Delta u|, i = 3 |(Delta u)'|.
GradientLpFit gradient_Lp_fit(const RadialSolution& sol, int order, double p,
                              const std::vector<double>& radii);

struct GradientLpCheck {
  GradientLpFit coarse;
  GradientLpFit fine;
  double ratio = 0.0;  // C_fine / C_coarse
  [[nodiscard]] bool passed() const { return ratio >= 0.8 && ratio <= 1.2; }
};

/// Fits C on sol and on the solution re-solved (same M, bordered) on the
/// refined grid. Default radii: 41 geometric points in [1e-4, 1].
GradientLpCheck gradient_Lp_check(const RadialSolution& sol, const NonlinearitySpec& spec,
                                  int order, double p, std::vector<double> radii = {},
                                  const SolverConfig& config = {});

struct SubcriticalDivergence {
  std::vector<double> M;
  std::vector<double> energy;
  double growth = 0.0;  // energy(last) / energy(middle)
  bool energy_increasing = false;
  [[nodiscard]] bool consistent() const { return energy_increasing && growth > 1.0; }
};

/// For beta = 0 members: along the branch the energy keeps growing with M,
/// i.e. bounded energy never accompanies M -> infinity on the traced data.
SubcriticalDivergence subcritical_divergence_check(const SolutionBranch& branch,
                                                   const NonlinearitySpec& spec);

}  // namespace biharm
