#include "biharm/blowup_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

// Boost 1.74's pchip calls unqualified isnan.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

#include "biharm/quadrature.hpp"
#include "biharm/radial_profile.hpp"

namespace biharm {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSphere3 = 2.0 * kPi * kPi;

double bubble_c(double beta, double a_inf) { return std::sqrt(a_inf * beta / 24.0); }

void check_bubble_args(double beta, double a_inf) {
  if (!(beta > 0.0)) throw std::invalid_argument(fmt::format("bubble needs beta > 0, got {}", beta));
  if (!(a_inf > 0.0)) throw std::invalid_argument(fmt::format("bubble needs a > 0, got {}", a_inf));
}

}  // namespace

double bubble(double beta, double a_inf, double rho) {
  check_bubble_args(beta, a_inf);
  return -(4.0 / beta) * std::log1p(bubble_c(beta, a_inf) * rho * rho / 4.0);
}

double bubble_total_energy(double beta, double a_inf) {
  check_bubble_args(beta, a_inf);
  const double c = bubble_c(beta, a_inf);
  const double scale = std::sqrt(4.0 / c);  // rho where c rho^2 / 4 = 1
  auto integrand = [&](double rho) {
    return rho * rho * rho * std::exp(beta * bubble(beta, a_inf, rho));
  };
  // Doubling cells out to the cut-off.
  std::vector<double> breaks{0.0, scale};
  const double cut = scale * 1e4;
  while (breaks.back() < cut) breaks.push_back(breaks.back() * 2.0);
  std::vector<double> parts;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    parts.push_back(adaptive_integrate(integrand, breaks[k], breaks[k + 1], 1e-13));
  }
  const double body = pairwise_sum(parts);
  const double R = breaks.back();
  const double tail_bound = std::pow(4.0 / c, 4) / (4.0 * std::pow(R, 4));
  if (tail_bound > 1e-11 * body) {
    throw QuadratureError(fmt::format("bubble energy tail bound {:.3e} too large", tail_bound),
                          tail_bound / body);
  }
  return a_inf * kSphere3 * body;
}

double bubble_mass_fraction(double beta, double a_inf, double R) {
  check_bubble_args(beta, a_inf);
  const double S = bubble_c(beta, a_inf) * R * R / 4.0;
  const double q = 1.0 / (1.0 + S);
  return 1.0 - 6.0 * (q * q / 2.0 - q * q * q / 3.0);
}

double canonical_bubble_fraction(double R) {
  const double q = 1.0 / (1.0 + R * R / 2.0);
  return 1.0 - 6.0 * (q * q / 2.0 - q * q * q / 3.0);
}

BlowupReport rescale(const RadialSolution& sol, const NonlinearitySpec& spec, double lambda,
                     double R_max, std::size_t samples) {
  if (samples < 2) throw std::invalid_argument("rescale: need at least two samples");
  if (!(R_max > 0.0)) throw std::invalid_argument("rescale: R_max must be positive");
  BlowupReport rep;
  rep.M = sol.u.front();
  rep.lambda = lambda;
  rep.beta = spec.beta();
  rep.subcritical = rep.beta == 0.0;
  rep.mu = rescaling_mu(spec, lambda, rep.M);
  rep.R_max = R_max;
  if (rep.mu * R_max > 1.0) {
    rep.R_max = 1.0 / rep.mu;
    rep.truncated = true;
  }
  rep.theta_target = rep.subcritical ? std::numeric_limits<double>::infinity()
                                     : 64.0 * kPi * kPi / rep.beta;

  using Pchip = boost::math::interpolators::pchip<std::vector<double>>;
  const Pchip interp(std::vector<double>(sol.grid.nodes()), std::vector<double>(sol.u));
  for (std::size_t k = 0; k < samples; ++k) {
    const double rho = rep.R_max * static_cast<double>(k) / static_cast<double>(samples - 1);
    rep.rho.push_back(rho);
    // v(0) = 0 exactly: the interpolant reproduces u(0) = M at the first node.
    rep.v.push_back(k == 0 ? 0.0 : interp(std::min(rep.mu * rho, 1.0)) - rep.M);
    if (!rep.subcritical) {
      rep.v_bubble.push_back(bubble(rep.beta, rep.a_inf, rho));
      rep.deviation_sup = std::max(rep.deviation_sup, std::fabs(rep.v.back() - rep.v_bubble.back()));
    }
  }

  std::vector<double> Rs;
  for (int k = 0; k <= 10; ++k) Rs.push_back(rep.R_max * k / 10.0);
  const auto le = local_energy(sol, spec, lambda, Rs);
  for (std::size_t k = 0; k < Rs.size(); ++k) rep.local_energy.emplace_back(Rs[k], le[k]);
  if (!rep.subcritical) {
    rep.fraction_expected = bubble_mass_fraction(rep.beta, rep.a_inf, rep.R_max);
    rep.fraction_canonical = canonical_bubble_fraction(rep.R_max);
  }
  return rep;
}

std::vector<double> local_energy(const RadialSolution& sol, const NonlinearitySpec& spec,
                                 double lambda, const std::vector<double>& R_list) {
  const double mu = rescaling_mu(spec, lambda, sol.u.front());
  const auto prof = RadialProfile::from_solution(sol);
  const auto& r = sol.grid.nodes();
  auto integrand = [&](double t) {
    return t * t * t * lambda * spec.potential()(t) * eval_f_extended(spec, prof.u(t)).first;
  };
  std::vector<double> out;
  for (double R : R_list) {
    if (!(R >= 0.0)) throw std::invalid_argument("local_energy: R must be >= 0");
    const double top = std::min(R * mu, 1.0);
    std::vector<double> cells;
    for (std::size_t i = 0; i + 1 < r.size() && r[i] < top; ++i) {
      cells.push_back(gauss_integrate(integrand, r[i], std::min(r[i + 1], top), 6));
    }
    out.push_back(kSphere3 * pairwise_sum(cells));
  }
  return out;
}

GradientLpFit gradient_Lp_fit(const RadialSolution& sol, int order, double p,
                              const std::vector<double>& radii) {
  if (order < 1 || order > 3) throw std::invalid_argument("gradient order must be 1, 2 or 3");
  if (!(p >= 1.0 && p < 4.0 / order)) {
    throw std::invalid_argument(fmt::format("p = {} outside [1, 4/{})", p, order));
  }
  const auto prof = RadialProfile::from_solution(sol);
  const auto& field = order == 1 ? prof.du : order == 2 ? prof.lap : prof.dlap;
  auto integrand = [&](double s) { return s * s * s * std::pow(std::fabs(field(s)), p); };
  const auto& r = sol.grid.nodes();

  GradientLpFit fit;
  fit.order = order;
  fit.p = p;
  fit.radii = radii;
  for (double rad : radii) {
    if (!(rad > 0.0 && rad <= 1.0)) throw std::invalid_argument("gradient radii must lie in (0, 1]");
    std::vector<double> cells;
    for (std::size_t i = 0; i + 1 < r.size() && r[i] < rad; ++i) {
      cells.push_back(gauss_integrate(integrand, r[i], std::min(r[i + 1], rad), 6));
    }
    const double val = kSphere3 * pairwise_sum(cells);
    fit.values.push_back(val);
    fit.C = std::max(fit.C, val / std::pow(rad, 4.0 - order * p));
  }
  return fit;
}

GradientLpCheck gradient_Lp_check(const RadialSolution& sol, const NonlinearitySpec& spec,
                                  int order, double p, std::vector<double> radii,
                                  const SolverConfig& config) {
  if (radii.empty()) {
    for (int k = 0; k <= 40; ++k) radii.push_back(std::pow(10.0, -4.0 + 4.0 * k / 40.0));
  }
  GradientLpCheck chk;
  chk.coarse = gradient_Lp_fit(sol, order, p, radii);
  const auto fine_grid = sol.grid.refined();
  const auto guess = transfer(sol, fine_grid);
  const auto fine = solve_at_max(spec, sol.u.front(), sol.bc, fine_grid, config, guess);
  chk.fine = gradient_Lp_fit(fine, order, p, radii);
  chk.ratio = chk.coarse.C > 0.0 ? chk.fine.C / chk.coarse.C : (chk.fine.C == 0.0 ? 1.0 : 0.0);
  return chk;
}

SubcriticalDivergence subcritical_divergence_check(const SolutionBranch& branch,
                                                   const NonlinearitySpec& spec) {
  if (spec.beta() != 0.0) throw std::invalid_argument("divergence check applies to beta = 0 members");
  if (branch.points.size() < 3) throw std::invalid_argument("divergence check needs three points");
  SubcriticalDivergence out;
  for (const auto& pt : branch.points) {
    out.M.push_back(pt.M);
    out.energy.push_back(pt.energy);
  }
  const std::size_t n = out.energy.size();
  out.energy_increasing = true;
  for (std::size_t k = n / 2 + 1; k < n; ++k) {
    if (!(out.energy[k] > out.energy[k - 1])) out.energy_increasing = false;
  }
  out.growth = out.energy[n / 2] > 0.0 ? out.energy.back() / out.energy[n / 2] : 0.0;
  return out;
}

}  // namespace biharm
