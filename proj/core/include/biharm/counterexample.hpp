#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "biharm/log_real.hpp"
#include "biharm/nonlinearity.hpp"

namespace biharm {

/// Unbounded radial solution of Delta^2 w = a e^{w^alpha} on B_rho, alpha in
/// (1, 2). Everything is a function of ell = log(1/r) >= ell_rho; r itself
/// is never formed once it would underflow.
struct CounterexampleParams {
  double alpha = 1.5;
  double gamma = 0.0;   // (alpha - 1) / alpha
  double delta = 0.0;   // 1 / (4 alpha) - 1 / 2
  double ell_rho = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;
  double x = 0.0;  // implicit branch at t = 1 / ell_rho
  double y = 0.0;
  double A = 0.0;
  /// B rho^2; B alone overflows for small rho.
  double B_rho2 = 0.0;
  double beta = 0.0;
  /// beta / ell_rho^{1/alpha}, the recorded scaling constant.
  double beta_ratio = 0.0;
  /// Direct residuals of the parameter system at rho (relative).
  double value_residual = 0.0;
  double slope_residual = 0.0;
};

class CounterexampleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// -x0 > 1 solving s^alpha = 1 + alpha s; returns x0 < -1.
double solve_x0(double alpha);
double y0_of(double alpha, double x0);

/// The two components of the implicit system at (x, y, t); t log t is taken
/// as 0 at t = 0.
std::array<double, 2> implicit_residual(double alpha, double x, double y, double t);
/// Damped Newton from (x0, y0). Throws CounterexampleError naming t.
std::pair<double, double> solve_implicit(double alpha, double t);

/// rho = e^{-ell_rho}.
CounterexampleParams params_for_rho(double alpha, double ell_rho);

/// f_beta and its first four derivatives at ell.
std::array<double, 5> f_beta_derivatives(const CounterexampleParams& p, double ell);

struct BilapParts {
  std::array<double, 4> h{};
  /// i! binom(1/alpha, i) u^{1 - i alpha} h_i.
  std::array<double, 4> terms{};
  /// r^4 Delta^2 u_beta.
  double r4_bilap = 0.0;
  /// Leading-order r^4 Delta^2 u_beta: 4 (alpha - 1) / alpha^2 ell^{1/alpha - 2}.
  double r4_leading = 0.0;
  /// Delta^2 u_beta itself (r^{-4} = e^{4 ell}).
  LogReal bilap;
};

double eval_u_beta(const CounterexampleParams& p, double ell);
BilapParts bilap_u_beta(const CounterexampleParams& p, double ell);

double eval_w(const CounterexampleParams& p, double ell);
/// dw/d ell = -r dw/dr.
double eval_dw_dell(const CounterexampleParams& p, double ell);
/// 4 ell - w^alpha, formed once so the r^{-4} and e^{-w^alpha} factors cancel.
double exponent_gap(const CounterexampleParams& p, double ell);
LogReal eval_a(const CounterexampleParams& p, double ell);
/// 4^{1/alpha + 1} (alpha - 1) / alpha^2, the value of a at the origin.
double a_limit(double alpha);

/// |a e^{w^alpha} / Delta^2 w - 1| with the common e^{4 ell} factored out.
double identity_residual(const CounterexampleParams& p, double ell);

std::vector<double> geometric_ell_grid(double ell_rho, double ell_max, std::size_t points);

struct CertificateClause {
  std::string name;
  bool passed = false;
  std::string detail;
  std::optional<double> witness_ell;
};

struct CounterexampleCertificate {
  std::vector<CertificateClause> clauses;
  double min_bilap_r4 = 0.0;
  double ell_star = 0.0;
  double w_growth_ratio = 0.0;  // w / (4 ell)^{1/alpha} at the last grid point
  double min_log_a = 0.0;
  double max_log_a = 0.0;
  double w_at_rho = 0.0;
  double dw_at_rho = 0.0;
  double max_identity_residual = 0.0;
  double min_fprime = 0.0;
  double max_fprime = 0.0;
  double max_h2 = 0.0;

  [[nodiscard]] bool passed() const;
};

CounterexampleCertificate certify(const CounterexampleParams& p, const std::vector<double>& ell_grid);

/// Header ell,u_beta,w,a,bilap_u,h1,h2,h3,h4.
void write_counterexample_csv(std::ostream& os, const CounterexampleParams& p,
                              const std::vector<double>& ell_grid);

/// a as a potential on the unit ball, rescaled from B_rho: s = r / rho.
Potential::Handle potential_handle(const CounterexampleParams& p);

}  // namespace biharm
