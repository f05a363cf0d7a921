#include "biharm/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace biharm {
namespace {

void check_alpha(double alpha) {
  if (!(alpha > 1.0 && alpha < 2.0)) {
    throw std::invalid_argument(fmt::format("alpha must lie in (1, 2), got {}", alpha));
  }
}

double t_log_t(double t) { return t > 0.0 ? t * std::log(t) : 0.0; }

// binom(a, i) i!
double falling(double a, int i) {
  double v = 1.0;
  for (int k = 0; k < i; ++k) v *= a - k;
  return v;
}

}  // namespace

double solve_x0(double alpha) {
  check_alpha(alpha);
  auto g = [alpha](double s) { return std::pow(s, alpha) - alpha * s - 1.0; };
  double lo = 1.0;
  double hi = 2.0;
  while (g(hi) < 0.0) hi *= 2.0;
  for (int k = 0; k < 200 && hi - lo > 1e-14 * hi; ++k) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  double s = 0.5 * (lo + hi);
  for (int k = 0; k < 5; ++k) {
    const double d = alpha * std::pow(s, alpha - 1.0) - alpha;
    s -= g(s) / d;
  }
  if (!(std::fabs(g(s)) <= 1e-12 * std::max(1.0, s))) {
    throw CounterexampleError(fmt::format("x0 root not resolved for alpha = {}", alpha));
  }
  if (!(s > 1.0)) throw CounterexampleError("x0 < -1 violated");
  return -s;
}

double y0_of(double alpha, double x0) {
  const double y0 = -(x0 + std::pow(-x0, 2.0 - alpha)) / (2.0 * alpha);
  if (!(y0 > 0.0)) throw CounterexampleError(fmt::format("y0 = {} is not positive", y0));
  return y0;
}

std::array<double, 2> implicit_residual(double alpha, double x, double y, double t) {
  const double delta = 1.0 / (4.0 * alpha) - 0.5;
  const double q = 1.0 - alpha * x - delta * t_log_t(t);
  if (!(q > 0.0)) return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  const double P = 1.0 - (alpha - 1.0) * x + delta * t;
  return {x + y * t + std::pow(q, 1.0 / alpha),
          2.0 * y - std::pow(q, 1.0 / alpha - 1.0) * P / alpha};
}

std::pair<double, double> solve_implicit(double alpha, double t) {
  check_alpha(alpha);
  if (!(t > 0.0)) throw std::invalid_argument("solve_implicit needs t > 0");
  const double delta = 1.0 / (4.0 * alpha) - 0.5;
  double x = solve_x0(alpha);
  double y = y0_of(alpha, x);
  auto norm = [](const std::array<double, 2>& F) { return std::max(std::fabs(F[0]), std::fabs(F[1])); };
  auto F = implicit_residual(alpha, x, y, t);
  if (!std::isfinite(F[0])) throw CounterexampleError(fmt::format("implicit system: domain guard fails at seed, t = {}", t));
  for (int it = 0; it < 100; ++it) {
    if (norm(F) <= 1e-13) return {x, y};
    const double q = 1.0 - alpha * x - delta * t_log_t(t);
    const double P = 1.0 - (alpha - 1.0) * x + delta * t;
    const double a11 = 1.0 - std::pow(q, 1.0 / alpha - 1.0);
    const double a12 = t;
    const double a21 = (1.0 / alpha - 1.0) * std::pow(q, 1.0 / alpha - 2.0) * P +
                       (alpha - 1.0) / alpha * std::pow(q, 1.0 / alpha - 1.0);
    const double a22 = 2.0;
    const double det = a11 * a22 - a12 * a21;
    if (det == 0.0 || !std::isfinite(det)) break;
    const double dx = (-F[0] * a22 + F[1] * a12) / det;
    const double dy = (-a11 * F[1] + a21 * F[0]) / det;
    double step = 1.0;
    bool moved = false;
    for (int k = 0; k < 30; ++k, step *= 0.5) {
      const auto Ft = implicit_residual(alpha, x + step * dx, y + step * dy, t);
      if (std::isfinite(Ft[0]) && norm(Ft) < norm(F)) {
        x += step * dx;
        y += step * dy;
        F = Ft;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  if (norm(F) <= 1e-12) return {x, y};
  throw CounterexampleError(
      fmt::format("implicit system did not converge at t = {} (residual {:.3e})", t, norm(F)));
}

CounterexampleParams params_for_rho(double alpha, double ell_rho) {
  check_alpha(alpha);
  if (!(ell_rho > 1.0)) throw std::invalid_argument(fmt::format("ell_rho must exceed 1, got {}", ell_rho));
  CounterexampleParams p;
  p.alpha = alpha;
  p.gamma = (alpha - 1.0) / alpha;
  p.delta = 1.0 / (4.0 * alpha) - 0.5;
  p.ell_rho = ell_rho;
  p.x0 = solve_x0(alpha);
  p.y0 = y0_of(alpha, p.x0);
  std::tie(p.x, p.y) = solve_implicit(alpha, 1.0 / ell_rho);
  const double L = std::pow(ell_rho, 1.0 / alpha);
  p.A = p.x * L;
  p.B_rho2 = p.y * L / ell_rho;
  p.beta = -alpha * p.A;
  p.beta_ratio = p.beta / L;
  if (!(p.A < 0.0 && p.B_rho2 > 0.0 && p.beta > 0.0)) {
    throw CounterexampleError("parameter signs A < 0 < B, beta violated");
  }
  // Independent check of the defining system at r = rho.
  const auto f = f_beta_derivatives(p, ell_rho);
  const double u = std::pow(f[0], 1.0 / alpha);
  // r u'(r) = -du/d ell.
  const double r_du = -std::pow(f[0], 1.0 / alpha - 1.0) * f[1] / alpha;
  p.value_residual = std::fabs(p.A + p.B_rho2 + u) / u;
  p.slope_residual = std::fabs(2.0 * p.B_rho2 + r_du) / std::fabs(r_du);
  if (p.value_residual > 1e-8 || p.slope_residual > 1e-8) {
    throw CounterexampleError(fmt::format("parameter system inconsistent: residuals {:.3e}, {:.3e}",
                                          p.value_residual, p.slope_residual));
  }
  return p;
}

std::array<double, 5> f_beta_derivatives(const CounterexampleParams& p, double ell) {
  if (!(ell > 0.0)) throw std::domain_error("f_beta needs ell > 0");
  const double g = p.gamma;
  const double d = p.delta;
  const double tg = std::pow(ell, g);
  std::array<double, 5> f{};
  f[0] = ell + p.beta * tg + d * std::log(ell);
  f[1] = 1.0 + p.beta * g * tg / ell + d / ell;
  f[2] = p.beta * g * (g - 1.0) * tg / (ell * ell) - d / (ell * ell);
  f[3] = p.beta * g * (g - 1.0) * (g - 2.0) * tg / (ell * ell * ell) + 2.0 * d / (ell * ell * ell);
  f[4] = p.beta * g * (g - 1.0) * (g - 2.0) * (g - 3.0) * tg / std::pow(ell, 4) - 6.0 * d / std::pow(ell, 4);
  return f;
}

double eval_u_beta(const CounterexampleParams& p, double ell) {
  const double f = f_beta_derivatives(p, ell)[0];
  if (!(f > 0.0)) throw std::domain_error(fmt::format("u_beta undefined: f_beta({}) = {} <= 0", ell, f));
  return std::pow(f, 1.0 / p.alpha);
}

BilapParts bilap_u_beta(const CounterexampleParams& p, double ell) {
  const auto f = f_beta_derivatives(p, ell);
  if (!(f[0] > 0.0)) throw std::domain_error(fmt::format("u_beta <= 0 at ell = {}", ell));
  BilapParts b;
  b.h[0] = f[4] - 4.0 * f[2];
  b.h[1] = 4.0 * f[3] * f[1] - 4.0 * f[1] * f[1] + 3.0 * f[2] * f[2];
  b.h[2] = 6.0 * f[1] * f[1] * f[2];
  b.h[3] = f[1] * f[1] * f[1] * f[1];
  const double ia = 1.0 / p.alpha;
  double sum = 0.0;
  for (int i = 1; i <= 4; ++i) {
    // u^{1 - i alpha} = f^{1/alpha - i}
    b.terms[i - 1] = falling(ia, i) * std::pow(f[0], ia - i) * b.h[i - 1];
    sum += b.terms[i - 1];
  }
  b.r4_bilap = sum;
  b.r4_leading = 4.0 * (p.alpha - 1.0) / (p.alpha * p.alpha) * std::pow(ell, ia - 2.0);
  if (sum > 0.0) b.bilap = LogReal::from_log(std::log(sum) + 4.0 * ell, 1);
  else if (sum < 0.0) b.bilap = LogReal::from_log(std::log(-sum) + 4.0 * ell, -1);
  return b;
}

double eval_w(const CounterexampleParams& p, double ell) {
  const double r2 = p.B_rho2 * std::exp(-2.0 * (ell - p.ell_rho));
  return std::pow(4.0, 1.0 / p.alpha) * (eval_u_beta(p, ell) + p.A + r2);
}

double eval_dw_dell(const CounterexampleParams& p, double ell) {
  const auto f = f_beta_derivatives(p, ell);
  const double du = std::pow(f[0], 1.0 / p.alpha - 1.0) * f[1] / p.alpha;
  const double dr2 = -2.0 * p.B_rho2 * std::exp(-2.0 * (ell - p.ell_rho));
  return std::pow(4.0, 1.0 / p.alpha) * (du + dr2);
}

double exponent_gap(const CounterexampleParams& p, double ell) {
  const double w = eval_w(p, ell);
  const double wa = w > 0.0 ? std::pow(w, p.alpha) : 0.0;
  return 4.0 * ell - wa;
}

LogReal eval_a(const CounterexampleParams& p, double ell) {
  const auto b = bilap_u_beta(p, ell);
  if (!(b.r4_bilap > 0.0)) return LogReal::from_value(0.0);
  // a = 4^{1/alpha} r^{-4} (r^4 Delta^2 u) e^{-w^alpha}
  return LogReal::from_log(std::log(4.0) / p.alpha + std::log(b.r4_bilap) + exponent_gap(p, ell));
}

double a_limit(double alpha) {
  check_alpha(alpha);
  return std::pow(4.0, 1.0 / alpha + 1.0) * (alpha - 1.0) / (alpha * alpha);
}

double identity_residual(const CounterexampleParams& p, double ell) {
  // Delta^2 w = 4^{1/alpha} (r^4 Delta^2 u) e^{4 ell};  a e^{w^alpha} = a e^{-gap} e^{4 ell}.
  const auto b = bilap_u_beta(p, ell);
  const double lhs = std::pow(4.0, 1.0 / p.alpha) * b.r4_bilap;
  const LogReal a = eval_a(p, ell);
  const double rhs_log = a.log_abs() - exponent_gap(p, ell);
  const double rhs = a.is_zero() ? 0.0 : std::exp(rhs_log);
  if (lhs == 0.0) return std::fabs(rhs);
  return std::fabs(rhs / lhs - 1.0);
}

std::vector<double> geometric_ell_grid(double ell_rho, double ell_max, std::size_t points) {
  if (!(ell_max > ell_rho && ell_rho > 0.0) || points < 2) {
    throw std::invalid_argument("geometric ell grid needs 0 < ell_rho < ell_max and >= 2 points");
  }
  std::vector<double> g(points);
  const double q = std::log(ell_max / ell_rho) / static_cast<double>(points - 1);
  for (std::size_t k = 0; k < points; ++k) g[k] = ell_rho * std::exp(q * static_cast<double>(k));
  g.front() = ell_rho;
  g.back() = ell_max;
  return g;
}

bool CounterexampleCertificate::passed() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const auto& c) { return c.passed; });
}

CounterexampleCertificate certify(const CounterexampleParams& p, const std::vector<double>& ell_grid) {
  if (ell_grid.size() < 2 || ell_grid.front() < p.ell_rho) {
    throw std::invalid_argument("certify needs a grid starting at ell_rho");
  }
  CounterexampleCertificate c;
  const std::size_t n = ell_grid.size();
  std::vector<double> w(n);
  c.min_bilap_r4 = std::numeric_limits<double>::infinity();
  c.min_log_a = std::numeric_limits<double>::infinity();
  c.max_log_a = -std::numeric_limits<double>::infinity();
  c.min_fprime = std::numeric_limits<double>::infinity();
  c.max_fprime = -std::numeric_limits<double>::infinity();
  c.max_h2 = -std::numeric_limits<double>::infinity();
  std::optional<double> bilap_witness;
  std::optional<double> a_witness;
  for (std::size_t k = 0; k < n; ++k) {
    const double ell = ell_grid[k];
    const auto b = bilap_u_beta(p, ell);
    if (b.r4_bilap < c.min_bilap_r4) {
      c.min_bilap_r4 = b.r4_bilap;
      if (!(b.r4_bilap > 0.0) && !bilap_witness) bilap_witness = ell;
    }
    w[k] = eval_w(p, ell);
    const LogReal a = eval_a(p, ell);
    if (a.is_zero() || !std::isfinite(a.log_abs())) {
      if (!a_witness) a_witness = ell;
    } else {
      c.min_log_a = std::min(c.min_log_a, a.log_abs());
      c.max_log_a = std::max(c.max_log_a, a.log_abs());
    }
    c.max_identity_residual = std::max(c.max_identity_residual, identity_residual(p, ell));
    const auto f = f_beta_derivatives(p, ell);
    c.min_fprime = std::min(c.min_fprime, f[1]);
    c.max_fprime = std::max(c.max_fprime, f[1]);
    c.max_h2 = std::max(c.max_h2, b.h[1]);
  }

  c.clauses.push_back({"bilaplacian_positive", !bilap_witness,
                       fmt::format("min r^4 Delta^2 u_beta = {:.6e}", c.min_bilap_r4), bilap_witness});

  // Strictly increasing tail and positivity past ell_rho.
  std::size_t start = n - 1;
  while (start > 0 && w[start - 1] < w[start]) --start;
  c.ell_star = ell_grid[start];
  std::optional<double> w_witness;
  for (std::size_t k = 1; k < n; ++k) {
    if (!(w[k] > 0.0)) {
      w_witness = ell_grid[k];
      break;
    }
  }
  const bool tail = start + 1 < n;
  c.w_growth_ratio = w.back() / std::pow(4.0 * ell_grid.back(), 1.0 / p.alpha);
  if (!tail && !w_witness) w_witness = ell_grid.back();
  c.clauses.push_back({"w_unbounded", !w_witness && tail,
                       fmt::format("w increasing for ell >= {:.6g}; w / (4 ell)^(1/alpha) = {:.6f} at ell = {:.6g}",
                                   c.ell_star, c.w_growth_ratio, ell_grid.back()),
                       w_witness});

  c.clauses.push_back({"a_positive_bounded", !a_witness,
                       fmt::format("log a in [{:.6g}, {:.6g}]", c.min_log_a, c.max_log_a), a_witness});

  c.w_at_rho = eval_w(p, p.ell_rho);
  c.dw_at_rho = eval_dw_dell(p, p.ell_rho);
  const bool bc = std::fabs(c.w_at_rho) <= 1e-8 && std::fabs(c.dw_at_rho) <= 1e-8;
  c.clauses.push_back({"boundary_conditions", bc,
                       fmt::format("w(rho) = {:.3e}, r dw/dr(rho) = {:.3e}", c.w_at_rho, -c.dw_at_rho),
                       bc ? std::nullopt : std::optional<double>(p.ell_rho)});

  std::optional<double> id_witness;
  if (!(c.max_identity_residual <= 1e-12)) {
    for (double ell : ell_grid) {
      if (!(identity_residual(p, ell) <= 1e-12)) {
        id_witness = ell;
        break;
      }
    }
  }
  c.clauses.push_back({"pointwise_identity", !id_witness,
                       fmt::format("max |a e^(w^alpha) / Delta^2 w - 1| = {:.3e}", c.max_identity_residual),
                       id_witness});
  return c;
}

void write_counterexample_csv(std::ostream& os, const CounterexampleParams& p,
                              const std::vector<double>& ell_grid) {
  os << "ell,u_beta,w,a,bilap_u,h1,h2,h3,h4\n";
  for (double ell : ell_grid) {
    const auto b = bilap_u_beta(p, ell);
    os << fmt::format("{:.17g},{:.17g},{:.17g},{},{},{:.17g},{:.17g},{:.17g},{:.17g}\n", ell,
                      eval_u_beta(p, ell), eval_w(p, ell), format_log_real(eval_a(p, ell)),
                      format_log_real(b.bilap), b.h[0], b.h[1], b.h[2], b.h[3]);
  }
}

Potential::Handle potential_handle(const CounterexampleParams& p) {
  Potential::Handle h;
  const double limit = a_limit(p.alpha);
  h.value = [p, limit](double s) {
    if (!(s > 0.0)) return limit;
    return eval_a(p, p.ell_rho - std::log(std::min(s, 1.0))).value();
  };
  h.derivative = [p](double s) {
    if (!(s > 0.0)) return 0.0;
    const double ell = p.ell_rho - std::log(std::min(s, 1.0));
    const double dl = 1e-6 * std::max(1.0, ell);
    const double lo = std::max(p.ell_rho, ell - dl);
    const double da = (eval_a(p, ell + dl).value() - eval_a(p, lo).value()) / (ell + dl - lo);
    return -da / s;
  };
  h.label = fmt::format("counterexample(alpha={}, ell_rho={})", p.alpha, p.ell_rho);
  return h;
}

}  // namespace biharm
