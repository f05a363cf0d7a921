#include <cmath>
#include <algorithm>
#include <sstream>

#include "biharm/counterexample.hpp"
#include "biharm/radial_solver.hpp"
#include "doctest.h"

using namespace biharm;

namespace {

double bisect(double alpha) {
  double lo = -100.0, hi = -1.0;
  auto g = [alpha](double x) { return std::pow(-x, alpha) - 1.0 + alpha * x; };
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (lo + hi);
    ((g(m) > 0) == (g(lo) > 0) ? lo : hi) = m;
  }
  return 0.5 * (lo + hi);
}

const CounterexampleParams& p1000() {
  static const CounterexampleParams p = params_for_rho(1.5, 1e3);
  return p;
}

}  // namespace

TEST_CASE("x0 root") {
  const double x0 = solve_x0(1.5);
  CHECK(x0 == doctest::Approx(bisect(1.5)).epsilon(1e-12));
  CHECK(x0 == doctest::Approx(-3.26).epsilon(0.01 / 3.26));
  for (double a : {1.1, 1.5, 1.9}) {
    const double x = solve_x0(a);
    CHECK(x < -1.0);
    CHECK(std::pow(-x, a) == doctest::Approx(1.0 - a * x).epsilon(1e-12));
  }
  CHECK(solve_x0(1.9999) == doctest::Approx(-(1 + std::sqrt(2.0))).epsilon(1e-3));
  CHECK_THROWS(solve_x0(2.0));
  CHECK_THROWS(solve_x0(1.0));
}

TEST_CASE("y0 and the implicit branch") {
  const double x0 = solve_x0(1.5);
  CHECK(y0_of(1.5, x0) == doctest::Approx(0.486).epsilon(1e-3));
  for (double a : {1.1, 1.5, 1.9}) CHECK(y0_of(a, solve_x0(a)) > 0.0);
  const auto F0 = implicit_residual(1.5, x0, y0_of(1.5, x0), 0.0);
  CHECK(std::fabs(F0[0]) <= 1e-12);
  CHECK(std::fabs(F0[1]) <= 1e-12);
  const auto [xs, ys] = solve_implicit(1.5, 1e-6);
  CHECK(std::fabs(xs - x0) < 1e-3);
  const auto [x, y] = solve_implicit(1.5, 0.01);
  const auto F = implicit_residual(1.5, x, y, 0.01);
  CHECK(std::fabs(F[0]) <= 1e-12);
  CHECK(std::fabs(F[1]) <= 1e-12);
}

TEST_CASE("parameters for a given rho") {
  const auto p = params_for_rho(1.5, 100.0);
  const auto [x, y] = solve_implicit(1.5, 0.01);
  CHECK(p.beta == doctest::Approx(-1.5 * x * std::pow(100.0, 2.0 / 3.0)).epsilon(1e-10));
  CHECK(p.value_residual <= 1e-8);
  CHECK(p.slope_residual <= 1e-8);
  CHECK(p.delta < 0.0);
  CHECK(p.gamma > 0.0);
  CHECK(p.gamma < 0.5);
  CHECK(p.beta == doctest::Approx(-p.alpha * p.A).epsilon(1e-12));
  CHECK(p.A + p.B_rho2 + eval_u_beta(p, p.ell_rho) == doctest::Approx(0.0).scale(std::fabs(p.A)).epsilon(1e-8));
  // beta / l(rho)^{1/alpha} is pinned between fixed constants
  double lo = 1e300, hi = 0.0;
  for (double ell : {1e2, 1e3, 1e4}) {
    const double ratio = params_for_rho(1.5, ell).beta_ratio;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  CHECK(hi / lo < 1.01);
}

TEST_CASE("closed-form bilaplacian against finite differences") {
  const auto& p = p1000();
  for (double r : {0.002, 0.01, 0.03, 0.06, 0.1}) {
    const auto u = [&p](double s) { return eval_u_beta(p, -std::log(s)); };
    const std::vector<double> at{r};
    const double fd = radial_bilaplacian(u, at, false, 0.02 * r)[0];
    const double an = bilap_u_beta(p, -std::log(r)).r4_bilap / std::pow(r, 4);
    CHECK(fd == doctest::Approx(an).epsilon(1e-5));
  }
}

TEST_CASE("asymptotics") {
  const auto& p = p1000();
  const auto b = bilap_u_beta(p, 1e6);
  CHECK(b.r4_bilap * std::pow(1e6, 2.0 - 1.0 / 1.5) == doctest::Approx(8.0 / 9.0).epsilon(0.05));
  CHECK(b.r4_bilap / b.r4_leading == doctest::Approx(1.0).epsilon(0.05));
  // w(1e4) / ell^{1/alpha} within 20% of 4^{1/alpha}
  CHECK(eval_w(p, 1e4) / std::pow(1e4, 1 / 1.5) == doctest::Approx(std::pow(4.0, 1 / 1.5)).epsilon(0.2));
  CHECK(a_limit(1.5) == doctest::Approx(2.240).epsilon(1e-3));
  // w^alpha - 4 ell - 4 delta log ell shrinks in magnitude as ell grows.
  double prev = 1e300;
  for (double ell : {1e4, 1e6, 1e8, 1e10, 1e12}) {
    const double dev = std::fabs(-exponent_gap(p, ell) - 4 * p.delta * std::log(ell));
    CHECK(dev < prev);
    prev = dev;
  }
  // nothing underflows deep inside the ball
  CHECK(std::isfinite(eval_w(p, 1e6)));
  CHECK(std::isfinite(eval_a(p, 1e6).log_abs()));
  CHECK(eval_a(p, 1e6).is_log_form());
}

TEST_CASE("certificate") {
  const auto& p = p1000();
  const auto grid = geometric_ell_grid(1e3, 1e6, 2001);
  REQUIRE(grid.front() == 1e3);
  REQUIRE(grid.back() == 1e6);
  const auto c = certify(p, grid);
  for (const auto& cl : c.clauses) {
    INFO(cl.name, ": ", cl.detail);
    CHECK(cl.passed);
  }
  CHECK(c.passed());
  CHECK(c.min_bilap_r4 > 0.0);
  CHECK(std::fabs(c.w_at_rho) <= 1e-8);
  CHECK(std::fabs(c.dw_at_rho) <= 1e-8);
  CHECK(c.max_identity_residual <= 1e-12);
  CHECK(c.min_fprime >= 0.5);
  CHECK(c.max_h2 < -0.5);
  CHECK_THROWS_AS(certify(p, geometric_ell_grid(10.0, 1e6, 11)), std::invalid_argument);
}

TEST_CASE("potential handle and csv") {
  const auto& p = p1000();
  const auto h = potential_handle(p);
  CHECK(h.value(0.0) == a_limit(1.5));
  std::ostringstream os;
  write_counterexample_csv(os, p, geometric_ell_grid(1e3, 1e4, 5));
  const auto text = os.str();
  CHECK(text.rfind("ell,u_beta,w,a,bilap_u,h1,h2,h3,h4\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 6);
}
