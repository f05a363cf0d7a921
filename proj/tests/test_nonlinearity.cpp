#include <cmath>
#include <numbers>
#include <vector>

#include "biharm/nonlinearity.hpp"
#include "doctest.h"

using namespace biharm;

namespace {

std::vector<NonlinearitySpec> catalog() {
  return {NonlinearitySpec::pure_exp(1.0), NonlinearitySpec::pure_exp(2.0), NonlinearitySpec::exp_poly(1.0, 2.0),
          NonlinearitySpec::exp_poly(1.5, 0.5), NonlinearitySpec::power_exp(2.0, 0.5),
          NonlinearitySpec::power_exp(3.0, 0.0), NonlinearitySpec::log_power_exp(1.0, 2.0, 0.5)};
}

}  // namespace

TEST_CASE("eval_f reproduces hand-computed catalog values") {
  CHECK(eval_f(NonlinearitySpec::pure_exp(1.0), 0.0).value() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(eval_f(NonlinearitySpec::exp_poly(1.0, 2.0), 1.0).value() ==
        doctest::Approx(std::numbers::e / 4.0).epsilon(1e-14));
  CHECK(eval_f(NonlinearitySpec::power_exp(2.0, 0.5), 4.0).value() ==
        doctest::Approx(16.0 * std::exp(2.0)).epsilon(1e-14));
  CHECK(eval_f(NonlinearitySpec::log_power_exp(2.0, 2.0, 0.5), 3.0).value() ==
        doctest::Approx(std::pow(std::log(4.0), 2.0) * 9.0 * std::exp(std::sqrt(3.0))).epsilon(1e-13));
}

TEST_CASE("eval_f switches to log form past the double range") {
  const auto f = eval_f(NonlinearitySpec::pure_exp(1.0), 1000.0);
  CHECK(f.is_log_form());
  CHECK(f.log_abs() == doctest::Approx(1000.0).epsilon(1e-15));
  CHECK(std::isinf(f.value()));
  const auto g = eval_f(NonlinearitySpec::exp_poly(1.0, 2.0), 800.0);
  CHECK(g.log_abs() == doctest::Approx(800.0 - 2.0 * std::log(801.0)).epsilon(1e-15));
}

TEST_CASE("eval_f_prime matches centred differences of eval_f on [0, 50]") {
  for (const auto& spec : catalog()) {
    const bool power = spec.kind() == NonlinearityKind::PowerExp || spec.kind() == NonlinearityKind::LogPowerExp;
    for (double t = power ? 0.5 : 0.0; t <= 50.0; t += 0.5) {
      const double h = 1e-5;
      const double lo = t - h < 0.0 ? t : t - h;
      const double fd = (eval_f(spec, t + h).value() - eval_f(spec, lo).value()) / (t + h - lo);
      const double tol = t - h < 0.0 ? 1e-4 : 1e-6;  // one-sided at t = 0
      INFO(to_string(spec.kind()), " t=", t);
      CHECK(eval_f_prime(spec, t) == doctest::Approx(fd).epsilon(tol));
    }
  }
}

TEST_CASE("primitives: closed forms and monotonicity") {
  CHECK(eval_F(NonlinearitySpec::pure_exp(1.0), 1.0) == doctest::Approx(std::numbers::e - 1.0).epsilon(1e-14));
  CHECK(eval_F(NonlinearitySpec::power_exp(2.0, 0.0), 1.0) == doctest::Approx(std::numbers::e / 3.0).epsilon(1e-9));
  // alpha = 0 still carries the constant factor e^{t^0} = e.
  for (const auto& spec : catalog()) {
    CHECK(eval_F(spec, 0.0) == 0.0);
    CHECK(eval_H(spec, 0.4, 0.0) == 0.0);
    double prev = 0.0;
    for (double t = 0.25; t <= 10.0; t += 0.25) {
      const double F = eval_F(spec, t);
      CHECK(F > prev);
      prev = F;
    }
  }
  // ExpPoly with integer q against direct quadrature of e^s / (1+s)^2.
  const auto ep = NonlinearitySpec::exp_poly(1.0, 2.0);
  double simpson = 0.0;
  const int n = 2000;
  for (int i = 0; i <= n; ++i) {
    const double s = 3.0 * i / n;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    simpson += w * std::exp(s) / ((1.0 + s) * (1.0 + s));
  }
  simpson *= 3.0 / n / 3.0;
  CHECK(eval_F(ep, 3.0) == doctest::Approx(simpson).epsilon(1e-10));
}

TEST_CASE("separated members: H = a(r) F(t)") {
  const auto spec = NonlinearitySpec::pure_exp(1.0, Potential::radial_polynomial({1.0, 0.0, -0.5}));
  for (double r : {0.0, 0.3, 0.9}) {
    const double a = 1.0 - 0.5 * r * r;
    CHECK(eval_H(spec, r, 2.0) == doctest::Approx(a * eval_F(spec, 2.0)).epsilon(1e-15));
    CHECK(eval_h(spec, r, 2.0) == doctest::Approx(a * std::exp(2.0)).epsilon(1e-15));
  }
}

TEST_CASE("classification and beta") {
  auto c = classify(NonlinearitySpec::pure_exp(2.0));
  CHECK(c.kind == Classification::Kind::Critical);
  CHECK(c.beta == 2.0);
  CHECK(classify(NonlinearitySpec::power_exp(2.0, 0.5)).kind == Classification::Kind::Subcritical);
  CHECK(classify(NonlinearitySpec::log_power_exp(1.0, 2.0, 0.5)).kind == Classification::Kind::Subcritical);
  c = classify(NonlinearitySpec::exp_poly(1.0, 0.0));
  CHECK(c.kind == Classification::Kind::Critical);
  CHECK(c.beta == 1.0);
  CHECK(classify(NonlinearitySpec::exp_poly(1.5, 3.0)).beta == 1.5);
  // invariant under f -> c f
  for (const auto& spec : catalog()) {
    CHECK(classify(spec.scaled(7.5)).beta == classify(spec).beta);
    CHECK(classify(spec.scaled(7.5)).kind == classify(spec).kind);
  }
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(NonlinearitySpec::pure_exp(0.0), std::invalid_argument);
  CHECK_THROWS_AS(NonlinearitySpec::power_exp(1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(NonlinearitySpec::power_exp(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(NonlinearitySpec::log_power_exp(-1.0, 2.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(nonlinearity_kind_from_string("Tabulated"), std::invalid_argument);
}

TEST_CASE("exponential envelopes hold on dense samples") {
  const auto e = fit_exp_bounds(NonlinearitySpec::pure_exp(1.0), 0.1, 100.0);
  CHECK(e.D_eps == doctest::Approx(1.0));
  // e^t is its own envelope: D = 1, C = 0 must satisfy both sides as well.
  ExpBoundFit exact = e;
  exact.C_eps = 0.0;
  exact.D_eps = 1.0;
  for (double t : {0.0, 0.5, 10.0, 99.0}) CHECK(exp_bounds_hold(NonlinearitySpec::pure_exp(1.0), exact, t));
  for (const auto& spec : catalog()) {
    const auto fit = fit_exp_bounds(spec, 0.5, 100.0);
    for (int i = 0; i <= 10000; ++i) {
      const double t = 100.0 * i / 10000.0;
      if (!exp_bounds_hold(spec, fit, t)) {
        FAIL_CHECK(to_string(spec.kind()) << " envelope fails at t = " << t);
        break;
      }
    }
  }
  CHECK_THROWS_AS(fit_exp_bounds(NonlinearitySpec::pure_exp(1.0), 0.0, 100.0), std::invalid_argument);
}

TEST_CASE("boundary hypotheses") {
  CHECK(verify_boundary_hypotheses(NonlinearitySpec::pure_exp(1.0), 0.2).passed());
  const auto dec = NonlinearitySpec::pure_exp(1.0, Potential::radial_polynomial({1.0, 0.0, -0.5}));
  const auto rep = verify_boundary_hypotheses(dec, 0.2);
  CHECK(rep.passed());
  CHECK(rep.max_dr_a < 0.0);
  const auto inc = NonlinearitySpec::pure_exp(1.0, Potential::radial_polynomial({1.0, 0.0, 1.0}));
  const auto bad = verify_boundary_hypotheses(inc, 0.2);
  REQUIRE_FALSE(bad.passed());
  CHECK(bad.violations.front().clause == "H3b");
  CHECK(bad.violations.front().r > 0.8);
}

TEST_CASE("potentials") {
  const auto p = Potential::radial_polynomial({2.0, 0.0, -1.0});
  CHECK(p(0.5) == doctest::Approx(1.75));
  CHECK(p.derivative(0.5) == doctest::Approx(-1.0));
  CHECK(p.lower_bound() >= 1.0 - 1e-12);
  CHECK(p.sup() == doctest::Approx(2.0));
  CHECK(Potential::constant(3.0)(0.7) == 3.0);
}
