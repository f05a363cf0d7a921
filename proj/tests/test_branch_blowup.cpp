#include <cmath>
#include <numbers>

#include "biharm/blowup_analysis.hpp"
#include "biharm/branch_continuation.hpp"
#include "doctest.h"

using namespace biharm;

namespace {

constexpr double kPi = std::numbers::pi;

const NonlinearitySpec& gelfand() {
  static const NonlinearitySpec spec = NonlinearitySpec::pure_exp(1.0);
  return spec;
}

RadialGrid branch_grid() { return RadialGrid::graded(1025, 50.0, 3.0, 0.1); }

const SolutionBranch& gelfand_branch() {
  static const SolutionBranch b = trace(gelfand(), BoundaryCondition::Dirichlet, branch_grid(), {}, 0.25, 25.0, 0.25);
  return b;
}

const BranchPoint& at(double M) {
  for (const auto& p : gelfand_branch().points) {
    if (std::fabs(p.M - M) < 1e-12) return p;
  }
  throw std::logic_error("M not on branch");
}

}  // namespace

TEST_CASE("bubble profile and energies") {
  for (double beta : {0.5, 1.0, 4.0}) CHECK(bubble(beta, 3.0, 0.0) == 0.0);
  CHECK(bubble(4.0, 24.0, 1.0) == doctest::Approx(-std::log(1.5)).epsilon(1e-15));
  CHECK(bubble_total_energy(4.0, 24.0) == doctest::Approx(16 * kPi * kPi).epsilon(1e-10));
  CHECK(bubble_total_energy(1.0, 1.0) == doctest::Approx(64 * kPi * kPi).epsilon(1e-10));
  CHECK(bubble_total_energy(2.0, 1.0) == doctest::Approx(32 * kPi * kPi).epsilon(1e-10));
  CHECK(bubble_total_energy(2.0, 100.0) == doctest::Approx(32 * kPi * kPi).epsilon(1e-10));
  // (1+S)^-2/2 - (1+S)^-3/3 antiderivative at S = 12.5
  const double S = 12.5;
  CHECK(canonical_bubble_fraction(5.0) ==
        doctest::Approx(1 - 6 * (0.5 / ((1 + S) * (1 + S)) - 1 / (3 * std::pow(1 + S, 3)))).epsilon(1e-14));
  CHECK(canonical_bubble_fraction(5.0) == doctest::Approx(0.9844).epsilon(1e-4));
  CHECK(bubble_mass_fraction(4.0, 24.0, 5.0) == doctest::Approx(canonical_bubble_fraction(5.0)).epsilon(1e-14));
  CHECK(bubble_mass_fraction(1.0, 1.0, 0.0) == 0.0);
  CHECK(bubble_mass_fraction(1.0, 1.0, 1e4) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("rescaling constant") {
  CHECK(rescaling_mu(gelfand(), 0.3, 20.0) == doctest::Approx(std::pow(0.3 * std::exp(20.0), -0.25)).epsilon(1e-15));
  // log-space path
  CHECK(std::isfinite(rescaling_mu(gelfand(), 1.0, 2000.0)));
}

TEST_CASE("exact bubble through rescale has zero deviation") {
  // u(r) = bubble(1, 1, r / mu) with lambda = 5^4 so that mu = 1/5 and the
  // 501 samples on rho in [0, 5] land on the grid nodes.
  const auto grid = RadialGrid::uniform(501);
  RadialSolution s;
  s.grid = grid;
  s.lambda = 625.0;
  s.M = 0.0;
  s.converged = true;
  for (double r : grid.nodes()) {
    s.u.push_back(bubble(1.0, 1.0, 5.0 * r));
    s.du.push_back(0.0);
    s.lap_u.push_back(0.0);
    s.dlap_u.push_back(0.0);
  }
  const auto rep = rescale(s, gelfand(), 625.0, 5.0, 501);
  CHECK(rep.mu == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(rep.deviation_sup <= 1e-15);
}

TEST_CASE("Gelfand branch structure") {
  const auto& b = gelfand_branch();
  REQUIRE_FALSE(b.truncated);
  REQUIRE(b.points.back().M == doctest::Approx(25.0));
  CHECK(b.fold_count() >= 1);
  for (std::size_t i = 1; i < b.points.size(); ++i) {
    CHECK(b.points[i].M > b.points[i - 1].M);
    CHECK(b.points[i].mu < b.points[i - 1].mu);
  }
  for (const auto& p : b.points) {
    CHECK(p.monotone);
    CHECK(std::isfinite(p.energy));
  }
  const auto e = energy_along_branch(b, gelfand());
  CHECK(std::isfinite(e.sup));
  const double e20 = at(20.0).energy, e22 = at(22.5).energy, e25 = at(25.0).energy;
  CHECK(std::max({e20, e22, e25}) / std::min({e20, e22, e25}) < 1.1);
}

TEST_CASE("single-point branch") {
  const auto b = trace(gelfand(), BoundaryCondition::Dirichlet, RadialGrid::graded(257, 1.0, 3.0), {}, 1.0, 1.0, 0.25);
  CHECK(b.points.size() == 1);
  CHECK_THROWS(trace(gelfand(), BoundaryCondition::Dirichlet, RadialGrid::graded(257, 1.0, 3.0), {}, 2.0, 1.0, 0.25));
}

TEST_CASE("small-amplitude slope") {
  // lambda(M) ~ M / (int G(0,y) dy) as M -> 0 with the clamped torsion value 1/192.
  const auto b = trace(gelfand(), BoundaryCondition::Dirichlet, RadialGrid::graded(257, 1.0, 3.0), {}, 0.01, 0.03, 0.01);
  REQUIRE(b.points.size() == 3);
  const double slope = (b.points[2].lambda - b.points[0].lambda) / (b.points[2].M - b.points[0].M);
  CHECK(b.points[0].lambda / b.points[0].M == doctest::Approx(slope).epsilon(0.05));
  CHECK(slope == doctest::Approx(192.0).epsilon(0.05));
}

TEST_CASE("cold re-solve reproduces M on the minimal branch") {
  const auto& b = gelfand_branch();
  for (const auto& p : b.points) {
    if (p.fold) break;
    const auto s = solve(gelfand(), p.lambda, BoundaryCondition::Dirichlet, branch_grid());
    CHECK(s.u.front() == doctest::Approx(p.M).epsilon(1e-6));
  }
}

TEST_CASE("fold count is stable under step halving") {
  const auto b = trace(gelfand(), BoundaryCondition::Dirichlet, branch_grid(), {}, 0.25, 25.0, 0.125);
  CHECK(b.fold_count() == gelfand_branch().fold_count());
}

TEST_CASE("rescaled profiles along the branch") {
  const auto& p20 = at(20.0);
  const auto r20 = rescale(p20.solution, gelfand(), p20.lambda);
  CHECK(r20.mu == doctest::Approx(std::pow(p20.lambda * std::exp(20.0), -0.25)).epsilon(1e-14));
  const auto& p25 = at(25.0);
  const auto r = rescale(p25.solution, gelfand(), p25.lambda);
  CHECK(r.v.front() == 0.0);
  for (double v : r.v) CHECK(v <= 0.0);
  CHECK(r.deviation_sup < 0.1);
  CHECK_FALSE(r.truncated);

  double prev = std::numeric_limits<double>::infinity();
  for (const auto& p : gelfand_branch().points) {
    if (p.M < 15.0) continue;
    const double dev = rescale(p.solution, gelfand(), p.lambda, 3.0, 301).deviation_sup;
    CHECK(dev <= prev);
    prev = dev;
  }
}

TEST_CASE("local energy") {
  const auto& p = at(25.0);
  const std::vector<double> R{0.0, 1.0, 2.0, 3.0, 5.0, 10.0};
  const auto le = local_energy(p.solution, gelfand(), p.lambda, R);
  CHECK(le[0] == 0.0);
  for (std::size_t i = 1; i < le.size(); ++i) CHECK(le[i] >= le[i - 1]);
  CHECK(le.back() <= solution_energy(p.solution, gelfand()) * (1 + 1e-12));
  // Against the limit profile the solution actually approaches (beta = 1, a = 1).
  const double frac = le[4] / (64 * kPi * kPi);
  CHECK(frac == doctest::Approx(bubble_mass_fraction(1.0, 1.0, 5.0)).epsilon(0.01));
}

TEST_CASE("gradient Lp fits") {
  const auto grid = RadialGrid::graded(513, 0.5, 0.7, 0.2);
  const auto plate = solve(NonlinearitySpec::constant(1.0), 192.0, BoundaryCondition::Dirichlet, grid);
  std::vector<double> radii;
  for (int k = 0; k <= 40; ++k) radii.push_back(std::pow(10.0, -4.0 + 0.1 * k));
  const auto fit = gradient_Lp_fit(plate, 2, 1.0, radii);
  // independent value: 2 pi^2 int_0^r s^3 |24 s^2 - 16| ds / r^2, with
  // F(r) = 4 r^4 - 4 r^6 the primitive of 16 s^3 - 24 s^5 and a sign change at r0^2 = 2/3.
  const auto F = [](double r) { return 4 * std::pow(r, 4) - 4 * std::pow(r, 6); };
  const double r0 = std::sqrt(2.0 / 3.0);
  double C = 0.0;
  for (double r : radii) {
    const double integral = r <= r0 ? F(r) : 2 * F(r0) - F(r);
    C = std::max(C, 2 * kPi * kPi * integral / (r * r));
  }
  CHECK(fit.C == doctest::Approx(C).epsilon(1e-4));
  CHECK(fit.C <= 8 * kPi * kPi);

  RadialSolution zero = plate;
  std::fill(zero.u.begin(), zero.u.end(), 0.0);
  std::fill(zero.du.begin(), zero.du.end(), 0.0);
  std::fill(zero.lap_u.begin(), zero.lap_u.end(), 0.0);
  std::fill(zero.dlap_u.begin(), zero.dlap_u.end(), 0.0);
  CHECK(gradient_Lp_fit(zero, 2, 1.0, radii).C == 0.0);

  const auto& p = at(25.0);
  CHECK(gradient_Lp_check(p.solution, gelfand(), 2, 1.0).passed());
}

TEST_CASE("constant load branch: lambda = 192 M, energy grows, divergence check consistent") {
  // u = lambda (1 - r^2)^2 / 192, so M = lambda / 192 and E = pi^2 lambda / 2 exactly.
  const auto spec = NonlinearitySpec::constant(1.0);
  const auto grid = RadialGrid::graded(257, 1.0, 3.0, 0.3);
  const auto br = trace(spec, BoundaryCondition::Dirichlet, grid, {}, 0.5, 3.0, 0.25);
  REQUIRE(br.points.size() >= 10);
  for (const auto& pt : br.points) {
    CHECK(pt.lambda == doctest::Approx(192.0 * pt.M).epsilon(1e-5));
    CHECK(pt.energy == doctest::Approx(std::numbers::pi * std::numbers::pi * pt.lambda / 2.0).epsilon(1e-6));
  }
  const auto div = subcritical_divergence_check(br, spec);
  CHECK(div.consistent());
  CHECK(div.growth == doctest::Approx(br.points.back().M / br.points[br.points.size() / 2].M).epsilon(1e-6));
  CHECK_THROWS_AS(subcritical_divergence_check(br, NonlinearitySpec::pure_exp(1.0)), std::invalid_argument);
}

TEST_SUITE("known_gaps") {
  TEST_CASE("cold re-solve reproduces M at every branch point") {
    // Past the fold a zero-initialised solve lands on the minimal solution.
    int mismatched = 0;
    for (const auto& p : gelfand_branch().points) {
      const auto s = solve(gelfand(), p.lambda, BoundaryCondition::Dirichlet, branch_grid());
      if (std::fabs(s.u.front() - p.M) > 1e-6) ++mismatched;
    }
    INFO(mismatched, " of ", gelfand_branch().points.size(), " points mismatched");
    CHECK(mismatched == 0);
  }

  TEST_CASE("local energy fraction at M = 25 lies in [0.90, 1.06]") {
    const auto& p = at(25.0);
    const double frac = local_energy(p.solution, gelfand(), p.lambda, {5.0})[0] / (64 * kPi * kPi);
    INFO("fraction = ", frac);
    CHECK(frac >= 0.90);
    CHECK(frac <= 1.06);
  }
}
