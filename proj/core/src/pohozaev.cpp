#include "biharm/pohozaev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "biharm/quadrature.hpp"
#include "biharm/radial_profile.hpp"

namespace biharm {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kPolar = 32;

// int over phi in [a, b] of f(phi) * 4 pi sin^2 phi: the S^3 measure after
// integrating the two angles around e1.
double polar_integral(const std::function<double(double)>& f, double a, double b) {
  auto g = [&](double phi) {
    const double s = std::sin(phi);
    return 4.0 * kPi * s * s * f(phi);
  };
  return gauss_integrate(g, a, b, kPolar);
}

struct Fields {
  double u, du, lap, dlap;
};

struct Context {
  RadialProfile prof;
  const NonlinearitySpec& spec;
  double lambda;

  [[nodiscard]] Fields at(double r) const {
    r = std::clamp(r, 0.0, 1.0);
    return {prof.u(r), prof.du(r), prof.lap(r), prof.dlap(r)};
  }
  [[nodiscard]] double H(double r, double u) const {
    return lambda * spec.potential()(r) * eval_F_extended(spec, u);
  }
  // |grad_x H| direction is x/|x|; this is its radial magnitude.
  [[nodiscard]] double dH_dr(double r, double u) const {
    if (u == 0.0) return 0.0;
    return lambda * spec.potential().derivative(r) * eval_F_extended(spec, u);
  }
};

// Point in the (x1, rho) half plane with rho the distance to the e1 axis.
struct Point {
  double x1, rho;
  [[nodiscard]] double norm() const { return std::hypot(x1, rho); }
};

// Boundary ledger on the sphere |x - c e1| = R for phi in [a, b], outward
// normal (cos phi, sin phi) in the (x1, rho) plane.
BoundaryPiece sphere_piece(const Context& ctx, std::string name, double c, double R, double a,
                           double b, double y) {
  BoundaryPiece piece;
  piece.name = std::move(name);
  const double R3 = R * R * R;
  struct Local {
    double xyn, H, lap, dlap, du, xn, xy_xhat;
  };
  auto local = [&](double phi) {
    const double n1 = std::cos(phi);
    const double n2 = std::sin(phi);
    const Point p{c + R * n1, R * n2};
    const double rr = p.norm();
    const Fields f = ctx.at(rr);
    const double h1 = rr > 0.0 ? p.x1 / rr : 1.0;
    const double h2 = rr > 0.0 ? p.rho / rr : 0.0;
    Local l{};
    l.xyn = (p.x1 - y) * n1 + p.rho * n2;
    l.H = ctx.H(std::min(rr, 1.0), f.u);
    l.lap = f.lap;
    l.dlap = f.dlap;
    l.du = f.du;
    l.xn = h1 * n1 + h2 * n2;
    l.xy_xhat = (p.x1 - y) * h1 + p.rho * h2;
    return l;
  };
  auto integrate = [&](auto&& term) {
    return R3 * polar_integral([&](double phi) { return term(local(phi)); }, a, b);
  };
  piece.boundary_H_term = integrate([](const Local& l) { return l.xyn * l.H; });
  piece.b.half_lap_sq = integrate([](const Local& l) { return 0.5 * l.lap * l.lap * l.xyn; });
  piece.b.minus2_un_lap = integrate([](const Local& l) { return -2.0 * l.du * l.xn * l.lap; });
  piece.b.lapn_xgradu = integrate([](const Local& l) { return -l.dlap * l.xn * l.du * l.xy_xhat; });
  piece.b.un_xgradlap = integrate([](const Local& l) { return -l.du * l.xn * l.dlap * l.xy_xhat; });
  piece.b.gradlap_gradu_xn = integrate([](const Local& l) { return l.dlap * l.du * l.xyn; });
  return piece;
}

// Volume terms over x = c e1 + t (cos phi, sin phi), t in t_breaks cells,
// phi in [phi_lo(t), pi].
std::pair<double, double> volume_terms(const Context& ctx, double c, std::span<const double> t_breaks,
                                       std::size_t t_order,
                                       const std::function<double(double)>& phi_lo, double y) {
  std::vector<double> vh;
  std::vector<double> vg;
  const auto& rule = gauss_legendre(t_order);
  for (std::size_t k = 0; k + 1 < t_breaks.size(); ++k) {
    const double lo = t_breaks[k];
    const double hi = t_breaks[k + 1];
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    double sh = 0.0;
    double sg = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double t = mid + half * rule.nodes[q];
      const double w = half * rule.weights[q] * t * t * t;
      const double a = phi_lo(t);
      const double ih = polar_integral(
          [&](double phi) {
            const Point p{c + t * std::cos(phi), t * std::sin(phi)};
            const double rr = std::min(p.norm(), 1.0);
            return 4.0 * ctx.H(rr, ctx.at(rr).u);
          },
          a, kPi);
      double ig = 0.0;
      if (ctx.spec.potential().kind() != Potential::Kind::Constant) {
        ig = polar_integral(
            [&](double phi) {
              const Point p{c + t * std::cos(phi), t * std::sin(phi)};
              const double rr = p.norm();
              if (rr == 0.0) return 0.0;
              const double xy_xhat = ((p.x1 - y) * p.x1 + p.rho * p.rho) / rr;
              const double r1 = std::min(rr, 1.0);
              return xy_xhat * ctx.dH_dr(r1, ctx.at(r1).u);
            },
            a, kPi);
      }
      sh += w * ih;
      sg += w * ig;
    }
    vh.push_back(sh);
    vg.push_back(sg);
  }
  return {pairwise_sum(vh), pairwise_sum(vg)};
}

void check_input(const RadialSolution& sol, double lambda) {
  if (!sol.converged) throw std::invalid_argument("Pohozaev ledger needs a converged solution");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument(fmt::format("lambda must be finite and >= 0, got {}", lambda));
  }
}

void finish(PohozaevReport& rep) {
  rep.boundary_H_term = 0.0;
  rep.b_terms = {};
  for (const auto& p : rep.pieces) {
    rep.boundary_H_term += p.boundary_H_term;
    rep.b_terms += p.b;
  }
  rep.residual = rep.lhs() - rep.rhs();
  const auto& b = rep.b_terms;
  double big = 0.0;
  for (double v : {rep.volume_H_term, rep.volume_gradH_term, rep.boundary_H_term, b.half_lap_sq,
                   b.minus2_un_lap, b.lapn_xgradu, b.un_xgradlap, b.gradlap_gradu_xn}) {
    big = std::max(big, std::fabs(v));
  }
  rep.relative_residual = std::fabs(rep.residual) / std::max(big, 1e-30);
}

}  // namespace

double BoundaryTerms::sum() const {
  return half_lap_sq + minus2_un_lap + lapn_xgradu + un_xgradlap + gradlap_gradu_xn;
}

BoundaryTerms& BoundaryTerms::operator+=(const BoundaryTerms& o) {
  half_lap_sq += o.half_lap_sq;
  minus2_un_lap += o.minus2_un_lap;
  lapn_xgradu += o.lapn_xgradu;
  un_xgradlap += o.un_xgradlap;
  gradlap_gradu_xn += o.gradlap_gradu_xn;
  return *this;
}

PohozaevReport pohozaev_ball(const RadialSolution& sol, const NonlinearitySpec& spec, double lambda,
                             double y_offset) {
  check_input(sol, lambda);
  const Context ctx{RadialProfile::from_solution(sol), spec, lambda};
  PohozaevReport rep;
  rep.y = y_offset;
  const auto& r = sol.grid.nodes();
  std::tie(rep.volume_H_term, rep.volume_gradH_term) =
      volume_terms(ctx, 0.0, r, 6, [](double) { return 0.0; }, y_offset);
  rep.pieces.push_back(sphere_piece(ctx, "sphere", 0.0, 1.0, 0.0, kPi, y_offset));
  finish(rep);
  return rep;
}

PohozaevReport pohozaev_annulus(const RadialSolution& sol, const NonlinearitySpec& spec,
                                double lambda, double x0_offset, double r_inner) {
  check_input(sol, lambda);
  if (!(r_inner > 0.0)) throw std::invalid_argument("empty intersection: sub-ball radius must be > 0");
  const bool interior = x0_offset >= 0.0 && x0_offset + r_inner < 1.0;
  const bool boundary = x0_offset == 1.0;
  if (!interior && !boundary) {
    throw std::invalid_argument(fmt::format(
        "sub-ball B_{}({} e1) is neither interior nor centred on the boundary point e1", r_inner,
        x0_offset));
  }
  if (boundary && r_inner > 1.0) {
    throw std::invalid_argument("boundary-centred sub-ball needs r <= 1 so that <n(x0), n> >= 1/2");
  }
  const Context ctx{RadialProfile::from_solution(sol), spec, lambda};
  PohozaevReport rep;
  std::vector<double> t_breaks(65);
  for (std::size_t k = 0; k < t_breaks.size(); ++k) t_breaks[k] = r_inner * static_cast<double>(k) / 64.0;

  if (interior) {
    rep.y = x0_offset;
    std::tie(rep.volume_H_term, rep.volume_gradH_term) =
        volume_terms(ctx, x0_offset, t_breaks, 8, [](double) { return 0.0; }, rep.y);
    rep.pieces.push_back(sphere_piece(ctx, "sphere", x0_offset, r_inner, 0.0, kPi, rep.y));
  } else {
    auto lap_sq = [&](double phi) {
      (void)phi;
      const double l = ctx.at(1.0).lap;
      return l * l;
    };
    rep.rho = select_cap_rho(lap_sq, r_inner);
    rep.y = 1.0 + rep.rho;
    // |x0 + t n|^2 < 1  <=>  cos phi < -t/2.
    std::tie(rep.volume_H_term, rep.volume_gradH_term) = volume_terms(
        ctx, 1.0, t_breaks, 8, [](double t) { return std::acos(-0.5 * t); }, rep.y);
    const double cap = std::acos(1.0 - 0.5 * r_inner * r_inner);
    rep.pieces.push_back(sphere_piece(ctx, "boundary_cap", 0.0, 1.0, 0.0, cap, rep.y));
    rep.pieces.push_back(
        sphere_piece(ctx, "interior_cap", 1.0, r_inner, std::acos(-0.5 * r_inner), kPi, rep.y));
  }
  finish(rep);
  return rep;
}

double select_cap_rho(const std::function<double(double)>& lap_sq, double r) {
  if (!(r > 0.0 && r <= 1.0)) throw std::invalid_argument("cap radius must lie in (0, 1]");
  const double cap = std::acos(1.0 - 0.5 * r * r);
  const double num = polar_integral([&](double phi) { return lap_sq(phi) * (1.0 - std::cos(phi)); }, 0.0, cap);
  const double den = polar_integral([&](double phi) { return lap_sq(phi) * std::cos(phi); }, 0.0, cap);
  if (!(den > 0.0)) throw std::domain_error("cap selection: vanishing (Lap u)^2 on the cap");
  return num / den;
}

double cap_lap_sq_term(const std::function<double(double)>& lap_sq, double r, double rho) {
  const double cap = std::acos(1.0 - 0.5 * r * r);
  return 0.5 * polar_integral(
                   [&](double phi) { return lap_sq(phi) * (1.0 - (1.0 + rho) * std::cos(phi)); },
                   0.0, cap);
}

}  // namespace biharm
