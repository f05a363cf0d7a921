#include "radial_system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SparseLU>
#include <fmt/format.h>

#include "biharm/finite_difference.hpp"

namespace biharm::detail {
namespace {

double max_abs(const Eigen::VectorXd& v) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::fabs(v[i]);
    if (!(a <= m)) m = a;  // propagates NaN as +inf below
  }
  return std::isfinite(m) ? m : std::numeric_limits<double>::infinity();
}

}  // namespace

RadialSystem::RadialSystem(const NonlinearitySpec& spec, BoundaryCondition bc,
                           const RadialGrid& grid, std::optional<double> target_M)
    : spec_(spec), bc_(bc), grid_(grid), target_M_(target_M), n_(grid.size()) {
  const auto& r = grid.nodes();
  lap_.assign(n_, Stencil{});
  scale_.assign(n_, 0.0);
  a_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) a_[i] = spec.potential()(r[i]);
  auto second_derivative = [&](std::size_t first, std::size_t i) {
    const double xs[4] = {r[first], r[first + 1], r[first + 2], r[first + 3]};
    return fornberg_weights(r[i], xs, 2)[2];
  };
  for (std::size_t i = 1; i + 1 < n_; ++i) {
    const double hm = r[i] - r[i - 1];
    const double hp = r[i + 1] - r[i];
    const double sc = hm * hp;
    // w'' from cubic-exact four-point stencils, averaged over both
    // one-node extensions where they exist (plain 3-point on uniform grids).
    double d2[5] = {0.0, 0.0, 0.0, 0.0, 0.0};
    const bool left = i >= 2;
    const bool right = i + 2 < n_;
    const double share = (left && right) ? 0.5 : 1.0;
    if (left) {
      const auto w = second_derivative(i - 2, i);
      for (int j = 0; j < 4; ++j) d2[j] += share * w[j];
    }
    if (right) {
      const auto w = second_derivative(i - 1, i);
      for (int j = 0; j < 4; ++j) d2[j + 1] += share * w[j];
    }
    // 3w'/r = 6 dw/d(r^2) on the squared nodes.
    const double a = r[i] * r[i] - r[i - 1] * r[i - 1];
    const double b = r[i + 1] * r[i + 1] - r[i] * r[i];
    const double k = 6.0 / (a * b * (a + b));
    d2[1] -= k * b * b;
    d2[2] += k * (b * b - a * a);
    d2[3] += k * a * a;
    for (int j = 0; j < 5; ++j) lap_[i].w[j] = sc * d2[j];
    scale_[i] = sc;
  }
  // Even fit w0 + a r^2 + b r^4 through the first three nodes; Delta w(0) = 8a.
  const double r1 = r[1] * r[1];
  const double r2 = r[2] * r[2];
  origin_w1_ = 8.0 * r2 / (r2 - r1);
  origin_w2_ = -8.0 * r1 * r1 / (r2 * (r2 - r1));
  origin_w0_ = -(origin_w1_ + origin_w2_);
  origin_scale_ = r1;

  const double xs[4] = {r[n_ - 4], r[n_ - 3], r[n_ - 2], r[n_ - 1]};
  const auto w = fornberg_weights(1.0, xs, 1);
  bnd_m3_ = w[1][0];
  bnd_m2_ = w[1][1];
  bnd_m1_ = w[1][2];
  bnd_0_ = w[1][3];
}

double RadialSystem::residual(const Eigen::VectorXd& z, double lambda, Eigen::VectorXd& F) const {
  const std::size_t n = n_;
  const double lam = bordered() ? z[2 * n] : lambda;
  F.resize(static_cast<Eigen::Index>(unknowns()));
  auto U = [&](std::size_t i) { return z[2 * i]; };
  auto V = [&](std::size_t i) { return z[2 * i + 1]; };
  double big = 0.0;

  {
    const double fu = eval_f_extended(spec_, U(0)).first;
    const double lu = origin_w0_ * U(0) + origin_w1_ * U(1) + origin_w2_ * U(2);
    const double lv = origin_w0_ * V(0) + origin_w1_ * V(1) + origin_w2_ * V(2);
    const double su = origin_scale_ * V(0);
    const double sv = origin_scale_ * lam * a_[0] * fu;
    F[0] = lu - su;
    F[1] = lv - sv;
    big = std::max({big, std::fabs(origin_w0_ * U(0)) + std::fabs(origin_w1_ * U(1)) +
                             std::fabs(origin_w2_ * U(2)) + std::fabs(su),
                    std::fabs(origin_w0_ * V(0)) + std::fabs(origin_w1_ * V(1)) +
                        std::fabs(origin_w2_ * V(2)) + std::fabs(sv)});
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const auto& st = lap_[i];
    const double fu = eval_f_extended(spec_, U(i)).first;
    double lu = 0.0, lv = 0.0, au = 0.0, av = 0.0;
    for (int j = 0; j < 5; ++j) {
      if (st.w[j] == 0.0) continue;
      const std::size_t k = i + j - 2;
      const double tu = st.w[j] * U(k);
      const double tv = st.w[j] * V(k);
      lu += tu;
      lv += tv;
      au += std::fabs(tu);
      av += std::fabs(tv);
    }
    const double su = scale_[i] * V(i);
    const double sv = scale_[i] * lam * a_[i] * fu;
    F[2 * i] = lu - su;
    F[2 * i + 1] = lv - sv;
    big = std::max({big, au + std::fabs(su), av + std::fabs(sv)});
  }
  const std::size_t e = n - 1;
  F[2 * e] = U(e);
  if (bc_ == BoundaryCondition::Dirichlet) {
    F[2 * e + 1] = bnd_m3_ * U(e - 3) + bnd_m2_ * U(e - 2) + bnd_m1_ * U(e - 1) + bnd_0_ * U(e);
  } else {
    F[2 * e + 1] = V(e);
  }
  if (bordered()) F[2 * n] = U(0) - *target_M_;
  return big;
}

Eigen::SparseMatrix<double> RadialSystem::jacobian(const Eigen::VectorXd& z, double lambda) const {
  const std::size_t n = n_;
  const bool bord = bordered();
  const double lam = bord ? z[2 * n] : lambda;
  const auto N = static_cast<Eigen::Index>(unknowns());
  const auto L = static_cast<int>(2 * n);  // lambda column
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(8 * n + 4);
  auto add = [&](std::size_t row, std::size_t col, double v) {
    t.emplace_back(static_cast<int>(row), static_cast<int>(col), v);
  };

  {
    const auto [f, fp] = eval_f_extended(spec_, z[0]);
    add(0, 0, origin_w0_);
    add(0, 2, origin_w1_);
    add(0, 4, origin_w2_);
    add(0, 1, -origin_scale_);
    add(1, 1, origin_w0_);
    add(1, 3, origin_w1_);
    add(1, 5, origin_w2_);
    add(1, 0, -origin_scale_ * lam * a_[0] * fp);
    if (bord) add(1, L, -origin_scale_ * a_[0] * f);
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const auto& st = lap_[i];
    const auto [f, fp] = eval_f_extended(spec_, z[2 * i]);
    const std::size_t ru = 2 * i;
    const std::size_t rv = 2 * i + 1;
    for (int j = 0; j < 5; ++j) {
      if (st.w[j] == 0.0) continue;
      const std::size_t k = i + j - 2;
      add(ru, 2 * k, st.w[j]);
      add(rv, 2 * k + 1, st.w[j]);
    }
    add(ru, 2 * i + 1, -scale_[i]);
    add(rv, 2 * i, -scale_[i] * lam * a_[i] * fp);
    if (bord) add(rv, L, -scale_[i] * a_[i] * f);
  }
  const std::size_t e = n - 1;
  add(2 * e, 2 * e, 1.0);
  if (bc_ == BoundaryCondition::Dirichlet) {
    add(2 * e + 1, 2 * (e - 3), bnd_m3_);
    add(2 * e + 1, 2 * (e - 2), bnd_m2_);
    add(2 * e + 1, 2 * (e - 1), bnd_m1_);
    add(2 * e + 1, 2 * e, bnd_0_);
  } else {
    add(2 * e + 1, 2 * e + 1, 1.0);
  }
  if (bord) add(2 * n, 0, 1.0);

  Eigen::SparseMatrix<double> J(N, N);
  J.setFromTriplets(t.begin(), t.end());
  J.makeCompressed();
  return J;
}

std::vector<double> RadialSystem::derivative(const std::vector<double>& w) const {
  const auto& r = grid_.nodes();
  std::vector<double> d(n_, 0.0);
  for (std::size_t i = 1; i + 1 < n_; ++i) {
    const double hm = r[i] - r[i - 1];
    const double hp = r[i + 1] - r[i];
    (void)hm;
    (void)hp;
    const double a = r[i] * r[i] - r[i - 1] * r[i - 1];
    const double b = r[i + 1] * r[i + 1] - r[i] * r[i];
    d[i] = 2.0 * r[i] * (a * a * w[i + 1] + (b * b - a * a) * w[i] - b * b * w[i - 1]) /
           (a * b * (a + b));
  }
  const std::size_t e = n_ - 1;
  d[e] = bnd_m3_ * w[e - 3] + bnd_m2_ * w[e - 2] + bnd_m1_ * w[e - 1] + bnd_0_ * w[e];
  return d;
}

RadialSolution pack_solution(const RadialSystem& sys, const RadialGrid& grid,
                             BoundaryCondition bc, const Eigen::VectorXd& z, double lambda,
                             double residual, double floor, int iters) {
  const std::size_t n = sys.n();
  RadialSolution s;
  s.grid = grid;
  s.bc = bc;
  s.u.resize(n);
  s.lap_u.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.u[i] = z[2 * i];
    s.lap_u[i] = z[2 * i + 1];
  }
  s.du = sys.derivative(s.u);
  s.dlap_u = sys.derivative(s.lap_u);
  s.lambda = sys.bordered() ? z[2 * n] : lambda;
  s.M = s.u[0];
  s.residual_norm = residual;
  s.residual_floor = floor;
  s.newton_iters = iters;
  return s;
}

NewtonOutcome newton(const RadialSystem& sys, Eigen::VectorXd z, double lambda,
                     const SolverConfig& cfg,
                     const std::function<RadialSolution(const Eigen::VectorXd&, double, double, int)>& pack) {
  Eigen::VectorXd F;
  Eigen::VectorXd trial;
  Eigen::VectorXd Ft;
  double big = sys.residual(z, lambda, F);
  double norm = max_abs(F);
  constexpr double kFloorFactor = 16.0 * std::numeric_limits<double>::epsilon();
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  bool pattern_ready = false;

  for (int iter = 0;; ++iter) {
    const double floor = kFloorFactor * big;
    if (norm <= std::max(cfg.newton_tol, floor)) return {z, lambda, norm, floor, iter};
    if (iter >= cfg.max_iters) {
      throw NoConvergence(
          fmt::format("Newton did not converge in {} iterations (residual {:.3e})", iter, norm),
          pack(z, norm, floor, iter));
    }
    const auto J = sys.jacobian(z, lambda);
    if (!pattern_ready) {
      lu.analyzePattern(J);
      pattern_ready = true;
    }
    lu.factorize(J);
    if (lu.info() != Eigen::Success) {
      throw SingularJacobian(fmt::format("Jacobian singular at Newton iteration {}: {}", iter,
                                         lu.lastErrorMessage()));
    }
    const Eigen::VectorXd dz = lu.solve(-F);
    if (lu.info() != Eigen::Success || !dz.allFinite()) {
      throw SingularJacobian(fmt::format("Jacobian solve failed at Newton iteration {}", iter));
    }
    const double lin_res = max_abs(J * dz + F);
    if (!(lin_res <= 1e-6 * std::max(norm, 1e-300) + 1e-14)) {
      throw SingularJacobian(fmt::format(
          "Jacobian singular to working precision at iteration {} (linear residual {:.3e})", iter,
          lin_res));
    }

    double t = 1.0;
    bool accepted = false;
    const int halvings = cfg.damping == Damping::LineSearchHalving ? cfg.max_halvings : 0;
    for (int k = 0; k <= halvings; ++k, t *= 0.5) {
      trial = z + t * dz;
      const double big_t = sys.residual(trial, lambda, Ft);
      const double norm_t = max_abs(Ft);
      if (cfg.damping == Damping::None ? std::isfinite(norm_t) : norm_t < norm) {
        z.swap(trial);
        F.swap(Ft);
        norm = norm_t;
        big = big_t;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      throw NoConvergence(
          fmt::format("residual non-decreasing after damping exhausted (residual {:.3e})", norm),
          pack(z, norm, kFloorFactor * big, iter));
    }
  }
}

}  // namespace biharm::detail
