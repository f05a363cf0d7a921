#include "biharm/green_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "biharm/quadrature.hpp"

namespace biharm {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBoggio = 1.0 / (8.0 * kPi * kPi);
constexpr double kLaplace = 1.0 / (4.0 * kPi * kPi);

double dot(const BallPoint& a, const BallPoint& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) s += a.x[i] * b.x[i];
  return s;
}

void check_distinct(double d, const char* who) {
  if (!(d > 0.0)) throw KernelSingularity(fmt::format("{}: x = y", who));
}

// x - log(1 + x) with 1 + x = ratio supplied separately so neither end
// loses digits: series for small |x|, direct log near the singularity.
double x_minus_log1p(double x, double ratio) {
  if (std::fabs(x) > 1e-2) return x - std::log(ratio);
  double term = x * x;
  double sum = 0.0;
  for (int k = 2; k < 12; ++k) {
    sum += (k % 2 == 0 ? 1.0 : -1.0) * term / k;
    term *= x;
  }
  return sum;
}

// Boggio kernel through q = A^{-2} - 1 = -(1-|x|^2)(1-|y|^2)/[XY]^2,
// using the identity [XY]^2 - |x-y|^2 = (1-|x|^2)(1-|y|^2).
double boggio_from_q(double q, double ratio) { return 0.5 * kBoggio * x_minus_log1p(q, ratio); }

double one_minus_sq(double r) { return (1.0 - r) * (1.0 + r); }

// G_{-Delta}(0, t).
double laplace_pole(double t) { return kLaplace * (1.0 / (t * t) - 1.0); }

}  // namespace

double BallPoint::norm2() const { return dot(*this, *this); }
double BallPoint::norm() const { return std::sqrt(norm2()); }

double distance(const BallPoint& a, const BallPoint& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) s += (a.x[i] - b.x[i]) * (a.x[i] - b.x[i]);
  return std::sqrt(s);
}

double xy_bracket(const BallPoint& x, const BallPoint& y) {
  const double v = x.norm2() * y.norm2() - 2.0 * dot(x, y) + 1.0;
  return std::sqrt(std::max(v, 0.0));
}

KernelValue green_laplace_ball(const BallPoint& x, const BallPoint& y, bool with_gradient) {
  const double d = distance(x, y);
  check_distinct(d, "green_laplace_ball");
  const double b = xy_bracket(x, y);
  KernelValue kv;
  kv.value = kLaplace * (1.0 / (d * d) - 1.0 / (b * b));
  if (with_gradient) {
    const double y2 = y.norm2();
    std::array<double, 4> g{};
    for (std::size_t i = 0; i < 4; ++i) {
      g[i] = kLaplace * (-2.0 * (x.x[i] - y.x[i]) / (d * d * d * d) +
                         2.0 * (y2 * x.x[i] - y.x[i]) / (b * b * b * b));
    }
    kv.gradient_x = g;
  }
  return kv;
}

KernelValue green_dirichlet_biharmonic_ball(const BallPoint& x, const BallPoint& y,
                                            bool with_gradient) {
  const double d = distance(x, y);
  check_distinct(d, "green_dirichlet_biharmonic_ball");
  const double b = xy_bracket(x, y);
  const double A = b / d;
  const double P = one_minus_sq(x.norm()) * one_minus_sq(y.norm());
  KernelValue kv;
  kv.value = boggio_from_q(-P / (b * b), (d * d) / (b * b));
  if (with_gradient) {
    const double dGdA = kBoggio * (P / (d * d)) / (A * A * A);
    const double y2 = y.norm2();
    std::array<double, 4> g{};
    for (std::size_t i = 0; i < 4; ++i) {
      const double db = (y2 * x.x[i] - y.x[i]) / b;
      const double dA = db / d - b * (x.x[i] - y.x[i]) / (d * d * d);
      g[i] = dGdA * dA;
    }
    kv.gradient_x = g;
  }
  return kv;
}

double green_dirichlet_pole(double s) {
  if (!(s > 0.0)) throw KernelSingularity("green_dirichlet_pole: s = 0");
  return kBoggio * (-std::log(s) + (s * s - 1.0) / 2.0);
}

std::vector<std::pair<BallPoint, BallPoint>> sample_pairs(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&](bool near_sphere) {
    std::array<double, 4> v{};
    double n2 = 0.0;
    while (n2 < 1e-24) {
      n2 = 0.0;
      for (auto& c : v) {
        c = normal(rng);
        n2 += c * c;
      }
    }
    double rad = std::pow(unit(rng), 0.25);
    if (near_sphere) rad = 1.0 - std::pow(10.0, -1.0 - 5.0 * unit(rng));
    rad = std::min(rad, 1.0 - 1e-12);
    const double s = rad / std::sqrt(n2);
    for (auto& c : v) c *= s;
    return BallPoint(v);
  };
  std::vector<std::pair<BallPoint, BallPoint>> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const bool edge = k % 3 == 2;
    BallPoint a = draw(false);
    BallPoint b = draw(edge);
    while (distance(a, b) < 1e-6) b = draw(edge);
    out.emplace_back(a, b);
  }
  return out;
}

TwoSidedReport verify_two_sided_estimate(std::size_t n_samples, std::uint64_t seed) {
  if (n_samples < 1000) throw std::invalid_argument("verify_two_sided_estimate needs >= 1000 samples");
  TwoSidedReport rep;
  rep.samples = n_samples;
  rep.R_min = std::numeric_limits<double>::infinity();
  rep.R_max = 0.0;
  for (const auto& [x, y] : sample_pairs(n_samples, seed)) {
    const double d = distance(x, y);
    const double dx = 1.0 - x.norm();
    const double dy = 1.0 - y.norm();
    const double q = dx * dx * dy * dy / (d * d * d * d);
    const double R = green_dirichlet_biharmonic_ball(x, y).value / std::log1p(q);
    rep.R_min = std::min(rep.R_min, R);
    rep.R_max = std::max(rep.R_max, R);
  }
  return rep;
}

bool GradientEstimateReport::passed() const {
  auto stable = [](double half, double all) {
    return std::isfinite(all) && half > 0.0 && all <= 1.5 * half;
  };
  return stable(sup_grad_dist_half, sup_grad_dist) && stable(sup_value_log_half, sup_value_log);
}

GradientEstimateReport verify_gradient_estimate(std::size_t n_samples, double fd_step,
                                                std::uint64_t seed) {
  if (!(fd_step > 0.0 && fd_step <= 1e-3)) {
    throw std::invalid_argument(fmt::format("fd_step must lie in (0, 1e-3], got {}", fd_step));
  }
  if (n_samples < 2) throw std::invalid_argument("verify_gradient_estimate needs >= 2 samples");
  GradientEstimateReport rep;
  rep.samples = n_samples;
  rep.fd_step = fd_step;
  const auto pairs = sample_pairs(n_samples, seed);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& [x, y] = pairs[k];
    const double d = distance(x, y);
    // Keep the stencil off the singularity and inside the ball.
    const double h = std::min({fd_step, 0.25 * d, 0.5 * (1.0 - x.norm())});
    std::array<double, 4> g{};
    for (std::size_t i = 0; i < 4; ++i) {
      BallPoint xp = x;
      BallPoint xm = x;
      xp.x[i] += h;
      xm.x[i] -= h;
      g[i] = (green_dirichlet_biharmonic_ball(xp, y).value -
              green_dirichlet_biharmonic_ball(xm, y).value) /
             (2.0 * h);
    }
    const auto kv = green_dirichlet_biharmonic_ball(x, y, true);
    double gn = 0.0;
    double en = 0.0;
    double an = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      gn += g[i] * g[i];
      en += (g[i] - (*kv.gradient_x)[i]) * (g[i] - (*kv.gradient_x)[i]);
      an += (*kv.gradient_x)[i] * (*kv.gradient_x)[i];
    }
    gn = std::sqrt(gn);
    if (an > 0.0) rep.max_fd_error = std::max(rep.max_fd_error, std::sqrt(en / an));
    const double gd = gn * d;
    const double vl = std::fabs(kv.value) / std::log(2.0 + 1.0 / d);
    rep.sup_grad_dist = std::max(rep.sup_grad_dist, gd);
    rep.sup_value_log = std::max(rep.sup_value_log, vl);
    if (k < pairs.size() / 2) {
      rep.sup_grad_dist_half = rep.sup_grad_dist;
      rep.sup_value_log_half = rep.sup_value_log;
    }
  }
  return rep;
}

double green_navier_pole_closed_form(double s) {
  if (!(s > 0.0 && s < 1.0)) throw std::domain_error("Navier pole radius must lie in (0, 1)");
  return -std::log(s) / (8.0 * kPi * kPi) - (1.0 - s * s) / (32.0 * kPi * kPi);
}

namespace {

// Cumulative nested integrals on the grid: psi(t) = int_0^t tau^3 g0,
// phi(s) = int_s^1 psi(t)/t^3 dt.
struct NavierTable {
  std::vector<double> r;
  std::vector<double> psi;  // at nodes
  std::vector<double> phi;  // at nodes (phi[0] unused: log divergence)

  explicit NavierTable(const RadialGrid& grid) : r(grid.nodes()) {
    const std::size_t n = r.size();
    auto inner = [](double t) { return t * t * t * laplace_pole(t); };
    psi.assign(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) psi[i] = psi[i - 1] + gauss_integrate(inner, r[i - 1], r[i], 20);
    phi.assign(n, 0.0);
    for (std::size_t i = n - 1; i-- > 1;) phi[i] = phi[i + 1] + outer_cell(i, r[i]);
  }

  [[nodiscard]] std::size_t cell_of(double t) const {
    auto it = std::upper_bound(r.begin(), r.end(), t);
    return std::min<std::size_t>(static_cast<std::size_t>(it - r.begin()) - 1, r.size() - 2);
  }

  [[nodiscard]] double psi_at(double t) const {
    const std::size_t k = cell_of(t);
    auto inner = [](double u) { return u * u * u * laplace_pole(u); };
    return psi[k] + gauss_integrate(inner, r[k], t, 20);
  }

  // int_s^{r[k+1]} psi(t)/t^3 dt for s in cell k; graded toward s when the
  // 1/t behaviour is stiff relative to the cell.
  [[nodiscard]] double outer_cell(std::size_t k, double s) const {
    auto f = [&](double t) { return psi_at(t) / (t * t * t); };
    const double top = r[k + 1];
    if (s >= top) return 0.0;
    const auto breaks = graded_breakpoints(s, top, true, static_cast<int>(std::clamp(
                                                               std::log2(top / s) + 2.0, 1.0, 20.0)));
    return composite_gauss(f, breaks, 20);
  }

  [[nodiscard]] double phi_at(double s) const {
    const std::size_t k = cell_of(s);
    return phi[k + 1] + outer_cell(k, s);
  }
};

}  // namespace

double green_navier_biharmonic_pole(double z_radius, const RadialGrid& grid) {
  if (!(z_radius > 0.0 && z_radius < 1.0)) throw std::domain_error("Navier pole radius must lie in (0, 1)");
  const NavierTable tab(grid);
  return tab.phi_at(z_radius);
}

double green_navier_pole_kernel_form(double s) {
  if (!(s > 0.0 && s < 1.0)) throw std::domain_error("Navier pole radius must lie in (0, 1)");
  auto K = [s](double t) {
    const double m = std::max(s, t);
    return 0.5 * (1.0 / (m * m) - 1.0);
  };
  auto f = [&](double t) { return K(t) * laplace_pole(t) * t * t * t; };
  return gauss_integrate(f, 0.0, s, 40) + composite_gauss(f, graded_breakpoints(s, 1.0, true, 20), 20);
}

double represent_navier_pole(const std::function<double(double)>& g, const RadialGrid& grid) {
  const NavierTable tab(grid);
  const auto& r = tab.r;
  std::vector<double> cells;
  auto f = [&](double s) { return s * s * s * tab.phi_at(s) * g(s); };
  // s^3 log s at the origin: graded first cell.
  cells.push_back(composite_gauss(f, graded_breakpoints(0.0, r[1], true, 30), 12));
  for (std::size_t i = 1; i + 1 < r.size(); ++i) cells.push_back(gauss_integrate(f, r[i], r[i + 1], 12));
  return 2.0 * kPi * kPi * pairwise_sum(cells);
}

RepresentResult represent(const std::function<double(double)>& g, double a, double rel_tol) {
  if (!(a >= 0.0 && a < 1.0)) throw std::domain_error("represent: |x| must lie in [0, 1)");
  auto evaluate = [&](std::size_t order) {
    if (a == 0.0) {
      auto f = [&](double s) { return s * s * s * green_dirichlet_pole(s) * g(s); };
      return 2.0 * kPi * kPi * composite_gauss(f, graded_breakpoints(0.0, 1.0, true, 20), order);
    }
    // y = (s, theta) with theta the angle to x; the two remaining angles give
    // 4 pi sin^2 theta.
    auto kernel = [a](double s, double th) {
      const double sh = std::sin(0.5 * th);
      const double d2 = (a - s) * (a - s) + 4.0 * a * s * sh * sh;
      const double b2 = (1.0 - a * s) * (1.0 - a * s) + 4.0 * a * s * sh * sh;
      return boggio_from_q(-one_minus_sq(a) * one_minus_sq(s) / b2, d2 / b2);
    };
    const auto th_breaks = graded_breakpoints(0.0, kPi, true, 20);
    auto inner = [&](double s) {
      auto f = [&](double th) { return 4.0 * kPi * std::sin(th) * std::sin(th) * kernel(s, th); };
      return composite_gauss(f, th_breaks, order);
    };
    auto outer = [&](double s) { return s * s * s * g(s) * inner(s); };
    auto left = graded_breakpoints(0.0, a, false, 20);
    const auto right = graded_breakpoints(a, 1.0, true, 20);
    left.insert(left.end(), right.begin() + 1, right.end());
    return composite_gauss(outer, left, order);
  };
  RepresentResult res;
  res.value = evaluate(20);
  const double low = evaluate(12);
  res.achieved_error = std::fabs(res.value - low);
  if (res.achieved_error > rel_tol * std::max(std::fabs(res.value), 1e-300) &&
      res.achieved_error > 1e-300) {
    throw QuadratureError(fmt::format("represent: achieved error {:.3e} above tolerance", res.achieved_error),
                          res.achieved_error);
  }
  return res;
}

double PolyharmonicConstants::theta(double beta) const {
  if (!(beta > 0.0)) throw std::invalid_argument("theta needs beta > 0");
  double fact = 1.0;
  for (int k = 2; k <= 2 * m; ++k) fact *= k;
  return fact * sphere_area_2m / beta;
}

PolyharmonicConstants polyharmonic_constants(int m) {
  if (m < 1) throw std::invalid_argument("polyharmonic_constants needs m >= 1");
  double fm1 = 1.0;  // (m-1)!
  for (int k = 2; k < m; ++k) fm1 *= k;
  double dfact = 1.0;  // (2m-1)!!
  for (int k = 3; k <= 2 * m - 1; k += 2) dfact *= k;
  const double pim = std::pow(kPi, m);
  PolyharmonicConstants c;
  c.m = m;
  c.sphere_area_2m_minus_1 = 2.0 * pim / fm1;
  c.gamma_m = c.sphere_area_2m_minus_1 * std::ldexp(1.0, 2 * m - 2) * fm1 * fm1;
  c.sphere_area_2m = std::ldexp(1.0, m + 1) * pim / dfact;
  return c;
}

std::vector<GreenSample> green_samples(std::size_t n, std::uint64_t seed) {
  std::vector<GreenSample> out;
  out.reserve(n);
  for (const auto& [x, y] : sample_pairs(n, seed)) {
    const double d = distance(x, y);
    const double dx = 1.0 - x.norm();
    const double dy = 1.0 - y.norm();
    out.push_back({d, green_dirichlet_biharmonic_ball(x, y).value,
                   std::log1p(dx * dx * dy * dy / (d * d * d * d))});
  }
  return out;
}

}  // namespace biharm
