#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "biharm/radial_grid.hpp"

namespace biharm {

struct BallPoint {
  std::array<double, 4> x{0.0, 0.0, 0.0, 0.0};

  BallPoint() = default;
  BallPoint(double a, double b, double c, double d) : x{a, b, c, d} {}
  explicit BallPoint(const std::array<double, 4>& v) : x(v) {}

  [[nodiscard]] double norm2() const;
  [[nodiscard]] double norm() const;
  [[nodiscard]] double operator[](std::size_t i) const { return x[i]; }
};

double distance(const BallPoint& a, const BallPoint& b);

struct KernelValue {
  double value = 0.0;
  std::optional<std::array<double, 4>> gradient_x;
};

class KernelSingularity : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// sqrt(|x|^2 |y|^2 - 2 x.y + 1).
double xy_bracket(const BallPoint& x, const BallPoint& y);

/// Dirichlet Green function of -Delta on the unit ball of R^4.
KernelValue green_laplace_ball(const BallPoint& x, const BallPoint& y, bool with_gradient = false);

/// Boggio kernel of Delta^2 with u = du/dn = 0 on the unit ball of R^4:
/// (1/8 pi^2) [log A + (A^-2 - 1)/2], A = [XY]/|x - y|.
KernelValue green_dirichlet_biharmonic_ball(const BallPoint& x, const BallPoint& y,
                                            bool with_gradient = false);

/// Boggio kernel with one argument at the centre, as a function of |y| = s.
double green_dirichlet_pole(double s);

/// Deterministic sampler of interior pairs (uniform in the ball, a third of
/// them pushed towards the sphere); pairs closer than 1e-6 are redrawn.
std::vector<std::pair<BallPoint, BallPoint>> sample_pairs(std::size_t n, std::uint64_t seed);

struct TwoSidedReport {
  std::size_t samples = 0;
  double R_min = 0.0;
  double R_max = 0.0;
  [[nodiscard]] bool passed() const { return R_min > 0.0 && R_max / R_min < 1e3; }
};
/// R = G(x, y) / log(1 + d(x)^2 d(y)^2 / |x - y|^4) over random pairs.
TwoSidedReport verify_two_sided_estimate(std::size_t n_samples, std::uint64_t seed = 42);

struct GradientEstimateReport {
  std::size_t samples = 0;
  double fd_step = 0.0;
  double sup_grad_dist = 0.0;          // sup |grad G| |x - y|, all samples
  double sup_value_log = 0.0;          // sup |G| / log(2 + 1/|x - y|)
  double sup_grad_dist_half = 0.0;     // same over the first half
  double sup_value_log_half = 0.0;
  double max_fd_error = 0.0;           // centred differences vs analytic gradient (relative)
  [[nodiscard]] bool passed() const;
};
/// Centred-difference gradients of the Boggio kernel; stability is judged
/// by comparing the sups over n/2 and n samples (within 50%).
GradientEstimateReport verify_gradient_estimate(std::size_t n_samples, double fd_step,
                                                std::uint64_t seed = 42);

/// G_NAV(0, z) by the nested route: psi(t) = int_0^t tau^3 g0, then
/// phi(s) = int_s^1 psi(t) / t^3 dt, both accumulated cell by cell on grid
/// with fixed-order Gauss. g0 = G_{-Delta}(0, .).
double green_navier_biharmonic_pole(double z_radius, const RadialGrid& grid);
/// Same value from the one-dimensional kernel form
/// int_0^1 (max(s,t)^-2 - 1)/2 g0(t) t^3 dt.
double green_navier_pole_kernel_form(double z_radius);
/// Closed form -log s / (8 pi^2) - (1 - s^2) / (32 pi^2).
double green_navier_pole_closed_form(double z_radius);

/// int_B G_NAV(0, y) g(|y|) dy with the nested kernel tabulated on grid.
double represent_navier_pole(const std::function<double(double)>& g, const RadialGrid& grid);

struct RepresentResult {
  double value = 0.0;
  double achieved_error = 0.0;  // |high order - low order|
};

/// int_B G(x, y) g(|y|) dy for the Boggio kernel, |x| = x_radius. Relative
/// tolerance 1e-8; QuadratureError if the two-order estimate exceeds it.
RepresentResult represent(const std::function<double(double)>& g, double x_radius,
                          double rel_tol = 1e-8);

struct PolyharmonicConstants {
  int m = 0;
  double gamma_m = 0.0;
  double sphere_area_2m = 0.0;
  double sphere_area_2m_minus_1 = 0.0;
  [[nodiscard]] double theta(double beta) const;
};
PolyharmonicConstants polyharmonic_constants(int m);

struct GreenSample {
  double dist;
  double G;
  double bound;  // log(1 + d(x)^2 d(y)^2 / |x - y|^4)
};
std::vector<GreenSample> green_samples(std::size_t n, std::uint64_t seed = 42);

}  // namespace biharm
