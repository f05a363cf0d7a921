#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "biharm/log_real.hpp"

namespace biharm {

/// Radially symmetric potential a(|x|) on the closed unit ball.
class Potential {
 public:
  enum class Kind { Constant, RadialPolynomial, Counterexample };

  /// Opaque evaluation handle supplied by the counterexample module.
  struct Handle {
    std::function<double(double r)> value;
    std::function<double(double r)> derivative;
    std::string label;
  };

  static Potential constant(double a0);
  /// a(r) = sum_k coeffs[k] r^k.
  static Potential radial_polynomial(std::vector<double> coeffs);
  static Potential counterexample(Handle handle);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] double operator()(double r) const;
  [[nodiscard]] double derivative(double r) const;
  [[nodiscard]] const std::vector<double>& coeffs() const { return coeffs_; }

  /// Sampled min / max over 1025 uniform radii in [0, 1].
  [[nodiscard]] double lower_bound() const { return lower_; }
  [[nodiscard]] double sup() const { return sup_; }

 private:
  void sample_bounds();

  Kind kind_ = Kind::Constant;
  std::vector<double> coeffs_{1.0};
  std::shared_ptr<const Handle> handle_;
  double lower_ = 1.0;
  double sup_ = 1.0;
};

enum class NonlinearityKind { PureExp, ExpPoly, PowerExp, LogPowerExp, Constant };

std::string to_string(NonlinearityKind kind);
NonlinearityKind nonlinearity_kind_from_string(const std::string& name);

struct NonlinearityParams {
  double gamma = 1.0;
  double q = 0.0;
  double p = 2.0;
  double alpha = 0.5;
  double theta = 0.0;
  /// Overall positive factor c in f -> c f; leaves beta unchanged.
  double scale = 1.0;
};

/// Catalog member h(x, t) = a(|x|) f(t):
///   PureExp      f = e^{gamma t}
///   ExpPoly      f = e^{gamma t} (1 + t)^{-q}
///   PowerExp     f = t^p e^{t^alpha}                 alpha in [0, 1), p > 1
///   LogPowerExp  f = log^theta(t + 1) t^p e^{t^alpha}
///   Constant     f = 1 (manufactured forcing; subcritical, beta = 0)
/// Parameters are validated on construction; instances are immutable.
class NonlinearitySpec {
 public:
  NonlinearitySpec(NonlinearityKind kind, NonlinearityParams params, Potential potential);

  static NonlinearitySpec pure_exp(double gamma, Potential a = Potential::constant(1.0));
  static NonlinearitySpec exp_poly(double gamma, double q, Potential a = Potential::constant(1.0));
  static NonlinearitySpec power_exp(double p, double alpha, Potential a = Potential::constant(1.0));
  static NonlinearitySpec log_power_exp(double theta, double p, double alpha,
                                        Potential a = Potential::constant(1.0));
  static NonlinearitySpec constant(double value);

  [[nodiscard]] NonlinearityKind kind() const { return kind_; }
  [[nodiscard]] const NonlinearityParams& params() const { return params_; }
  [[nodiscard]] const Potential& potential() const { return potential_; }
  /// Analytic lim f'/f.
  [[nodiscard]] double beta() const { return beta_; }

  [[nodiscard]] NonlinearitySpec scaled(double c) const;

 private:
  NonlinearityKind kind_;
  NonlinearityParams params_;
  Potential potential_;
  double beta_;
};

/// f(t), t >= 0. Switches to log form when the exponent exceeds 700.
LogReal eval_f(const NonlinearitySpec& spec, double t);
/// f'(t) (overflows to inf past the double range).
double eval_f_prime(const NonlinearitySpec& spec, double t);
/// Closed-form f'/f for t > 0 (and the t = 0 limit where finite).
double eval_log_derivative(const NonlinearitySpec& spec, double t);
/// F(t) = int_0^t f. Closed form for PureExp, Constant and integer-q ExpPoly,
/// adaptive quadrature (relative tolerance 1e-10) otherwise.
double eval_F(const NonlinearitySpec& spec, double t);
double eval_h(const NonlinearitySpec& spec, double r, double t);
double eval_H(const NonlinearitySpec& spec, double r, double t);

/// C^1 extension of f to t < 0 used inside Newton iterations: the analytic
/// formula where it is defined on all of R (PureExp, Constant), otherwise the
/// tangent line f(0) + f'(0) t. Returns (f, f').
std::pair<double, double> eval_f_extended(const NonlinearitySpec& spec, double t);
/// Primitive of that extension (equals eval_F for t >= 0).
double eval_F_extended(const NonlinearitySpec& spec, double t);

struct Classification {
  enum class Kind { Subcritical, Critical };
  Kind kind;
  double beta;
  /// |f'/f - beta| at t = 10, 1e2, 1e3, 1e4.
  std::vector<double> deviations;
};

/// Subcritical iff beta == 0. Throws std::logic_error when the sampled
/// log-derivative does not approach beta monotonically.
Classification classify(const NonlinearitySpec& spec);

struct ExpBoundFit {
  double epsilon = 0.0;
  double C_eps = 0.0;
  double D_eps = 0.0;
  double T_eps = 0.0;
  double t_max = 0.0;
  std::vector<double> t_samples;
};

/// Constants with D e^{(beta-eps)t} - C <= f(t) <= D e^{(beta+eps)t} + C on a
/// geometric grid of [0, t_max].
ExpBoundFit fit_exp_bounds(const NonlinearitySpec& spec, double epsilon, double t_max,
                           std::size_t samples = 512);

/// Evaluates both sides of the envelope at t in log space; true iff they hold
/// up to a relative slack of 1e-12.
bool exp_bounds_hold(const NonlinearitySpec& spec, const ExpBoundFit& fit, double t);

struct BoundaryHypothesisReport {
  struct Violation {
    std::string clause;  // "H3a" or "H3b"
    double r;
    double t;
    double value;
  };
  double strip_width = 0.0;
  double max_dr_a = 0.0;        // max over strip of a'(r)
  double min_dt_h = 0.0;        // min over strip x t-grid of d_t h
  double empirical_B = 0.0;     // sup |a'(r)| F(t) / (F(t) + 1)
  std::vector<Violation> violations;
  [[nodiscard]] bool passed() const { return violations.empty(); }
};

/// Samples 64 radii in (1 - strip_width, 1) against 64 geometric t values in
/// [0, t_max]: checks d_t h >= 0 and d_r a <= 0, and records the empirical
/// constant B of the gradient bound |grad_x H| <= B F + D.
BoundaryHypothesisReport verify_boundary_hypotheses(const NonlinearitySpec& spec,
                                                    double strip_width, double t_max = 50.0);

}  // namespace biharm
