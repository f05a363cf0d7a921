#include "biharm/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "biharm/quadrature.hpp"

namespace biharm {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool is_integer(double q) { return std::fabs(q - std::round(q)) < 1e-14; }

double log_add_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::fabs(a - b)));
}

// log f(t) for t >= 0 (may be -inf where f vanishes).
double log_f(const NonlinearitySpec& spec, double t) {
  const auto& pr = spec.params();
  const double log_c = std::log(pr.scale);
  switch (spec.kind()) {
    case NonlinearityKind::PureExp:
      return log_c + pr.gamma * t;
    case NonlinearityKind::ExpPoly:
      return log_c + pr.gamma * t - pr.q * std::log1p(t);
    case NonlinearityKind::PowerExp:
      if (t == 0.0) return kNegInf;
      return log_c + pr.p * std::log(t) + std::pow(t, pr.alpha);
    case NonlinearityKind::LogPowerExp: {
      if (t == 0.0) return kNegInf;
      double v = log_c + pr.p * std::log(t) + std::pow(t, pr.alpha);
      if (pr.theta != 0.0) v += pr.theta * std::log(std::log1p(t));
      return v;
    }
    case NonlinearityKind::Constant:
      return log_c;
  }
  return 0.0;
}

// Linear f(t) for exponents below the log-form threshold.
double linear_f(const NonlinearitySpec& spec, double t) {
  const auto& pr = spec.params();
  switch (spec.kind()) {
    case NonlinearityKind::PureExp:
      return pr.scale * std::exp(pr.gamma * t);
    case NonlinearityKind::ExpPoly:
      return pr.scale * std::exp(pr.gamma * t) * std::pow(1.0 + t, -pr.q);
    case NonlinearityKind::PowerExp:
      return pr.scale * std::pow(t, pr.p) * std::exp(std::pow(t, pr.alpha));
    case NonlinearityKind::LogPowerExp: {
      double v = pr.scale * std::pow(t, pr.p) * std::exp(std::pow(t, pr.alpha));
      if (pr.theta != 0.0) v *= std::pow(std::log1p(t), pr.theta);
      return v;
    }
    case NonlinearityKind::Constant:
      return pr.scale;
  }
  return 0.0;
}

// int_0^t e^{gamma s} (1+s)^{-q} ds for integer q.
double exp_poly_primitive(double gamma, int q, double t) {
  if (q <= 0) {
    // J_k = [e^{gamma t}(1+t)^k - 1]/gamma - (k/gamma) J_{k-1}, J_0 = expm1(gamma t)/gamma.
    double J = std::expm1(gamma * t) / gamma;
    const double e = std::exp(gamma * t);
    for (int k = 1; k <= -q; ++k) {
      J = (e * std::pow(1.0 + t, k) - 1.0) / gamma - (static_cast<double>(k) / gamma) * J;
    }
    return J;
  }
  // I_1 = e^{-gamma}[Ei(gamma(1+t)) - Ei(gamma)];
  // I_k = [1 - e^{gamma t}(1+t)^{1-k}]/(k-1) + gamma/(k-1) I_{k-1}.
  double I = std::exp(-gamma) * (std::expint(gamma * (1.0 + t)) - std::expint(gamma));
  const double e = std::exp(gamma * t);
  for (int k = 2; k <= q; ++k) {
    const double km1 = static_cast<double>(k - 1);
    I = (1.0 - e * std::pow(1.0 + t, 1 - k)) / km1 + gamma / km1 * I;
  }
  return I;
}

}  // namespace

// ---------------------------------------------------------------- Potential

Potential Potential::constant(double a0) {
  if (!(a0 > 0.0) || !std::isfinite(a0)) {
    throw std::invalid_argument(fmt::format("constant potential requires a0 > 0, got {}", a0));
  }
  Potential p;
  p.kind_ = Kind::Constant;
  p.coeffs_ = {a0};
  p.lower_ = a0;
  p.sup_ = a0;
  return p;
}

Potential Potential::radial_polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("radial polynomial potential needs coefficients");
  for (double c : coeffs) {
    if (!std::isfinite(c)) throw std::invalid_argument("radial polynomial coefficient not finite");
  }
  Potential p;
  p.kind_ = Kind::RadialPolynomial;
  p.coeffs_ = std::move(coeffs);
  p.sample_bounds();
  return p;
}

Potential Potential::counterexample(Handle handle) {
  if (!handle.value || !handle.derivative) {
    throw std::invalid_argument("counterexample potential handle is empty");
  }
  Potential p;
  p.kind_ = Kind::Counterexample;
  p.coeffs_.clear();
  p.handle_ = std::make_shared<const Handle>(std::move(handle));
  p.sample_bounds();
  return p;
}

double Potential::operator()(double r) const {
  switch (kind_) {
    case Kind::Constant:
      return coeffs_[0];
    case Kind::RadialPolynomial: {
      double v = 0.0;
      for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * r + *it;
      return v;
    }
    case Kind::Counterexample:
      return handle_->value(r);
  }
  return 0.0;
}

double Potential::derivative(double r) const {
  switch (kind_) {
    case Kind::Constant:
      return 0.0;
    case Kind::RadialPolynomial: {
      double v = 0.0;
      for (std::size_t k = coeffs_.size(); k-- > 1;) v = v * r + static_cast<double>(k) * coeffs_[k];
      return v;
    }
    case Kind::Counterexample:
      return handle_->derivative(r);
  }
  return 0.0;
}

void Potential::sample_bounds() {
  lower_ = std::numeric_limits<double>::infinity();
  sup_ = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 1024; ++i) {
    const double a = (*this)(i / 1024.0);
    lower_ = std::min(lower_, a);
    sup_ = std::max(sup_, a);
  }
}

// --------------------------------------------------------- NonlinearitySpec

std::string to_string(NonlinearityKind kind) {
  switch (kind) {
    case NonlinearityKind::PureExp: return "PureExp";
    case NonlinearityKind::ExpPoly: return "ExpPoly";
    case NonlinearityKind::PowerExp: return "PowerExp";
    case NonlinearityKind::LogPowerExp: return "LogPowerExp";
    case NonlinearityKind::Constant: return "Constant";
  }
  return "?";
}

NonlinearityKind nonlinearity_kind_from_string(const std::string& name) {
  for (auto k : {NonlinearityKind::PureExp, NonlinearityKind::ExpPoly, NonlinearityKind::PowerExp,
                 NonlinearityKind::LogPowerExp, NonlinearityKind::Constant}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument(fmt::format("unknown nonlinearity kind '{}'", name));
}

NonlinearitySpec::NonlinearitySpec(NonlinearityKind kind, NonlinearityParams params,
                                   Potential potential)
    : kind_(kind), params_(params), potential_(std::move(potential)), beta_(0.0) {
  if (!(params_.scale > 0.0)) throw std::invalid_argument("nonlinearity scale must be positive");
  switch (kind_) {
    case NonlinearityKind::PureExp:
    case NonlinearityKind::ExpPoly:
      if (!(params_.gamma > 0.0)) {
        throw std::invalid_argument(fmt::format("gamma must be > 0, got {}", params_.gamma));
      }
      if (!std::isfinite(params_.q)) throw std::invalid_argument("q must be finite");
      beta_ = params_.gamma;
      break;
    case NonlinearityKind::LogPowerExp:
      if (!(params_.theta >= 0.0)) {
        throw std::invalid_argument(fmt::format("theta must be >= 0, got {}", params_.theta));
      }
      [[fallthrough]];
    case NonlinearityKind::PowerExp:
      if (!(params_.p > 1.0)) {
        throw std::invalid_argument(fmt::format("p must be > 1, got {}", params_.p));
      }
      if (!(params_.alpha >= 0.0 && params_.alpha < 1.0)) {
        throw std::invalid_argument(fmt::format("alpha must lie in [0, 1), got {}", params_.alpha));
      }
      beta_ = 0.0;
      break;
    case NonlinearityKind::Constant:
      beta_ = 0.0;
      break;
  }
}

NonlinearitySpec NonlinearitySpec::pure_exp(double gamma, Potential a) {
  NonlinearityParams p;
  p.gamma = gamma;
  return {NonlinearityKind::PureExp, p, std::move(a)};
}

NonlinearitySpec NonlinearitySpec::exp_poly(double gamma, double q, Potential a) {
  NonlinearityParams p;
  p.gamma = gamma;
  p.q = q;
  return {NonlinearityKind::ExpPoly, p, std::move(a)};
}

NonlinearitySpec NonlinearitySpec::power_exp(double p_exp, double alpha, Potential a) {
  NonlinearityParams p;
  p.p = p_exp;
  p.alpha = alpha;
  return {NonlinearityKind::PowerExp, p, std::move(a)};
}

NonlinearitySpec NonlinearitySpec::log_power_exp(double theta, double p_exp, double alpha,
                                                 Potential a) {
  NonlinearityParams p;
  p.theta = theta;
  p.p = p_exp;
  p.alpha = alpha;
  return {NonlinearityKind::LogPowerExp, p, std::move(a)};
}

NonlinearitySpec NonlinearitySpec::constant(double value) {
  return {NonlinearityKind::Constant, NonlinearityParams{}, Potential::constant(value)};
}

NonlinearitySpec NonlinearitySpec::scaled(double c) const {
  NonlinearityParams p = params_;
  p.scale *= c;
  return {kind_, p, potential_};
}

// --------------------------------------------------------------- evaluation

LogReal eval_f(const NonlinearitySpec& spec, double t) {
  if (!(t >= 0.0)) throw std::domain_error(fmt::format("eval_f requires t >= 0, got {}", t));
  const double lf = log_f(spec, t);
  if (lf == kNegInf) return {};
  if (lf > LogReal::kLinearLimit) return LogReal::from_log(lf);
  return LogReal::from_value(linear_f(spec, t));
}

double eval_log_derivative(const NonlinearitySpec& spec, double t) {
  const auto& pr = spec.params();
  switch (spec.kind()) {
    case NonlinearityKind::PureExp:
      return pr.gamma;
    case NonlinearityKind::ExpPoly:
      return pr.gamma - pr.q / (1.0 + t);
    case NonlinearityKind::PowerExp:
      if (t == 0.0) return std::numeric_limits<double>::infinity();
      return pr.p / t + pr.alpha * std::pow(t, pr.alpha - 1.0);
    case NonlinearityKind::LogPowerExp: {
      if (t == 0.0) return std::numeric_limits<double>::infinity();
      double v = pr.p / t + pr.alpha * std::pow(t, pr.alpha - 1.0);
      if (pr.theta != 0.0) v += pr.theta / ((1.0 + t) * std::log1p(t));
      return v;
    }
    case NonlinearityKind::Constant:
      return 0.0;
  }
  return 0.0;
}

double eval_f_prime(const NonlinearitySpec& spec, double t) {
  if (!(t >= 0.0)) throw std::domain_error("eval_f_prime requires t >= 0");
  const auto f = eval_f(spec, t);
  if (f.is_zero()) return 0.0;  // t^p factor with p > 1 at t = 0
  const double g = eval_log_derivative(spec, t);
  if (f.is_log_form()) {
    if (g == 0.0) return 0.0;
    return (f * LogReal::from_value(g)).value();
  }
  return f.value() * g;
}

double eval_F(const NonlinearitySpec& spec, double t) {
  if (!(t >= 0.0)) throw std::domain_error("eval_F requires t >= 0");
  if (t == 0.0) return 0.0;
  const auto& pr = spec.params();
  switch (spec.kind()) {
    case NonlinearityKind::PureExp:
      return pr.scale * std::expm1(pr.gamma * t) / pr.gamma;
    case NonlinearityKind::Constant:
      return pr.scale * t;
    case NonlinearityKind::ExpPoly:
      if (is_integer(pr.q) && (pr.q <= 0.0 || t >= 0.1)) {
        return pr.scale * exp_poly_primitive(pr.gamma, static_cast<int>(std::round(pr.q)), t);
      }
      break;
    default:
      break;
  }
  return adaptive_integrate([&](double s) { return eval_f(spec, s).value(); }, 0.0, t, 1e-10);
}

double eval_h(const NonlinearitySpec& spec, double r, double t) {
  return spec.potential()(r) * eval_f(spec, t).value();
}

double eval_H(const NonlinearitySpec& spec, double r, double t) {
  if (t == 0.0) return 0.0;
  return spec.potential()(r) * eval_F(spec, t);
}

double eval_F_extended(const NonlinearitySpec& spec, double t) {
  if (t >= 0.0) return eval_F(spec, t);
  const auto& pr = spec.params();
  switch (spec.kind()) {
    case NonlinearityKind::PureExp:
      return pr.scale * std::expm1(pr.gamma * t) / pr.gamma;
    case NonlinearityKind::Constant:
      return pr.scale * t;
    default:
      return eval_f(spec, 0.0).value() * t + 0.5 * eval_f_prime(spec, 0.0) * t * t;
  }
}

std::pair<double, double> eval_f_extended(const NonlinearitySpec& spec, double t) {
  if (t >= 0.0) return {eval_f(spec, t).value(), eval_f_prime(spec, t)};
  const auto& pr = spec.params();
  switch (spec.kind()) {
    case NonlinearityKind::PureExp: {
      const double f = pr.scale * std::exp(pr.gamma * t);
      return {f, pr.gamma * f};
    }
    case NonlinearityKind::Constant:
      return {pr.scale, 0.0};
    default: {
      const double f0 = eval_f(spec, 0.0).value();
      const double d0 = eval_f_prime(spec, 0.0);
      return {f0 + d0 * t, d0};
    }
  }
}

// ----------------------------------------------------------- classification

Classification classify(const NonlinearitySpec& spec) {
  Classification c;
  c.beta = spec.beta();
  c.kind = c.beta == 0.0 ? Classification::Kind::Subcritical : Classification::Kind::Critical;
  for (double t : {10.0, 1e2, 1e3, 1e4}) {
    c.deviations.push_back(std::fabs(eval_log_derivative(spec, t) - c.beta));
  }
  constexpr double kSlack = 1e-12;
  for (std::size_t i = 1; i < c.deviations.size(); ++i) {
    if (c.deviations[i] > c.deviations[i - 1] + kSlack) {
      throw std::logic_error(fmt::format(
          "{}: f'/f does not approach beta = {} monotonically (deviation {} at sample {} after {})",
          to_string(spec.kind()), c.beta, c.deviations[i], i, c.deviations[i - 1]));
    }
  }
  if (c.deviations.front() > kSlack && !(c.deviations.back() < c.deviations.front())) {
    throw std::logic_error(fmt::format("{}: f'/f stalls away from beta = {}",
                                       to_string(spec.kind()), c.beta));
  }
  return c;
}

// ------------------------------------------------------- exponential bounds

ExpBoundFit fit_exp_bounds(const NonlinearitySpec& spec, double epsilon, double t_max,
                           std::size_t samples) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("fit_exp_bounds: epsilon must be > 0");
  if (!(t_max >= 100.0)) throw std::invalid_argument("fit_exp_bounds: t_max must be >= 100");
  if (samples < 3) throw std::invalid_argument("fit_exp_bounds: need at least 3 samples");

  ExpBoundFit fit;
  fit.epsilon = epsilon;
  fit.t_max = t_max;
  fit.t_samples.push_back(0.0);
  constexpr double t_min = 1e-3;
  for (std::size_t k = 0; k + 1 < samples; ++k) {
    fit.t_samples.push_back(t_min * std::pow(t_max / t_min, static_cast<double>(k) / (samples - 2.0)));
  }
  fit.t_samples.back() = t_max;

  const double beta = spec.beta();
  std::optional<double> T;
  for (double t : fit.t_samples) {
    const double g = eval_log_derivative(spec, t);
    if (std::isfinite(g) && std::fabs(g - beta) < epsilon) {
      T = t;
      break;
    }
  }
  if (!T) {
    throw std::runtime_error(fmt::format(
        "fit_exp_bounds: convergence threshold not reached (|f'/f - beta| >= {} up to t = {})",
        epsilon, t_max));
  }
  fit.T_eps = *T;
  const auto fT = eval_f(spec, fit.T_eps);
  fit.D_eps = fT.is_zero() ? 0.0 : std::exp(fT.log_abs() - (beta + epsilon) * fit.T_eps);
  double c = 0.0;
  for (double t : fit.t_samples) {
    if (t > fit.T_eps) break;
    c = std::max(c, eval_f(spec, t).value());
  }
  fit.C_eps = c;
  return fit;
}

bool exp_bounds_hold(const NonlinearitySpec& spec, const ExpBoundFit& fit, double t) {
  const double beta = spec.beta();
  const auto f = eval_f(spec, t);
  const double lf = f.is_zero() ? kNegInf : f.log_abs();
  const double log_c = fit.C_eps > 0.0 ? std::log(fit.C_eps) : kNegInf;
  const double log_d = fit.D_eps > 0.0 ? std::log(fit.D_eps) : kNegInf;
  auto slack = [](double x) { return 1e-12 * std::max(1.0, std::fabs(x)); };

  const double upper = log_add_exp(log_d + (beta + fit.epsilon) * t, log_c);
  if (lf > upper + slack(upper)) return false;

  const double lower_lead = log_d + (beta - fit.epsilon) * t;
  if (lower_lead == kNegInf || lower_lead <= log_c) return true;
  const double lower = lower_lead + std::log1p(-std::exp(log_c - lower_lead));
  return lf >= lower - slack(lower);
}

// ---------------------------------------------------- boundary hypotheses

BoundaryHypothesisReport verify_boundary_hypotheses(const NonlinearitySpec& spec,
                                                    double strip_width, double t_max) {
  if (!(strip_width > 0.0 && strip_width <= 1.0)) {
    throw std::invalid_argument("verify_boundary_hypotheses: strip_width must lie in (0, 1]");
  }
  constexpr int kRadii = 64;
  constexpr int kTs = 64;
  std::vector<double> ts{0.0};
  for (int k = 0; k + 1 < kTs; ++k) ts.push_back(1e-3 * std::pow(t_max / 1e-3, k / (kTs - 2.0)));

  BoundaryHypothesisReport rep;
  rep.strip_width = strip_width;
  rep.max_dr_a = -std::numeric_limits<double>::infinity();
  rep.min_dt_h = std::numeric_limits<double>::infinity();
  const auto& a = spec.potential();
  for (int j = 0; j < kRadii; ++j) {
    const double r = 1.0 - strip_width + strip_width * (j + 1.0) / (kRadii + 1.0);
    const double ar = a(r);
    const double dar = a.derivative(r);
    rep.max_dr_a = std::max(rep.max_dr_a, dar);
    if (dar > 1e-14) rep.violations.push_back({"H3b", r, 0.0, dar});
    for (double t : ts) {
      const double dth = ar * eval_f_prime(spec, t);
      rep.min_dt_h = std::min(rep.min_dt_h, dth);
      if (dth < -1e-14) rep.violations.push_back({"H3a", r, t, dth});
      const double F = eval_F(spec, t);
      const double ratio = std::isfinite(F) ? F / (F + 1.0) : 1.0;
      rep.empirical_B = std::max(rep.empirical_B, std::fabs(dar) * ratio);
    }
  }
  return rep;
}

}  // namespace biharm
