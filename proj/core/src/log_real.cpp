#include "biharm/log_real.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace biharm {

LogReal LogReal::from_value(double v) {
  LogReal r;
  if (v == 0.0) return r;
  r.sign_ = v > 0 ? 1 : -1;
  r.log_abs_ = std::log(std::fabs(v));
  return r;
}

LogReal LogReal::from_log(double log_abs, int sign) {
  LogReal r;
  if (sign == 0 || log_abs == -std::numeric_limits<double>::infinity()) return r;
  r.sign_ = sign > 0 ? 1 : -1;
  r.log_abs_ = log_abs;
  return r;
}

double LogReal::value() const {
  if (sign_ == 0) return 0.0;
  return sign_ * std::exp(log_abs_);
}

LogReal LogReal::operator*(const LogReal& o) const {
  if (sign_ == 0 || o.sign_ == 0) return {};
  return from_log(log_abs_ + o.log_abs_, sign_ * o.sign_);
}

LogReal LogReal::operator/(const LogReal& o) const {
  if (sign_ == 0) return {};
  return from_log(log_abs_ - o.log_abs_, sign_ * o.sign_);
}

std::string format_log_real(const LogReal& x) {
  if (x.is_zero()) return "0";
  if (!x.is_log_form()) return fmt::format("{:.17g}", x.value());
  const double log10_abs = x.log_abs() / std::log(10.0);
  double exponent = std::floor(log10_abs);
  double mantissa = std::pow(10.0, log10_abs - exponent);
  if (mantissa >= 10.0) {
    mantissa /= 10.0;
    exponent += 1.0;
  }
  return fmt::format("{}{:.16f}e+{:.0f}", x.sign() < 0 ? "-" : "", mantissa, exponent);
}

}  // namespace biharm
