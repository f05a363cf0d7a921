#pragma once

#include <string>

namespace biharm {

/// A signed real stored as sign * exp(log_abs).
///
/// Quantities in this library routinely leave the double range (e^{t} for
/// large t, r^{-4} at r = e^{-10^6}). Values whose natural log exceeds
/// kLinearLimit are kept in log form only; value() then returns +-inf.
class LogReal {
 public:
  static constexpr double kLinearLimit = 700.0;

  constexpr LogReal() = default;

  static LogReal from_value(double v);
  static LogReal from_log(double log_abs, int sign = 1);

  [[nodiscard]] double log_abs() const { return log_abs_; }
  [[nodiscard]] int sign() const { return sign_; }
  [[nodiscard]] bool is_zero() const { return sign_ == 0; }
  [[nodiscard]] bool is_log_form() const { return sign_ != 0 && log_abs_ > kLinearLimit; }

  /// Linear value; overflows to +-inf when is_log_form().
  [[nodiscard]] double value() const;

  LogReal operator*(const LogReal& o) const;
  LogReal operator/(const LogReal& o) const;

 private:
  double log_abs_ = 0.0;
  int sign_ = 0;
};

/// Scientific notation with 17 significant digits that works past 1e308,
/// e.g. "2.1639726390657317e+32" or "5.9403365237402286e+2219".
std::string format_log_real(const LogReal& x);

}  // namespace biharm
