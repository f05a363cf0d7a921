#include "biharm/quadrature.hpp"

#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

namespace biharm {
namespace {

GaussRule make_rule(std::size_t n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(std::size_t n) {
  static std::array<std::unique_ptr<GaussRule>, 129> cache;
  static std::mutex mutex;
  if (n == 0 || n > 128) throw std::invalid_argument("gauss_legendre: order must be in [1, 128]");
  std::lock_guard lock(mutex);
  if (!cache[n]) cache[n] = std::make_unique<GaussRule>(make_rule(n));
  return *cache[n];
}

double gauss_integrate(const std::function<double(double)>& f, double a, double b,
                       std::size_t order) {
  const auto& rule = gauss_legendre(order);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return sum * half;
}

std::vector<double> graded_breakpoints(double a, double b, bool toward_a, int levels) {
  std::vector<double> breaks;
  breaks.reserve(static_cast<std::size_t>(levels) + 2);
  const double len = b - a;
  if (toward_a) {
    breaks.push_back(a);
    for (int k = levels; k >= 0; --k) breaks.push_back(a + len * std::ldexp(1.0, -k));
    breaks.back() = b;
  } else {
    breaks.push_back(a);
    for (int k = 1; k <= levels; ++k) breaks.push_back(b - len * std::ldexp(1.0, -k));
    breaks.push_back(b);
  }
  return breaks;
}

double composite_gauss(const std::function<double(double)>& f, std::span<const double> breaks,
                       std::size_t order) {
  std::vector<double> parts;
  parts.reserve(breaks.size());
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] > breaks[i]) parts.push_back(gauss_integrate(f, breaks[i], breaks[i + 1], order));
  }
  return pairwise_sum(parts);
}

double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, unsigned max_depth) {
  if (a == b) return 0.0;
  double error = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, max_depth, rel_tol, &error, &l1);
  if (!std::isfinite(value) || error > rel_tol * std::max(l1, 1e-300) * 10.0) {
    throw QuadratureError(
        fmt::format("adaptive quadrature on [{}, {}] did not converge: achieved error {:.3e}", a, b,
                    error),
        error);
  }
  return value;
}

double simpson_nonuniform(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size()) throw std::invalid_argument("simpson_nonuniform: size mismatch");
  if (n < 2) return 0.0;
  if (n == 2) return 0.5 * (x[1] - x[0]) * (y[0] + y[1]);
  std::vector<double> parts;
  parts.reserve(n / 2 + 1);
  std::size_t i = 0;
  for (; i + 2 < n; i += 2) {
    const double h0 = x[i + 1] - x[i];
    const double h1 = x[i + 2] - x[i + 1];
    const double hs = h0 + h1;
    parts.push_back(hs / 6.0 *
                    ((2.0 - h1 / h0) * y[i] + hs * hs / (h0 * h1) * y[i + 1] + (2.0 - h0 / h1) * y[i + 2]));
  }
  if (i + 1 < n) {
    // Last single cell [x_{n-2}, x_{n-1}] from the quadratic through the final three nodes.
    const double x0 = x[n - 3], x1 = x[n - 2], x2 = x[n - 1];
    const double h0 = x1 - x0, h1 = x2 - x1;
    const double w2 = h1 * (2.0 * h1 + 3.0 * h0) / (6.0 * (h0 + h1));
    const double w1 = h1 * (h1 + 3.0 * h0) / (6.0 * h0);
    const double w0 = -h1 * h1 * h1 / (6.0 * h0 * (h0 + h1));
    parts.push_back(w0 * y[n - 3] + w1 * y[n - 2] + w2 * y[n - 1]);
  }
  return pairwise_sum(parts);
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace biharm
