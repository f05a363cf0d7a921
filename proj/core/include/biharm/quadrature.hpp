#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace biharm {

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved_error)
      : std::runtime_error(what), achieved_error_(achieved_error) {}
  [[nodiscard]] double achieved_error() const { return achieved_error_; }

 private:
  double achieved_error_;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached rule; n in [1, 128].
const GaussRule& gauss_legendre(std::size_t n);

/// Fixed-order Gauss-Legendre on [a, b].
double gauss_integrate(const std::function<double(double)>& f, double a, double b,
                       std::size_t order = 20);

/// Cells of [a, b] graded geometrically (ratio 2) toward the end point
/// `toward_a ? a : b`, `levels` halvings deep; the innermost cell is kept.
std::vector<double> graded_breakpoints(double a, double b, bool toward_a, int levels = 20);

/// Sum of fixed-order Gauss rules over consecutive breakpoints.
double composite_gauss(const std::function<double(double)>& f, std::span<const double> breaks,
                       std::size_t order = 20);

/// Adaptive Gauss-Kronrod (15 point) with relative tolerance. Throws
/// QuadratureError carrying the achieved error estimate on failure.
double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-10, unsigned max_depth = 30);

/// Composite Simpson on a (possibly nonuniform) node set. An odd interval
/// count is closed with a three-point quadratic fit over the last two cells.
double simpson_nonuniform(std::span<const double> x, std::span<const double> y);

/// Pairwise (cascade) summation; deterministic for a given ordering.
double pairwise_sum(std::span<const double> values);

}  // namespace biharm
