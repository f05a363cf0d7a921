#include "biharm/finite_difference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace biharm {

std::vector<std::vector<double>> fornberg_weights(double z, std::span<const double> x, int m) {
  const int n = static_cast<int>(x.size());
  if (n == 0 || m < 0) throw std::invalid_argument("fornberg_weights: empty stencil");
  std::vector<std::vector<double>> c(m + 1, std::vector<double>(n, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        }
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

double central_derivative(const std::function<double(double)>& f, double z, double h, int k,
                          int half_width) {
  if (!(h > 0.0)) throw std::invalid_argument("central_derivative: step must be positive");
  if (k < 0 || half_width < 1 || 2 * half_width < k) {
    throw std::invalid_argument("central_derivative: stencil too narrow for derivative order");
  }
  // Weights on the integer stencil, scaled by h^-k afterwards.
  std::vector<double> x;
  for (int j = -half_width; j <= half_width; ++j) x.push_back(j);
  const auto w = fornberg_weights(0.0, x, k);
  double acc = 0.0;
  // Pair symmetric terms so the odd/even structure cancels cleanly.
  for (int j = 1; j <= half_width; ++j) {
    const double wp = w[k][half_width + j];
    const double wm = w[k][half_width - j];
    acc += wp * f(z + j * h) + wm * f(z - j * h);
  }
  acc += w[k][half_width] * f(z);
  return acc / std::pow(h, k);
}

}  // namespace biharm
