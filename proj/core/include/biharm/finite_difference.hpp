#pragma once

#include <functional>
#include <span>
#include <vector>

namespace biharm {

/// Finite-difference weights for derivatives 0..m at z on arbitrary nodes
/// (Fornberg's recursion). Result[k][j] multiplies f(x[j]) for the k-th
/// derivative.
std::vector<std::vector<double>> fornberg_weights(double z, std::span<const double> x, int m);

/// k-th derivative of f at z from a centered stencil z + j h, |j| <= half_width.
/// Order of accuracy 2 * half_width (for even k; k odd likewise).
double central_derivative(const std::function<double(double)>& f, double z, double h, int k,
                          int half_width = 4);

}  // namespace biharm
