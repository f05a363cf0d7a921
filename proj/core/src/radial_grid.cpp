#include "biharm/radial_grid.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "biharm/quadrature.hpp"

namespace biharm {
namespace {

void check_size(std::size_t n) {
  if (n < RadialGrid::kMinNodes) {
    throw std::invalid_argument(
        fmt::format("radial grid needs at least {} nodes, got {}", RadialGrid::kMinNodes, n));
  }
}

}  // namespace

RadialGrid RadialGrid::uniform(std::size_t n) {
  check_size(n);
  RadialGrid g;
  g.kind_ = Kind::Uniform;
  g.nodes_.resize(n);
  for (std::size_t i = 0; i < n; ++i) g.nodes_[i] = static_cast<double>(i) / static_cast<double>(n - 1);
  g.nodes_.back() = 1.0;
  return g;
}

RadialGrid RadialGrid::graded(std::size_t n, double stretch0, double stretch1, double width) {
  check_size(n);
  if (!(stretch0 > 0.0 && stretch1 > 0.0)) {
    throw std::invalid_argument("graded grid stretch factors must be > 0");
  }
  if (!(width > 0.0 && width <= 0.5)) throw std::invalid_argument("graded grid width must lie in (0, 0.5]");
  RadialGrid g;
  g.kind_ = Kind::Graded;
  g.stretch0_ = stretch0;
  g.stretch1_ = stretch1;
  g.width_ = width;

  auto density = [&](double xi) {
    return 1.0 / (1.0 + (stretch0 - 1.0) * std::exp(-xi / width) +
                  (stretch1 - 1.0) * std::exp(-(1.0 - xi) / width));
  };
  std::vector<double> cum(n, 0.0);
  const double dxi = 1.0 / static_cast<double>(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    cum[i] = cum[i - 1] + gauss_integrate(density, (i - 1) * dxi, i * dxi, 16);
  }
  const double total = cum.back();
  g.nodes_.resize(n);
  for (std::size_t i = 0; i < n; ++i) g.nodes_[i] = cum[i] / total;
  g.nodes_.front() = 0.0;
  g.nodes_.back() = 1.0;
  return g;
}

RadialGrid RadialGrid::refined() const {
  const std::size_t n = 2 * size() - 1;
  if (kind_ == Kind::Uniform) return uniform(n);
  return graded(n, stretch0_, stretch1_, width_);
}

std::string RadialGrid::describe() const {
  if (kind_ == Kind::Uniform) return fmt::format("uniform(n={})", size());
  return fmt::format("graded(n={}, stretch0={}, stretch1={}, width={})", size(), stretch0_,
                     stretch1_, width_);
}

}  // namespace biharm
