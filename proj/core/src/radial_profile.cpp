#include "biharm/radial_profile.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <stdexcept>

namespace biharm {

HermiteCurve::HermiteCurve(std::vector<double> x, std::vector<double> y, std::vector<double> dy)
    : x_(std::move(x)), y_(std::move(y)), dy_(std::move(dy)) {
  if (x_.size() < 2 || y_.size() != x_.size() || dy_.size() != x_.size()) {
    throw std::invalid_argument("HermiteCurve: need matching arrays of at least two nodes");
  }
}

std::size_t HermiteCurve::cell(double t) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), t);
  std::size_t k = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  return std::min(k, x_.size() - 2);
}

double HermiteCurve::value(double t) const {
  const std::size_t k = cell(t);
  const double h = x_[k + 1] - x_[k];
  const double s = (t - x_[k]) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y_[k] + (s3 - 2 * s2 + s) * h * dy_[k] +
         (-2 * s3 + 3 * s2) * y_[k + 1] + (s3 - s2) * h * dy_[k + 1];
}

double HermiteCurve::slope(double t) const {
  const std::size_t k = cell(t);
  const double h = x_[k + 1] - x_[k];
  const double s = (t - x_[k]) / h;
  const double s2 = s * s;
  return ((6 * s2 - 6 * s) * y_[k] + (-6 * s2 + 6 * s) * y_[k + 1]) / h +
         (3 * s2 - 4 * s + 1) * dy_[k] + (3 * s2 - 2 * s) * dy_[k + 1];
}

RadialProfile RadialProfile::from_solution(const RadialSolution& sol) {
  const auto& r = sol.grid.nodes();
  auto cu = std::make_shared<HermiteCurve>(r, sol.u, sol.du);
  auto cl = std::make_shared<HermiteCurve>(r, sol.lap_u, sol.dlap_u);
  RadialProfile p;
  p.u = [cu](double t) { return cu->value(t); };
  p.du = [cu](double t) { return cu->slope(t); };
  p.lap = [cl](double t) { return cl->value(t); };
  p.dlap = [cl](double t) { return cl->slope(t); };
  return p;
}

RadialSolution transfer(const RadialSolution& sol, const RadialGrid& grid) {
  const auto& r0 = sol.grid.nodes();
  HermiteCurve cu(r0, sol.u, sol.du);
  HermiteCurve cl(r0, sol.lap_u, sol.dlap_u);
  RadialSolution out;
  out.grid = grid;
  out.bc = sol.bc;
  out.lambda = sol.lambda;
  for (double t : grid.nodes()) {
    out.u.push_back(cu.value(t));
    out.du.push_back(cu.slope(t));
    out.lap_u.push_back(cl.value(t));
    out.dlap_u.push_back(cl.slope(t));
  }
  out.M = out.u.front();
  out.residual_norm = std::numeric_limits<double>::quiet_NaN();
  return out;
}

}  // namespace biharm
