#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace biharm {

/// Node set 0 = r_0 < ... < r_{n-1} = 1.
///
/// Graded grids are the image of a uniform xi-grid under a fixed monotone
/// map r(xi) whose spacing is divided by `stretch0` near r = 0 and by
/// `stretch1` near r = 1 (layer width `width` in xi). Factors below 1 coarsen
/// the ends instead. Because the map is fixed, refined() returns a node
/// superset.
class RadialGrid {
 public:
  enum class Kind { Uniform, Graded };
  static constexpr std::size_t kMinNodes = 33;

  static RadialGrid uniform(std::size_t n);
  static RadialGrid graded(std::size_t n, double stretch0, double stretch1, double width = 0.3);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] std::size_t size() const { return nodes_.size(); }
  [[nodiscard]] const std::vector<double>& nodes() const { return nodes_; }
  [[nodiscard]] double operator[](std::size_t i) const { return nodes_[i]; }
  [[nodiscard]] double stretch0() const { return stretch0_; }
  [[nodiscard]] double stretch1() const { return stretch1_; }
  [[nodiscard]] double width() const { return width_; }

  /// Same map, 2n - 1 nodes.
  [[nodiscard]] RadialGrid refined() const;
  [[nodiscard]] std::string describe() const;

 private:
  Kind kind_ = Kind::Uniform;
  double stretch0_ = 1.0;
  double stretch1_ = 1.0;
  double width_ = 0.1;
  std::vector<double> nodes_;
};

}  // namespace biharm
