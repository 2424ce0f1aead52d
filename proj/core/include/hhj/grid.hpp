#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace hhj {

/// Uniform rectilinear grid over a box in 1-3 dimensions.
///
/// Samples are stored row-major: axis 0 varies slowest, the last axis
/// fastest. Spatial problems use axes (x, y, z); the Klein-Gordon code uses
/// a 2-axis grid with axis 0 = t and axis 1 = x.
class Grid {
 public:
  static constexpr int kMaxDim = 3;
  static constexpr std::size_t kMaxPoints = 2'000'000;

  Grid(std::vector<std::size_t> counts, std::vector<double> lo,
       std::vector<double> hi);

  /// Same count and interval on every axis.
  static Grid cube(int dim, std::size_t count, double lo, double hi);

  int dim() const noexcept { return dim_; }
  std::size_t count(int axis) const { return counts_[axis]; }
  double lo(int axis) const { return lo_[axis]; }
  double hi(int axis) const { return hi_[axis]; }
  double spacing(int axis) const { return spacing_[axis]; }
  std::size_t stride(int axis) const { return strides_[axis]; }
  std::size_t size() const noexcept { return size_; }

  /// Largest spacing over all axes.
  double max_spacing() const;

  std::size_t index(const std::array<std::size_t, kMaxDim>& multi) const;
  std::array<std::size_t, kMaxDim> unravel(std::size_t flat) const;
  /// Index of `flat` along one axis.
  std::size_t axis_index(std::size_t flat, int axis) const {
    return (flat / strides_[axis]) % counts_[axis];
  }

  double coordinate(int axis, std::size_t i) const {
    return lo_[axis] + spacing_[axis] * static_cast<double>(i);
  }
  /// Physical coordinates of a sample; unused trailing axes are zero.
  std::array<double, kMaxDim> point(std::size_t flat) const;

  bool on_boundary(std::size_t flat) const;

  /// Grid with every spacing halved (2n - 1 samples per axis).
  Grid refined() const;

  std::vector<std::size_t> counts() const;
  std::vector<double> lows() const;
  std::vector<double> highs() const;

  friend bool operator==(const Grid& a, const Grid& b);

 private:
  int dim_;
  std::array<std::size_t, kMaxDim> counts_{1, 1, 1};
  std::array<double, kMaxDim> lo_{0, 0, 0};
  std::array<double, kMaxDim> hi_{0, 0, 0};
  std::array<double, kMaxDim> spacing_{0, 0, 0};
  std::array<std::size_t, kMaxDim> strides_{0, 0, 0};
  std::size_t size_;
};

/// Trapezoidal product-rule weights; sum equals the box volume.
std::vector<double> quadrature_weights(const Grid& g);

}  // namespace hhj
