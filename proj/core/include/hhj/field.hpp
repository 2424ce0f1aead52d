#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "hhj/grid.hpp"

namespace hhj {

using Point = std::array<double, Grid::kMaxDim>;

/// One real sample per grid point. All samples are finite.
class ScalarField {
 public:
  explicit ScalarField(Grid grid);  // zero-filled
  ScalarField(Grid grid, std::vector<double> values);

  static ScalarField sample(const Grid& grid,
                            const std::function<double(const Point&)>& fn);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// k real samples per grid point, stored one component array at a time.
/// Spatial vector fields have k == grid.dim(); the 2D curl yields k == 1.
class VectorField {
 public:
  VectorField(Grid grid, int components);  // zero-filled
  VectorField(Grid grid, std::vector<std::vector<double>> components);

  static VectorField sample(const Grid& grid, int components,
                            const std::function<Point(const Point&)>& fn);

  const Grid& grid() const noexcept { return grid_; }
  int components() const noexcept { return static_cast<int>(comps_.size()); }
  std::span<const double> component(int c) const { return comps_[c]; }
  std::span<double> component(int c) { return comps_[c]; }
  ScalarField component_field(int c) const;
  void set_component(int c, const ScalarField& s);

 private:
  Grid grid_;
  std::vector<std::vector<double>> comps_;
};

/// Location of one boundary entry: a grid sample on the face normal to
/// `axis` at the low (side = -1) or high (side = +1) end. Edge and corner
/// samples appear once per incident face.
struct FacePoint {
  std::size_t index;
  int axis;
  int side;
};

/// Enumerate every (face, point) pair of the grid boundary, faces ordered
/// axis 0 low, axis 0 high, axis 1 low, ...
std::vector<FacePoint> boundary_points(const Grid& grid);

/// Values on the boundary with their outward unit normals.
class BoundaryField {
 public:
  explicit BoundaryField(Grid grid);  // zero-filled
  BoundaryField(Grid grid, std::vector<double> values);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const FacePoint> points() const noexcept { return points_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  Point normal(std::size_t i) const;
  /// Face trapezoidal weight of entry i (area element).
  double area_weight(std::size_t i) const;

 private:
  Grid grid_;
  std::vector<FacePoint> points_;
  std::vector<double> values_;
};

void require_finite(std::span<const double> v, const char* what);
void require_same_grid(const Grid& a, const Grid& b, const char* what);

// Elementwise helpers. All require matching grids.
ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double s, const ScalarField& a);
VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(double s, const VectorField& a);

double max_abs(const ScalarField& s);
/// Largest pointwise Euclidean norm.
double max_norm(const VectorField& v);
double max_abs(const BoundaryField& b);

}  // namespace hhj
