#include "hhj/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "hhj/errors.hpp"

namespace hhj {

void require_finite(std::span<const double> v, const char* what) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw InvalidInput(std::string(what) + ": non-finite value at sample " +
                         std::to_string(i));
    }
  }
}

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) throw InvalidInput(std::string(what) + ": grids differ");
}

ScalarField::ScalarField(Grid grid)
    : grid_(std::move(grid)), values_(grid_.size(), 0.0) {}

ScalarField::ScalarField(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw InvalidInput("scalar field: value count does not match grid");
  }
  require_finite(values_, "scalar field");
}

ScalarField ScalarField::sample(const Grid& grid,
                                const std::function<double(const Point&)>& fn) {
  std::vector<double> v(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) v[k] = fn(grid.point(k));
  return ScalarField(grid, std::move(v));
}

VectorField::VectorField(Grid grid, int components)
    : grid_(std::move(grid)),
      comps_(static_cast<std::size_t>(components),
             std::vector<double>(grid_.size(), 0.0)) {
  if (components < 1) throw InvalidInput("vector field needs a component");
}

VectorField::VectorField(Grid grid, std::vector<std::vector<double>> components)
    : grid_(std::move(grid)), comps_(std::move(components)) {
  if (comps_.empty()) throw InvalidInput("vector field needs a component");
  for (const auto& c : comps_) {
    if (c.size() != grid_.size()) {
      throw InvalidInput("vector field: value count does not match grid");
    }
    require_finite(c, "vector field");
  }
}

VectorField VectorField::sample(const Grid& grid, int components,
                                const std::function<Point(const Point&)>& fn) {
  std::vector<std::vector<double>> c(components, std::vector<double>(grid.size()));
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Point v = fn(grid.point(k));
    for (int j = 0; j < components; ++j) c[j][k] = v[j];
  }
  return VectorField(grid, std::move(c));
}

ScalarField VectorField::component_field(int c) const {
  return ScalarField(grid_, comps_.at(c));
}

void VectorField::set_component(int c, const ScalarField& s) {
  require_same_grid(grid_, s.grid(), "set_component");
  auto v = s.values();
  comps_.at(c).assign(v.begin(), v.end());
}

std::vector<FacePoint> boundary_points(const Grid& grid) {
  std::vector<FacePoint> pts;
  for (int a = 0; a < grid.dim(); ++a) {
    for (int side : {-1, 1}) {
      const std::size_t fixed = side < 0 ? 0 : grid.count(a) - 1;
      for (std::size_t k = 0; k < grid.size(); ++k) {
        if (grid.axis_index(k, a) == fixed) pts.push_back({k, a, side});
      }
    }
  }
  return pts;
}

BoundaryField::BoundaryField(Grid grid)
    : grid_(std::move(grid)), points_(boundary_points(grid_)) {
  values_.assign(points_.size(), 0.0);
}

BoundaryField::BoundaryField(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)),
      points_(boundary_points(grid_)),
      values_(std::move(values)) {
  if (values_.size() != points_.size()) {
    throw InvalidInput("boundary field: value count does not match boundary");
  }
  require_finite(values_, "boundary field");
}

Point BoundaryField::normal(std::size_t i) const {
  Point n{0, 0, 0};
  n[points_[i].axis] = static_cast<double>(points_[i].side);
  return n;
}

double BoundaryField::area_weight(std::size_t i) const {
  const FacePoint& fp = points_[i];
  double w = 1.0;
  for (int b = 0; b < grid_.dim(); ++b) {
    if (b == fp.axis) continue;
    const std::size_t j = grid_.axis_index(fp.index, b);
    const bool edge = (j == 0 || j + 1 == grid_.count(b));
    w *= edge ? 0.5 * grid_.spacing(b) : grid_.spacing(b);
  }
  return w;
}

namespace {

template <class Op>
ScalarField zip(const ScalarField& a, const ScalarField& b, Op op) {
  require_same_grid(a.grid(), b.grid(), "scalar field arithmetic");
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(a[i], b[i]);
  return ScalarField(a.grid(), std::move(out));
}

template <class Op>
VectorField zip(const VectorField& a, const VectorField& b, Op op) {
  require_same_grid(a.grid(), b.grid(), "vector field arithmetic");
  if (a.components() != b.components()) {
    throw InvalidInput("vector field arithmetic: component counts differ");
  }
  std::vector<std::vector<double>> out(a.components());
  for (int c = 0; c < a.components(); ++c) {
    auto x = a.component(c);
    auto y = b.component(c);
    out[c].resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[c][i] = op(x[i], y[i]);
  }
  return VectorField(a.grid(), std::move(out));
}

}  // namespace

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return zip(a, b, [](double x, double y) { return x + y; });
}
ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return zip(a, b, [](double x, double y) { return x - y; });
}
ScalarField operator*(double s, const ScalarField& a) {
  std::vector<double> out(a.values().begin(), a.values().end());
  for (double& v : out) v *= s;
  return ScalarField(a.grid(), std::move(out));
}
VectorField operator+(const VectorField& a, const VectorField& b) {
  return zip(a, b, [](double x, double y) { return x + y; });
}
VectorField operator-(const VectorField& a, const VectorField& b) {
  return zip(a, b, [](double x, double y) { return x - y; });
}
VectorField operator*(double s, const VectorField& a) {
  VectorField out = a;
  for (int c = 0; c < out.components(); ++c) {
    for (double& v : out.component(c)) v *= s;
  }
  return out;
}

double max_abs(const ScalarField& s) {
  double m = 0.0;
  for (double v : s.values()) m = std::max(m, std::abs(v));
  return m;
}

double max_norm(const VectorField& v) {
  double m = 0.0;
  for (std::size_t i = 0; i < v.grid().size(); ++i) {
    double s = 0.0;
    for (int c = 0; c < v.components(); ++c) s += v.component(c)[i] * v.component(c)[i];
    m = std::max(m, std::sqrt(s));
  }
  return m;
}

double max_abs(const BoundaryField& b) {
  double m = 0.0;
  for (double v : b.values()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace hhj
