#include "hhj/operators.hpp"

#include <cmath>
#include <utility>

#include "hhj/errors.hpp"

namespace hhj {

std::vector<double> derivative(const Grid& g, std::span<const double> v, int axis) {
  if (v.size() != g.size()) throw InvalidInput("derivative: size mismatch");
  if (axis < 0 || axis >= g.dim()) throw InvalidInput("derivative: bad axis");
  const std::size_t n = g.count(axis);
  const std::size_t s = g.stride(axis);
  const double inv2h = 0.5 / g.spacing(axis);
  std::vector<double> out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    const std::size_t i = g.axis_index(k, axis);
    if (i == 0) {
      out[k] = (-3.0 * v[k] + 4.0 * v[k + s] - v[k + 2 * s]) * inv2h;
    } else if (i + 1 == n) {
      out[k] = (3.0 * v[k] - 4.0 * v[k - s] + v[k - 2 * s]) * inv2h;
    } else {
      out[k] = (v[k + s] - v[k - s]) * inv2h;
    }
  }
  return out;
}

std::vector<double> second_derivative(const Grid& g, std::span<const double> v,
                                      int axis) {
  if (v.size() != g.size()) throw InvalidInput("second_derivative: size mismatch");
  if (axis < 0 || axis >= g.dim()) throw InvalidInput("second_derivative: bad axis");
  const std::size_t n = g.count(axis);
  const std::size_t s = g.stride(axis);
  const double inv_h2 = 1.0 / (g.spacing(axis) * g.spacing(axis));
  const bool wide = n >= 4;
  std::vector<double> out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    const std::size_t i = g.axis_index(k, axis);
    if (i == 0) {
      out[k] = wide ? (2.0 * v[k] - 5.0 * v[k + s] + 4.0 * v[k + 2 * s] -
                       v[k + 3 * s]) * inv_h2
                    : (v[k] - 2.0 * v[k + s] + v[k + 2 * s]) * inv_h2;
    } else if (i + 1 == n) {
      out[k] = wide ? (2.0 * v[k] - 5.0 * v[k - s] + 4.0 * v[k - 2 * s] -
                       v[k - 3 * s]) * inv_h2
                    : (v[k] - 2.0 * v[k - s] + v[k - 2 * s]) * inv_h2;
    } else {
      out[k] = (v[k + s] - 2.0 * v[k] + v[k - s]) * inv_h2;
    }
  }
  return out;
}

VectorField gradient(const ScalarField& s) {
  const Grid& g = s.grid();
  std::vector<std::vector<double>> comps;
  for (int a = 0; a < g.dim(); ++a) comps.push_back(derivative(g, s.values(), a));
  return VectorField(g, std::move(comps));
}

ScalarField divergence(const VectorField& v) {
  const Grid& g = v.grid();
  if (v.components() != g.dim()) {
    throw InvalidInput("divergence: component count must equal grid dimension");
  }
  std::vector<double> out(g.size(), 0.0);
  for (int a = 0; a < g.dim(); ++a) {
    const auto d = derivative(g, v.component(a), a);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += d[k];
  }
  return ScalarField(g, std::move(out));
}

VectorField curl(const VectorField& v) {
  const Grid& g = v.grid();
  if (g.dim() == 2 && v.components() == 2) {
    auto dvy_dx = derivative(g, v.component(1), 0);
    const auto dvx_dy = derivative(g, v.component(0), 1);
    for (std::size_t k = 0; k < dvy_dx.size(); ++k) dvy_dx[k] -= dvx_dy[k];
    return VectorField(g, {std::move(dvy_dx)});
  }
  if (g.dim() == 3 && v.components() == 3) {
    std::vector<std::vector<double>> out(3);
    for (int c = 0; c < 3; ++c) {
      const int i = (c + 1) % 3;  // curl_c = d_i v_j - d_j v_i
      const int j = (c + 2) % 3;
      out[c] = derivative(g, v.component(j), i);
      const auto b = derivative(g, v.component(i), j);
      for (std::size_t k = 0; k < b.size(); ++k) out[c][k] -= b[k];
    }
    return VectorField(g, std::move(out));
  }
  throw InvalidInput("curl: needs a 2D or 3D field with matching components");
}

ScalarField laplacian(const ScalarField& s) {
  const Grid& g = s.grid();
  std::vector<double> out(g.size(), 0.0);
  for (int a = 0; a < g.dim(); ++a) {
    const auto d = second_derivative(g, s.values(), a);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += d[k];
  }
  return ScalarField(g, std::move(out));
}

ScalarField dalembertian(const ScalarField& s, double c) {
  const Grid& g = s.grid();
  if (g.dim() < 2) throw InvalidInput("dalembertian: needs a time axis and at least one space axis");
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidInput("dalembertian: c must be positive");
  std::vector<double> out = second_derivative(g, s.values(), 0);
  for (double& v : out) v /= c * c;
  for (int a = 1; a < g.dim(); ++a) {
    const auto d = second_derivative(g, s.values(), a);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] -= d[k];
  }
  return ScalarField(g, std::move(out));
}

double inner_product(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid(), "inner_product");
  const auto w = quadrature_weights(a.grid());
  double sum = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) sum += w[k] * a[k] * b[k];
  return sum;
}

double inner_product(const VectorField& a, const VectorField& b) {
  require_same_grid(a.grid(), b.grid(), "inner_product");
  if (a.components() != b.components()) {
    throw InvalidInput("inner_product: component counts differ");
  }
  const auto w = quadrature_weights(a.grid());
  double sum = 0.0;
  for (int c = 0; c < a.components(); ++c) {
    auto x = a.component(c);
    auto y = b.component(c);
    for (std::size_t k = 0; k < w.size(); ++k) sum += w[k] * x[k] * y[k];
  }
  return sum;
}

double integral(const ScalarField& s) {
  const auto w = quadrature_weights(s.grid());
  double sum = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) sum += w[k] * s[k];
  return sum;
}

double l2_norm(const ScalarField& s) { return std::sqrt(inner_product(s, s)); }
double l2_norm(const VectorField& v) { return std::sqrt(inner_product(v, v)); }

BoundaryField boundary_normal_component(const VectorField& v) {
  const Grid& g = v.grid();
  if (v.components() != g.dim()) {
    throw InvalidInput(
        "boundary_normal_component: component count must equal grid dimension");
  }
  BoundaryField out(g);
  auto pts = out.points();
  auto vals = out.values();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    vals[i] = pts[i].side * v.component(pts[i].axis)[pts[i].index];
  }
  return out;
}

double surface_integral(const BoundaryField& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) sum += b.values()[i] * b.area_weight(i);
  return sum;
}

}  // namespace hhj
