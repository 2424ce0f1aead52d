#pragma once

#include <span>
#include <vector>

#include "hhj/field.hpp"

namespace hhj {

// Collocated finite differences: second-order central stencils in the
// interior, second-order one-sided stencils on the boundary samples.

/// d/dx_axis of raw samples laid out on `g`.
std::vector<double> derivative(const Grid& g, std::span<const double> v, int axis);
/// d^2/dx_axis^2 of raw samples. Uses the 4-point one-sided stencil at the
/// ends when the axis has at least 4 samples, otherwise the 3-point one.
std::vector<double> second_derivative(const Grid& g, std::span<const double> v,
                                      int axis);

VectorField gradient(const ScalarField& s);
/// Requires components == grid.dim().
ScalarField divergence(const VectorField& v);
/// 3D: three components. 2D: the single out-of-plane component.
VectorField curl(const VectorField& v);
ScalarField laplacian(const ScalarField& s);
/// (1/c^2) d^2/dt^2 - sum of spatial second derivatives, with grid axis 0
/// taken as time.
ScalarField dalembertian(const ScalarField& s, double c = 1.0);

/// Trapezoidal integral of a*b over the grid box.
double inner_product(const ScalarField& a, const ScalarField& b);
/// Trapezoidal integral of the pointwise dot product.
double inner_product(const VectorField& a, const VectorField& b);
double integral(const ScalarField& s);
/// sqrt(inner_product(v, v)).
double l2_norm(const ScalarField& s);
double l2_norm(const VectorField& v);

/// v . n on every (face, point) boundary entry.
BoundaryField boundary_normal_component(const VectorField& v);
/// Sum of values times face area weights; a corner counts once per face.
double surface_integral(const BoundaryField& b);

}  // namespace hhj
