#pragma once

#include <functional>
#include <vector>

#include "hhj/field.hpp"
#include "hhj/hamilton_jacobi.hpp"

namespace hhj {

struct Particle {
  Point q{};
  Point p{};
  /// Action accumulated since seeding.
  double action = 0.0;
};

struct Ensemble {
  std::vector<Particle> particles;
  double time = 0.0;
};

enum class Integrator { leapfrog, implicit_midpoint };

/// Leapfrog (kick-drift-kick) when H has no vector potential, implicit
/// midpoint otherwise.
Integrator integrator_for(const HamiltonianSpec& h);

/// One particle per lattice point (row-major order) with p = momentum(q).
Ensemble seed_ensemble(const Grid& lattice, const std::function<Point(const Point&)>& momentum,
                       double t0);

/// Advance `steps` steps of size dt, accumulating S += p dq - H dt. Throws
/// NumericalError if a step produces non-finite state or the implicit
/// midpoint iteration fails to converge.
Ensemble integrate_ensemble(Ensemble e, const HamiltonianSpec& h, double dt, int steps);

/// Vorticity of an ensemble seeded on `lattice`, evaluated on the moving
/// lattice through dp/dq = (dp/dxi)(dq/dxi)^-1.
struct VorticityReport {
  /// 2D lattice: one component (dp_y/dx - dp_x/dy). 3D: curl p. Zero where
  /// the map has folded.
  VectorField vorticity;
  double max_vorticity = 0.0;
  /// max over the lattice of |dp/dt + grad(H) - qdot x-terms|, with dp/dt
  /// from Hamilton's equations.
  double identity_residual = 0.0;
  double min_jacobian = 0.0;
  /// True when the lattice Jacobian is non-positive somewhere (trajectories
  /// have crossed); those points are excluded from the maxima.
  bool crossed = false;
};

VorticityReport vorticity_diagnostics(const Ensemble& e, const Grid& lattice,
                                      const HamiltonianSpec& h);

}  // namespace hhj
