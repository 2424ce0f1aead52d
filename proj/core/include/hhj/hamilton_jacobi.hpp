#pragma once

#include <array>
#include <functional>

#include "hhj/field.hpp"
#include "hhj/rotor.hpp"

namespace hhj {

/// Row i holds d/dq_i of each component: jac[i][j] = dA_j / dq_i.
using Jacobian = std::array<Point, 3>;

/// H'(q, p, t) = |p - A|^2 / 2m + V(q) + Theta(q, t) for one particle.
///
/// Every callback is optional; a missing potential, vector potential or
/// Theta is zero. Missing derivative callbacks fall back to central
/// differences of the value callbacks.
struct HamiltonianSpec {
  double mass = 1.0;
  std::function<double(const Point&)> potential;
  std::function<Point(const Point&)> potential_gradient;
  std::function<Point(const Point&, double)> vector_potential;
  std::function<Jacobian(const Point&, double)> vector_potential_jacobian;
  std::function<double(const Point&, double)> theta;
  std::function<Point(const Point&, double)> theta_gradient;

  void validate() const;
  bool has_vector_potential() const { return static_cast<bool>(vector_potential); }

  double value(const Point& q, const Point& p, double t) const;
  /// dH/dp = (p - A) / m.
  Point velocity(const Point& q, const Point& p, double t) const;
  /// -dH/dq.
  Point force(const Point& q, const Point& p, double t) const;
};

HamiltonianSpec free_hamiltonian(double mass);
/// V = 1/2 m Omega^2 |q|^2.
HamiltonianSpec harmonic_hamiltonian(double mass, double frequency);
/// H' of the rotor example: free particle plus the closed-form A and Theta.
HamiltonianSpec rotor_hamiltonian(const RotorScenario& sc,
                                  ThetaForm form = ThetaForm::corrected);

/// Field values and derivatives at one space-time point.
struct HJSample {
  Point grad_phi{};
  double dphi_dt = 0.0;
  double potential = 0.0;
  Point A{};
  Point dA_dt{};
  Point curl_A{};
  double theta = 0.0;
  Point grad_theta{};
};

/// |grad(Phi) - A|^2 / 2m + V + Theta + dPhi/dt.
double hj_residual_at(const HJSample& s, double mass);
/// -grad(Theta) - dA/dt + v x curl(A) with v = (grad(Phi) - A) / m.
Point lorentz_residual_at(const HJSample& s, double mass);

/// Sample of the rotor closed forms with analytic derivatives.
HJSample rotor_sample(const Point& r, double t, const RotorScenario& sc,
                      ThetaForm form = ThetaForm::corrected);

/// Hamilton-Jacobi residual from Phi at times t - dt, t, t + dt. Space
/// derivatives use the grid operators, the time derivative a central
/// difference; A, Theta and V come from `h` at time t.
ScalarField hj_residual(const ScalarField& phi_prev, const ScalarField& phi_now,
                        const ScalarField& phi_next, double t, double dt,
                        const HamiltonianSpec& h);

/// Rotor residuals on a 2D or 3D grid with analytic derivatives.
ScalarField hj_residual(double t, const RotorScenario& sc, const Grid& grid,
                        ThetaForm form = ThetaForm::corrected);
VectorField lorentz_residual(double t, const RotorScenario& sc, const Grid& grid,
                             ThetaForm form = ThetaForm::corrected);

/// Rotor residuals with every derivative taken numerically: grid operators
/// in space, central differences with step dt in time.
ScalarField hj_residual_fd(double t, double dt, const RotorScenario& sc, const Grid& grid,
                           ThetaForm form = ThetaForm::corrected);
VectorField lorentz_residual_fd(double t, double dt, const RotorScenario& sc,
                                const Grid& grid, ThetaForm form = ThetaForm::corrected);

}  // namespace hhj
