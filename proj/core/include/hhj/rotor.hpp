#pragma once

#include <vector>

#include "hhj/field.hpp"
#include "hhj/grid.hpp"

namespace hhj {

/// Free particles started with v = omega z-hat x r0 at time t0.
struct RotorScenario {
  double omega = 1.0;
  double mass = 1.0;
  double t0 = 0.0;

  void validate() const;
};

/// Which closed form of Theta to evaluate. `unsquared` uses the single power
/// of 1 + omega^2 tau^2 in the denominator; it does not satisfy
/// Theta = -K - dPhi/dt and exists so the residuals can flag it.
enum class ThetaForm { corrected, unsquared };

/// r0 + (omega x r0)(t - t0).
Point flow_map(const Point& r0, double t, const RotorScenario& sc);
/// Inverse of flow_map at time t.
Point inverse_flow_map(const Point& r, double t, const RotorScenario& sc);
/// m omega x inverse_flow_map(r, t).
Point momentum_field(const Point& r, double t, const RotorScenario& sc);
/// Velocity field p / m.
Point velocity_field(const Point& r, double t, const RotorScenario& sc);
/// z-component of curl p: 2 m omega / (1 + omega^2 tau^2).
double rotor_vorticity(double t, const RotorScenario& sc);

/// Closed forms and hand-differentiated derivatives at one (r, t).
struct RotorPoint {
  double kinetic = 0.0;
  double phi = 0.0;
  double dphi_dt = 0.0;
  Point grad_phi{};
  Point A{};
  Point dA_dt{};
  Point curl_A{};
  double div_A = 0.0;
  double theta = 0.0;
  double dtheta_dt = 0.0;
  Point grad_theta{};
};

RotorPoint rotor_closed_form(const Point& r, double t, const RotorScenario& sc,
                             ThetaForm form = ThetaForm::corrected);

/// Closed forms sampled on a 2D or 3D grid. A has grid.dim() components.
struct RotorFields {
  ScalarField kinetic;
  ScalarField phi;
  VectorField A;
  ScalarField theta;
};

RotorFields closed_form_fields(double t, const RotorScenario& sc, const Grid& grid,
                               ThetaForm form = ThetaForm::corrected);

/// Momentum field sampled on a grid (grid.dim() components).
VectorField momentum_on_grid(double t, const RotorScenario& sc, const Grid& grid);

/// Largest difference between the analytic time derivatives of Phi, A and
/// Theta and their central differences with step dt, over the given points.
struct TimeDerivativeCheck {
  double phi = 0.0;
  double A = 0.0;
  double theta = 0.0;
};

TimeDerivativeCheck check_time_derivatives(const std::vector<Point>& points, double t,
                                           double dt, const RotorScenario& sc,
                                           ThetaForm form = ThetaForm::corrected);

}  // namespace hhj
