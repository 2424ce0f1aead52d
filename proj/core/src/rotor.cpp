#include "hhj/rotor.hpp"

#include <algorithm>
#include <cmath>

#include "hhj/errors.hpp"

namespace hhj {

void RotorScenario::validate() const {
  if (!std::isfinite(omega)) throw InvalidInput("rotor: omega must be finite");
  if (!std::isfinite(mass) || mass <= 0.0) throw InvalidInput("rotor: mass must be positive");
  if (!std::isfinite(t0)) throw InvalidInput("rotor: t0 must be finite");
}

Point flow_map(const Point& r0, double t, const RotorScenario& sc) {
  const double wt = sc.omega * (t - sc.t0);
  return {r0[0] - wt * r0[1], r0[1] + wt * r0[0], r0[2]};
}

Point inverse_flow_map(const Point& r, double t, const RotorScenario& sc) {
  const double wt = sc.omega * (t - sc.t0);
  const double d = 1.0 + wt * wt;
  return {(r[0] + wt * r[1]) / d, (r[1] - wt * r[0]) / d, r[2]};
}

Point momentum_field(const Point& r, double t, const RotorScenario& sc) {
  const Point r0 = inverse_flow_map(r, t, sc);
  const double mw = sc.mass * sc.omega;
  return {-mw * r0[1], mw * r0[0], 0.0};
}

Point velocity_field(const Point& r, double t, const RotorScenario& sc) {
  const Point p = momentum_field(r, t, sc);
  return {p[0] / sc.mass, p[1] / sc.mass, 0.0};
}

double rotor_vorticity(double t, const RotorScenario& sc) {
  const double wt = sc.omega * (t - sc.t0);
  return 2.0 * sc.mass * sc.omega / (1.0 + wt * wt);
}

RotorPoint rotor_closed_form(const Point& r, double t, const RotorScenario& sc,
                             ThetaForm form) {
  const double m = sc.mass, w = sc.omega, tau = t - sc.t0;
  const double x = r[0], y = r[1];
  const double r2 = x * x + y * y;
  const double d = 1.0 + w * w * tau * tau;
  const double d2 = d * d;
  const double mw2 = m * w * w;

  RotorPoint s;
  s.kinetic = 0.5 * mw2 * r2 / d;
  s.phi = 0.5 * mw2 * tau * r2 / d;
  // d/dtau [tau / (1 + w^2 tau^2)] = (1 - w^2 tau^2) / d^2
  s.dphi_dt = 0.5 * mw2 * r2 * (1.0 - w * w * tau * tau) / d2;
  s.grad_phi = {mw2 * tau * x / d, mw2 * tau * y / d, 0.0};
  s.A = {m * w * y / d, -m * w * x / d, 0.0};
  const double ddt_inv_d = -2.0 * w * w * tau / d2;
  s.dA_dt = {m * w * y * ddt_inv_d, -m * w * x * ddt_inv_d, 0.0};
  s.curl_A = {0.0, 0.0, -2.0 * m * w / d};
  s.div_A = 0.0;

  if (form == ThetaForm::corrected) {
    s.theta = -mw2 * r2 / d2;
    s.dtheta_dt = 4.0 * mw2 * w * w * tau * r2 / (d2 * d);
    s.grad_theta = {-2.0 * mw2 * x / d2, -2.0 * mw2 * y / d2, 0.0};
  } else {
    s.theta = -mw2 * r2 / d;
    s.dtheta_dt = 2.0 * mw2 * w * w * tau * r2 / d2;
    s.grad_theta = {-2.0 * mw2 * x / d, -2.0 * mw2 * y / d, 0.0};
  }
  return s;
}

RotorFields closed_form_fields(double t, const RotorScenario& sc, const Grid& grid,
                               ThetaForm form) {
  sc.validate();
  if (grid.dim() < 2) throw InvalidInput("rotor fields need a 2D or 3D grid");
  const int k = grid.dim();
  RotorFields out{ScalarField(grid), ScalarField(grid), VectorField(grid, k), ScalarField(grid)};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const RotorPoint s = rotor_closed_form(grid.point(i), t, sc, form);
    out.kinetic[i] = s.kinetic;
    out.phi[i] = s.phi;
    out.theta[i] = s.theta;
    for (int c = 0; c < k; ++c) out.A.component(c)[i] = s.A[c];
  }
  return out;
}

VectorField momentum_on_grid(double t, const RotorScenario& sc, const Grid& grid) {
  sc.validate();
  if (grid.dim() < 2) throw InvalidInput("rotor momentum needs a 2D or 3D grid");
  return VectorField::sample(grid, grid.dim(),
                             [&](const Point& r) { return momentum_field(r, t, sc); });
}

TimeDerivativeCheck check_time_derivatives(const std::vector<Point>& points, double t,
                                           double dt, const RotorScenario& sc,
                                           ThetaForm form) {
  sc.validate();
  if (!(dt > 0.0)) throw InvalidInput("time-derivative check needs dt > 0");
  TimeDerivativeCheck c;
  for (const Point& r : points) {
    const RotorPoint a = rotor_closed_form(r, t, sc, form);
    const RotorPoint lo = rotor_closed_form(r, t - dt, sc, form);
    const RotorPoint hi = rotor_closed_form(r, t + dt, sc, form);
    const double inv = 0.5 / dt;
    c.phi = std::max(c.phi, std::abs((hi.phi - lo.phi) * inv - a.dphi_dt));
    c.theta = std::max(c.theta, std::abs((hi.theta - lo.theta) * inv - a.dtheta_dt));
    for (int i = 0; i < 3; ++i) {
      c.A = std::max(c.A, std::abs((hi.A[i] - lo.A[i]) * inv - a.dA_dt[i]));
    }
  }
  return c;
}

}  // namespace hhj
