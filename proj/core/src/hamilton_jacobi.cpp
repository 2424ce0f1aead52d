#include "hhj/hamilton_jacobi.hpp"

#include <algorithm>
#include <cmath>

#include "hhj/errors.hpp"
#include "hhj/operators.hpp"

namespace hhj {

namespace {

double fd_step(double x) { return 1e-6 * std::max(1.0, std::abs(x)); }

Point cross(const Point& a, const Point& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Value of a grid-dim vector field at sample k, padded to three components.
Point at(const VectorField& v, std::size_t k) {
  Point p{};
  for (int c = 0; c < v.components() && c < 3; ++c) p[c] = v.component(c)[k];
  return p;
}

// Curl of an in-plane field as a 3-vector at sample k (2D curl is the z part).
Point curl_at(const VectorField& c, std::size_t k) {
  if (c.components() == 1) return {0.0, 0.0, c.component(0)[k]};
  return at(c, k);
}

}  // namespace

void HamiltonianSpec::validate() const {
  if (!std::isfinite(mass) || mass <= 0.0) throw InvalidInput("hamiltonian: mass must be positive");
}

double HamiltonianSpec::value(const Point& q, const Point& p, double t) const {
  Point a{};
  if (vector_potential) a = vector_potential(q, t);
  double k = 0.0;
  for (int i = 0; i < 3; ++i) k += (p[i] - a[i]) * (p[i] - a[i]);
  double h = 0.5 * k / mass;
  if (potential) h += potential(q);
  if (theta) h += theta(q, t);
  return h;
}

Point HamiltonianSpec::velocity(const Point& q, const Point& p, double t) const {
  Point a{};
  if (vector_potential) a = vector_potential(q, t);
  return {(p[0] - a[0]) / mass, (p[1] - a[1]) / mass, (p[2] - a[2]) / mass};
}

Point HamiltonianSpec::force(const Point& q, const Point& p, double t) const {
  Point f{};
  if (potential) {
    Point g{};
    if (potential_gradient) {
      g = potential_gradient(q);
    } else {
      for (int i = 0; i < 3; ++i) {
        Point qp = q, qm = q;
        const double h = fd_step(q[i]);
        qp[i] += h;
        qm[i] -= h;
        g[i] = (potential(qp) - potential(qm)) / (2.0 * h);
      }
    }
    for (int i = 0; i < 3; ++i) f[i] -= g[i];
  }
  if (theta) {
    Point g{};
    if (theta_gradient) {
      g = theta_gradient(q, t);
    } else {
      for (int i = 0; i < 3; ++i) {
        Point qp = q, qm = q;
        const double h = fd_step(q[i]);
        qp[i] += h;
        qm[i] -= h;
        g[i] = (theta(qp, t) - theta(qm, t)) / (2.0 * h);
      }
    }
    for (int i = 0; i < 3; ++i) f[i] -= g[i];
  }
  if (vector_potential) {
    const Point v = velocity(q, p, t);
    Jacobian j{};
    if (vector_potential_jacobian) {
      j = vector_potential_jacobian(q, t);
    } else {
      for (int i = 0; i < 3; ++i) {
        Point qp = q, qm = q;
        const double h = fd_step(q[i]);
        qp[i] += h;
        qm[i] -= h;
        const Point ap = vector_potential(qp, t), am = vector_potential(qm, t);
        for (int c = 0; c < 3; ++c) j[i][c] = (ap[c] - am[c]) / (2.0 * h);
      }
    }
    // -d/dq_i |p - A|^2 / 2m = v . dA/dq_i
    for (int i = 0; i < 3; ++i) {
      f[i] += v[0] * j[i][0] + v[1] * j[i][1] + v[2] * j[i][2];
    }
  }
  return f;
}

HamiltonianSpec free_hamiltonian(double mass) {
  HamiltonianSpec h;
  h.mass = mass;
  h.validate();
  return h;
}

HamiltonianSpec harmonic_hamiltonian(double mass, double frequency) {
  HamiltonianSpec h = free_hamiltonian(mass);
  const double k = mass * frequency * frequency;
  h.potential = [k](const Point& q) { return 0.5 * k * (q[0] * q[0] + q[1] * q[1] + q[2] * q[2]); };
  h.potential_gradient = [k](const Point& q) { return Point{k * q[0], k * q[1], k * q[2]}; };
  return h;
}

HamiltonianSpec rotor_hamiltonian(const RotorScenario& sc, ThetaForm form) {
  sc.validate();
  HamiltonianSpec h = free_hamiltonian(sc.mass);
  h.vector_potential = [sc](const Point& q, double t) {
    return rotor_closed_form(q, t, sc).A;
  };
  h.vector_potential_jacobian = [sc](const Point&, double t) {
    const double wt = sc.omega * (t - sc.t0);
    const double c = sc.mass * sc.omega / (1.0 + wt * wt);
    Jacobian j{};
    j[0][1] = -c;  // dA_y/dx
    j[1][0] = c;   // dA_x/dy
    return j;
  };
  h.theta = [sc, form](const Point& q, double t) {
    return rotor_closed_form(q, t, sc, form).theta;
  };
  h.theta_gradient = [sc, form](const Point& q, double t) {
    return rotor_closed_form(q, t, sc, form).grad_theta;
  };
  return h;
}

double hj_residual_at(const HJSample& s, double mass) {
  double k = 0.0;
  for (int i = 0; i < 3; ++i) k += (s.grad_phi[i] - s.A[i]) * (s.grad_phi[i] - s.A[i]);
  return 0.5 * k / mass + s.potential + s.theta + s.dphi_dt;
}

Point lorentz_residual_at(const HJSample& s, double mass) {
  Point v;
  for (int i = 0; i < 3; ++i) v[i] = (s.grad_phi[i] - s.A[i]) / mass;
  const Point vb = cross(v, s.curl_A);
  Point r;
  for (int i = 0; i < 3; ++i) r[i] = -s.grad_theta[i] - s.dA_dt[i] + vb[i];
  return r;
}

HJSample rotor_sample(const Point& r, double t, const RotorScenario& sc, ThetaForm form) {
  const RotorPoint c = rotor_closed_form(r, t, sc, form);
  HJSample s;
  s.grad_phi = c.grad_phi;
  s.dphi_dt = c.dphi_dt;
  s.A = c.A;
  s.dA_dt = c.dA_dt;
  s.curl_A = c.curl_A;
  s.theta = c.theta;
  s.grad_theta = c.grad_theta;
  return s;
}

ScalarField hj_residual(const ScalarField& phi_prev, const ScalarField& phi_now,
                        const ScalarField& phi_next, double t, double dt,
                        const HamiltonianSpec& h) {
  h.validate();
  require_same_grid(phi_prev.grid(), phi_now.grid(), "hj_residual");
  require_same_grid(phi_now.grid(), phi_next.grid(), "hj_residual");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidInput("hj_residual: dt must be positive");
  const Grid& g = phi_now.grid();
  const VectorField grad = gradient(phi_now);
  ScalarField out(g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Point q = g.point(k);
    HJSample s;
    s.grad_phi = at(grad, k);
    s.dphi_dt = (phi_next[k] - phi_prev[k]) / (2.0 * dt);
    if (h.potential) s.potential = h.potential(q);
    if (h.vector_potential) s.A = h.vector_potential(q, t);
    if (h.theta) s.theta = h.theta(q, t);
    out[k] = hj_residual_at(s, h.mass);
  }
  return out;
}

ScalarField hj_residual(double t, const RotorScenario& sc, const Grid& grid, ThetaForm form) {
  sc.validate();
  ScalarField out(grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out[k] = hj_residual_at(rotor_sample(grid.point(k), t, sc, form), sc.mass);
  }
  return out;
}

VectorField lorentz_residual(double t, const RotorScenario& sc, const Grid& grid,
                             ThetaForm form) {
  sc.validate();
  if (grid.dim() < 2) throw InvalidInput("lorentz_residual: needs a 2D or 3D grid");
  VectorField out(grid, grid.dim());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Point r = lorentz_residual_at(rotor_sample(grid.point(k), t, sc, form), sc.mass);
    for (int c = 0; c < grid.dim(); ++c) out.component(c)[k] = r[c];
  }
  return out;
}

ScalarField hj_residual_fd(double t, double dt, const RotorScenario& sc, const Grid& grid,
                           ThetaForm form) {
  sc.validate();
  const auto prev = closed_form_fields(t - dt, sc, grid, form);
  const auto now = closed_form_fields(t, sc, grid, form);
  const auto next = closed_form_fields(t + dt, sc, grid, form);
  return hj_residual(prev.phi, now.phi, next.phi, t, dt, rotor_hamiltonian(sc, form));
}

VectorField lorentz_residual_fd(double t, double dt, const RotorScenario& sc,
                                const Grid& grid, ThetaForm form) {
  sc.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidInput("lorentz_residual_fd: dt must be positive");
  const auto prev = closed_form_fields(t - dt, sc, grid, form);
  const auto now = closed_form_fields(t, sc, grid, form);
  const auto next = closed_form_fields(t + dt, sc, grid, form);
  const VectorField grad_phi = gradient(now.phi);
  const VectorField grad_theta = gradient(now.theta);
  const VectorField curl_a = curl(now.A);
  VectorField out(grid, grid.dim());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    HJSample s;
    s.grad_phi = at(grad_phi, k);
    s.A = at(now.A, k);
    const Point ap = at(next.A, k), am = at(prev.A, k);
    for (int i = 0; i < 3; ++i) s.dA_dt[i] = (ap[i] - am[i]) / (2.0 * dt);
    s.curl_A = curl_at(curl_a, k);
    s.grad_theta = at(grad_theta, k);
    const Point r = lorentz_residual_at(s, sc.mass);
    for (int c = 0; c < grid.dim(); ++c) out.component(c)[k] = r[c];
  }
  return out;
}

}  // namespace hhj
