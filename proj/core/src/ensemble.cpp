#include "hhj/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hhj/errors.hpp"
#include "hhj/operators.hpp"

namespace hhj {

namespace {

constexpr int kMaxMidpointIterations = 100;

bool finite(const Point& a) {
  return std::isfinite(a[0]) && std::isfinite(a[1]) && std::isfinite(a[2]);
}

double dot(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

void check_state(const Particle& p, std::size_t index, double t) {
  if (!finite(p.q) || !finite(p.p) || !std::isfinite(p.action)) {
    throw NumericalError("non-finite state for particle " + std::to_string(index) +
                         " at t = " + std::to_string(t));
  }
}

void leapfrog_step(Particle& s, const HamiltonianSpec& h, double t, double dt) {
  const double h0 = h.value(s.q, s.p, t);
  Point f = h.force(s.q, s.p, t);
  Point ph;
  for (int i = 0; i < 3; ++i) ph[i] = s.p[i] + 0.5 * dt * f[i];
  const Point v = h.velocity(s.q, ph, t);
  Point q1;
  for (int i = 0; i < 3; ++i) q1[i] = s.q[i] + dt * v[i];
  f = h.force(q1, ph, t + dt);
  Point p1;
  for (int i = 0; i < 3; ++i) p1[i] = ph[i] + 0.5 * dt * f[i];
  const double h1 = h.value(q1, p1, t + dt);
  Point dq;
  for (int i = 0; i < 3; ++i) dq[i] = q1[i] - s.q[i];
  s.action += dot(ph, dq) - 0.5 * dt * (h0 + h1);
  s.q = q1;
  s.p = p1;
}

void midpoint_step(Particle& s, const HamiltonianSpec& h, double t, double dt,
                   std::size_t index) {
  const double tm = t + 0.5 * dt;
  Point qm = s.q, pm = s.p;
  bool converged = false;
  for (int it = 0; it < kMaxMidpointIterations; ++it) {
    const Point v = h.velocity(qm, pm, tm);
    const Point f = h.force(qm, pm, tm);
    double change = 0.0, scale = 1.0;
    for (int i = 0; i < 3; ++i) {
      const double qn = s.q[i] + 0.5 * dt * v[i];
      const double pn = s.p[i] + 0.5 * dt * f[i];
      change = std::max({change, std::abs(qn - qm[i]), std::abs(pn - pm[i])});
      scale = std::max({scale, std::abs(qn), std::abs(pn)});
      qm[i] = qn;
      pm[i] = pn;
    }
    if (!finite(qm) || !finite(pm)) break;
    if (change <= 4e-16 * scale) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw NumericalError("implicit midpoint iteration did not converge for particle " +
                         std::to_string(index) + " at t = " + std::to_string(t) +
                         "; reduce dt");
  }
  const double hm = h.value(qm, pm, tm);
  Point q1, p1, dq;
  for (int i = 0; i < 3; ++i) {
    q1[i] = 2.0 * qm[i] - s.q[i];
    p1[i] = 2.0 * pm[i] - s.p[i];
    dq[i] = q1[i] - s.q[i];
  }
  s.action += dot(pm, dq) - dt * hm;
  s.q = q1;
  s.p = p1;
}

}  // namespace

Integrator integrator_for(const HamiltonianSpec& h) {
  return h.has_vector_potential() ? Integrator::implicit_midpoint : Integrator::leapfrog;
}

Ensemble seed_ensemble(const Grid& lattice, const std::function<Point(const Point&)>& momentum,
                       double t0) {
  if (!std::isfinite(t0)) throw InvalidInput("seed_ensemble: t0 must be finite");
  Ensemble e;
  e.time = t0;
  e.particles.resize(lattice.size());
  for (std::size_t k = 0; k < lattice.size(); ++k) {
    e.particles[k].q = lattice.point(k);
    e.particles[k].p = momentum(e.particles[k].q);
    check_state(e.particles[k], k, t0);
  }
  return e;
}

Ensemble integrate_ensemble(Ensemble e, const HamiltonianSpec& h, double dt, int steps) {
  h.validate();
  if (!std::isfinite(dt) || dt == 0.0) throw InvalidInput("integrate_ensemble: dt must be finite and nonzero");
  if (steps < 0) throw InvalidInput("integrate_ensemble: steps must be non-negative");
  const Integrator scheme = integrator_for(h);
  for (int n = 0; n < steps; ++n) {
    const double t = e.time;
    for (std::size_t k = 0; k < e.particles.size(); ++k) {
      Particle& s = e.particles[k];
      if (scheme == Integrator::leapfrog) {
        leapfrog_step(s, h, t, dt);
      } else {
        midpoint_step(s, h, t, dt, k);
      }
      check_state(s, k, t + dt);
    }
    e.time = t + dt;
  }
  return e;
}

VorticityReport vorticity_diagnostics(const Ensemble& e, const Grid& lattice,
                                      const HamiltonianSpec& h) {
  h.validate();
  const int d = lattice.dim();
  if (d < 2) throw InvalidInput("vorticity needs a 2D or 3D lattice");
  if (e.particles.size() != lattice.size()) {
    throw InvalidInput("ensemble size does not match the seeding lattice");
  }
  const std::size_t n = lattice.size();
  const double t = e.time;

  // Per-particle arrays, then lattice derivatives dX/dxi_a.
  std::vector<std::vector<double>> q(d, std::vector<double>(n)), p(d, std::vector<double>(n));
  std::vector<double> hv(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (int i = 0; i < d; ++i) {
      q[i][k] = e.particles[k].q[i];
      p[i][k] = e.particles[k].p[i];
    }
    hv[k] = h.value(e.particles[k].q, e.particles[k].p, t);
  }
  std::vector<std::vector<std::vector<double>>> dq(d), dp(d);
  std::vector<std::vector<double>> dh(d);
  for (int a = 0; a < d; ++a) {
    dh[a] = derivative(lattice, hv, a);
    for (int i = 0; i < d; ++i) {
      dq[i].push_back(derivative(lattice, q[i], a));
      dp[i].push_back(derivative(lattice, p[i], a));
    }
  }

  VorticityReport r{VectorField(lattice, d == 2 ? 1 : 3), 0.0, 0.0, 0.0, false};
  r.min_jacobian = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    double J[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};  // J[i][a] = dq_i/dxi_a
    for (int i = 0; i < d; ++i) {
      for (int a = 0; a < d; ++a) J[i][a] = dq[i][a][k];
    }
    const double det = J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
                       J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
                       J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
    r.min_jacobian = std::min(r.min_jacobian, det);
    if (!(det > 0.0)) {
      r.crossed = true;
      continue;
    }
    // inv[a][j] = dxi_a/dq_j
    double inv[3][3];
    inv[0][0] = (J[1][1] * J[2][2] - J[1][2] * J[2][1]) / det;
    inv[0][1] = (J[0][2] * J[2][1] - J[0][1] * J[2][2]) / det;
    inv[0][2] = (J[0][1] * J[1][2] - J[0][2] * J[1][1]) / det;
    inv[1][0] = (J[1][2] * J[2][0] - J[1][0] * J[2][2]) / det;
    inv[1][1] = (J[0][0] * J[2][2] - J[0][2] * J[2][0]) / det;
    inv[1][2] = (J[0][2] * J[1][0] - J[0][0] * J[1][2]) / det;
    inv[2][0] = (J[1][0] * J[2][1] - J[1][1] * J[2][0]) / det;
    inv[2][1] = (J[0][1] * J[2][0] - J[0][0] * J[2][1]) / det;
    inv[2][2] = (J[0][0] * J[1][1] - J[0][1] * J[1][0]) / det;

    double G[3][3] = {};  // G[i][j] = dp_i/dq_j
    Point gh{};           // gradient of the field H(q, p(q))
    for (int j = 0; j < d; ++j) {
      for (int a = 0; a < d; ++a) {
        gh[j] += dh[a][k] * inv[a][j];
        for (int i = 0; i < d; ++i) G[i][j] += dp[i][a][k] * inv[a][j];
      }
    }
    double wmag;
    if (d == 2) {
      const double w = G[1][0] - G[0][1];
      r.vorticity.component(0)[k] = w;
      wmag = std::abs(w);
    } else {
      const double w[3] = {G[2][1] - G[1][2], G[0][2] - G[2][0], G[1][0] - G[0][1]};
      for (int c = 0; c < 3; ++c) r.vorticity.component(c)[k] = w[c];
      wmag = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
    }
    r.max_vorticity = std::max(r.max_vorticity, wmag);

    // dp_i/dt|_q = pdot_i - qdot_j dp_i/dq_j, with pdot from Hamilton's equations.
    const Particle& s = e.particles[k];
    const Point qdot = h.velocity(s.q, s.p, t);
    const Point pdot = h.force(s.q, s.p, t);
    double res2 = 0.0;
    for (int i = 0; i < d; ++i) {
      double dpdt = pdot[i];
      double rhs = 0.0;
      for (int j = 0; j < d; ++j) {
        dpdt -= qdot[j] * G[i][j];
        rhs += qdot[j] * (G[j][i] - G[i][j]);
      }
      const double ri = dpdt + gh[i] - rhs;
      res2 += ri * ri;
    }
    r.identity_residual = std::max(r.identity_residual, std::sqrt(res2));
  }
  return r;
}

}  // namespace hhj
