#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hhj/ensemble.hpp"
#include "hhj/errors.hpp"
#include "hhj/hamilton_jacobi.hpp"
#include "hhj/operators.hpp"
#include "hhj/rotor.hpp"

using namespace hhj;

namespace {

double dist(const Point& a, const Point& b) {
  return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) +
                   (a[2] - b[2]) * (a[2] - b[2]));
}

// Solve (x0 - w y0 tau, y0 + w x0 tau) = (x, y) by Cramer's rule.
Point cramer_inverse(const Point& r, double wt) {
  const double det = 1.0 + wt * wt;
  return {(r[0] * 1.0 - (-wt) * r[1]) / det, (1.0 * r[1] - wt * r[0]) / det, r[2]};
}

// Richardson-extrapolated central difference of g at t.
double ddt(const std::function<double(double)>& g, double t) {
  const double h = 1e-3;
  const double d1 = (g(t + h) - g(t - h)) / (2 * h);
  const double d2 = (g(t + h / 2) - g(t - h / 2)) / h;
  return (4 * d2 - d1) / 3;
}

}  // namespace

TEST(FlowMap, ReferenceValues) {
  const RotorScenario sc;
  const Point r = flow_map({0.5, -0.5, 0}, 1.0, sc);
  EXPECT_NEAR(dist(r, {1, 0, 0}), 0.0, 1e-15);
  const Point r0 = inverse_flow_map({1, 0, 0}, 1.0, sc);
  EXPECT_NEAR(dist(r0, {0.5, -0.5, 0}), 0.0, 1e-15);
  EXPECT_EQ(dist(flow_map({0.3, 0.2, 0.1}, 0.0, sc), {0.3, 0.2, 0.1}), 0.0);
  EXPECT_EQ(dist(flow_map({0, 0, 4}, 7.0, sc), {0, 0, 4}), 0.0);
  EXPECT_EQ(inverse_flow_map({1, 2, -3}, 5.0, sc)[2], -3.0);
}

TEST(FlowMap, InverseMatchesLinearSolve) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-3, 3), t(-50, 50);
  const RotorScenario sc{1.3, 0.7, 0.4};
  for (int i = 0; i < 200; ++i) {
    const Point r{u(rng), u(rng), u(rng)};
    const double tt = t(rng);
    const Point a = inverse_flow_map(r, tt, sc);
    const Point b = cramer_inverse(r, sc.omega * (tt - sc.t0));
    EXPECT_LE(dist(a, b), 1e-14 * (1 + dist(r, {0, 0, 0})));
  }
}

TEST(Rotor, MomentumField) {
  const RotorScenario sc;
  const Point p = momentum_field({1, 0, 0}, 1.0, sc);
  EXPECT_NEAR(dist(p, {0.5, 0.5, 0}), 0.0, 1e-15);
  const Point p0 = momentum_field({0.3, -0.8, 0.2}, 0.0, RotorScenario{2.0, 1.5, 0.0});
  EXPECT_NEAR(dist(p0, {1.5 * 2.0 * 0.8, 1.5 * 2.0 * 0.3, 0}), 0.0, 1e-15);
  EXPECT_EQ(dist(momentum_field({0, 0, 2}, 3.0, sc), {0, 0, 0}), 0.0);
  const Point v = velocity_field({1, 0, 0}, 1.0, RotorScenario{1.0, 2.0, 0.0});
  EXPECT_NEAR(dist(v, {0.5, 0.5, 0}), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(rotor_vorticity(1.0, sc), 1.0);
  EXPECT_DOUBLE_EQ(rotor_vorticity(3.0, RotorScenario{1.0, 1.0, 1.0}), 2.0 / 5.0);
}

TEST(Rotor, ClosedFormsAtReferencePoint) {
  const RotorScenario sc;
  const RotorPoint c = rotor_closed_form({1, 0, 0}, 1.0, sc);
  EXPECT_NEAR(c.kinetic, 0.25, 1e-15);
  EXPECT_NEAR(c.phi, 0.25, 1e-15);
  EXPECT_NEAR(dist(c.A, {0.0, -0.5, 0.0}), 0.0, 1e-15);
  EXPECT_NEAR(c.theta, -0.25, 1e-15);
  EXPECT_NEAR(dist(c.curl_A, {0, 0, -1}), 0.0, 1e-15);
  EXPECT_NEAR(rotor_closed_form({1, 0, 0}, 1.0, sc, ThetaForm::unsquared).theta, -0.5, 1e-15);
  // At zero delay Phi vanishes and p = -A = m w x r.
  const RotorPoint z = rotor_closed_form({0.4, -0.2, 0}, 0.0, sc);
  EXPECT_EQ(z.phi, 0.0);
  const Point p = momentum_field({0.4, -0.2, 0}, 0.0, sc);
  EXPECT_NEAR(dist({-z.A[0], -z.A[1], 0}, p), 0.0, 1e-15);
}

TEST(Rotor, ThetaFromDefinitionMatchesCorrectedForm) {
  const RotorScenario sc{0.8, 1.7, -0.5};
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-2, 2), t(-3, 3);
  for (int i = 0; i < 50; ++i) {
    const Point r{u(rng), u(rng), u(rng)};
    const double tt = t(rng);
    const auto phi = [&](double s) { return rotor_closed_form(r, s, sc).phi; };
    const Point p = momentum_field(r, tt, sc);
    const double k = 0.5 * (p[0] * p[0] + p[1] * p[1]) / sc.mass;
    const double theta_oracle = -k - ddt(phi, tt);
    const RotorPoint c = rotor_closed_form(r, tt, sc);
    EXPECT_NEAR(c.theta, theta_oracle, 1e-8 * (1 + std::abs(theta_oracle)));
    EXPECT_NEAR(c.dphi_dt, ddt(phi, tt), 1e-8);
    const auto th = [&](double s) { return rotor_closed_form(r, s, sc).theta; };
    EXPECT_NEAR(c.dtheta_dt, ddt(th, tt), 1e-8);
  }
}

TEST(Rotor, FieldsOnGridAndConsistency) {
  const RotorScenario sc;
  const Grid g = Grid::cube(3, 9, -1, 1);
  for (double t : {0.0, 0.5, 1.0, 2.0}) {
    const RotorFields f = closed_form_fields(t, sc, g);
    EXPECT_LE(max_abs(divergence(f.A)), 1e-13);
    // curl(-A) = 2 m w / (1 + w^2 t^2) z-hat.
    const VectorField c = curl(-1.0 * f.A);
    for (double v : c.component(2)) EXPECT_NEAR(v, rotor_vorticity(t, sc), 1e-13);
    // p = grad(Phi) - A, exact for the quadratic Phi.
    const VectorField p = momentum_on_grid(t, sc, g);
    EXPECT_LE(max_norm(gradient(f.phi) - f.A - p), 1e-13);
  }
  EXPECT_THROW(closed_form_fields(0.0, sc, Grid::cube(1, 5, 0, 1)), InvalidInput);
  EXPECT_THROW((RotorScenario{1.0, 0.0, 0.0}).validate(), InvalidInput);
}

TEST(Rotor, TimeDerivativeCrossCheck) {
  const RotorScenario sc;
  const std::vector<Point> pts{{1, 0, 0}, {0.3, -0.7, 0.2}, {-1.5, 0.4, 1}};
  const auto a = check_time_derivatives(pts, 0.7, 1e-2, sc);
  const auto b = check_time_derivatives(pts, 0.7, 5e-3, sc);
  EXPECT_NEAR(a.phi / b.phi, 4.0, 0.1);
  EXPECT_NEAR(a.A / b.A, 4.0, 0.1);
  EXPECT_NEAR(a.theta / b.theta, 4.0, 0.1);
}

TEST(HJResidual, RotorAnalyticAtRandomSamples) {
  const RotorScenario sc;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-2, 2), t(-5, 5);
  for (int i = 0; i < 1000; ++i) {
    const HJSample s = rotor_sample({u(rng), u(rng), u(rng)}, t(rng), sc);
    EXPECT_LE(std::abs(hj_residual_at(s, sc.mass)), 1e-12);
    const Point l = lorentz_residual_at(s, sc.mass);
    EXPECT_LE(dist(l, {0, 0, 0}), 1e-12);
  }
}

TEST(HJResidual, UnsquaredThetaFlagged) {
  const RotorScenario sc;
  const double r = hj_residual_at(rotor_sample({1, 0, 0}, 1.0, sc, ThetaForm::unsquared), 1.0);
  // Unsquared minus corrected Theta: -w^2 r^2 (1/D - 1/D^2) = -0.25 at the reference point.
  EXPECT_NEAR(r, -0.25, 1e-15);
  EXPECT_EQ(hj_residual_at(rotor_sample({1, 0, 0}, 0.0, sc, ThetaForm::unsquared), 1.0), 0.0);
  EXPECT_GT(max_norm(lorentz_residual(1.0, sc, Grid::cube(2, 5, -1, 1), ThetaForm::unsquared)), 0.1);
}

TEST(HJResidual, LorentzTermsAtReferencePoint) {
  const RotorScenario sc;
  const HJSample s = rotor_sample({1, 0, 0}, 1.0, sc);
  EXPECT_NEAR(dist({-s.grad_theta[0], -s.grad_theta[1], 0}, {0.5, 0, 0}), 0.0, 1e-15);
  EXPECT_NEAR(dist({-s.dA_dt[0], -s.dA_dt[1], 0}, {0, -0.5, 0}), 0.0, 1e-15);
  const Point v{s.grad_phi[0] - s.A[0], s.grad_phi[1] - s.A[1], 0};
  const Point vb{v[1] * s.curl_A[2], -v[0] * s.curl_A[2], 0};
  EXPECT_NEAR(dist(vb, {-0.5, 0.5, 0}), 0.0, 1e-15);
}

TEST(HJResidual, ZeroOmegaIsTrivial) {
  const RotorScenario sc{0.0, 1.0, 0.0};
  const Grid g = Grid::cube(2, 5, -1, 1);
  EXPECT_EQ(max_abs(hj_residual(1.3, sc, g)), 0.0);
  EXPECT_EQ(max_norm(lorentz_residual(1.3, sc, g)), 0.0);
}

TEST(HJResidual, PerturbingOneFieldBreaksBoth) {
  const RotorScenario sc;
  const HJSample base = rotor_sample({0.6, -0.3, 0.1}, 0.8, sc);
  const double eps = 1e-3;
  HJSample phi = base, a = base, th = base;
  // Phi + eps x^2: grad changes, dPhi/dt does not.
  phi.grad_phi[0] += 2 * eps * 0.6;
  // A + eps (0, x t, 0): value, time derivative and curl all move.
  a.A[1] += eps * 0.6 * 0.8;
  a.dA_dt[1] += eps * 0.6;
  a.curl_A[2] += eps * 0.8;
  // Theta + eps x.
  th.theta += eps * 0.6;
  th.grad_theta[0] += eps;
  for (const HJSample* s : {&phi, &a, &th}) {
    EXPECT_GT(std::abs(hj_residual_at(*s, 1.0)), 0.1 * eps);
    EXPECT_GT(dist(lorentz_residual_at(*s, 1.0), {0, 0, 0}), 0.1 * eps);
    EXPECT_LT(std::abs(hj_residual_at(*s, 1.0)), 10 * eps);
  }
}

TEST(HJResidual, FreeParticlePlaneHamiltonFunction) {
  const Grid g = Grid::cube(2, 9, -1, 1);
  const double m = 2.0, px = 0.3, py = -1.2, t = 0.4, dt = 0.1;
  const auto phi_at = [&](double s) {
    return ScalarField::sample(g, [&](const Point& q) {
      return px * q[0] + py * q[1] - (px * px + py * py) / (2 * m) * s;
    });
  };
  const ScalarField r = hj_residual(phi_at(t - dt), phi_at(t), phi_at(t + dt), t, dt, free_hamiltonian(m));
  EXPECT_LE(max_abs(r), 1e-13);
}

TEST(HJResidual, FiniteDifferenceOrder) {
  const RotorScenario sc;
  const Grid g = Grid::cube(3, 9, -1, 1);
  for (double t : {0.3, 2.5, -1.7}) {
    const double h1 = max_abs(hj_residual_fd(t, 0.1, sc, g));
    const double h2 = max_abs(hj_residual_fd(t, 0.05, sc, g));
    const double l1 = max_norm(lorentz_residual_fd(t, 0.1, sc, g));
    const double l2 = max_norm(lorentz_residual_fd(t, 0.05, sc, g));
    EXPECT_NEAR(h1 / h2, 4.0, 0.5) << t;
    EXPECT_NEAR(l1 / l2, 4.0, 0.5) << t;
  }
}

TEST(Hamiltonian, ForceMatchesNumericalGradient) {
  const RotorScenario sc{1.2, 0.9, 0.1};
  const HamiltonianSpec h = rotor_hamiltonian(sc);
  const Point q{0.4, -0.7, 0.3}, p{0.2, 0.5, -0.1};
  const double t = 0.9;
  const Point f = h.force(q, p, t);
  for (int i = 0; i < 3; ++i) {
    Point qp = q, qm = q;
    qp[i] += 1e-6;
    qm[i] -= 1e-6;
    const double d = (h.value(qp, p, t) - h.value(qm, p, t)) / 2e-6;
    EXPECT_NEAR(f[i], -d, 1e-7);
  }
  // Missing derivative callbacks fall back to differences.
  HamiltonianSpec g = h;
  g.vector_potential_jacobian = nullptr;
  g.theta_gradient = nullptr;
  EXPECT_LE(dist(g.force(q, p, t), f), 1e-7);
  EXPECT_EQ(integrator_for(h), Integrator::implicit_midpoint);
  EXPECT_EQ(integrator_for(free_hamiltonian(1.0)), Integrator::leapfrog);
  HamiltonianSpec bad;
  bad.mass = -1.0;
  EXPECT_THROW(bad.validate(), InvalidInput);
}

TEST(Ensemble, FreeParticlesMoveInStraightLines) {
  const Grid lat = Grid::cube(2, 5, -1, 1);
  const auto mom = [](const Point& q) { return Point{0.5 + q[1], -0.25 * q[0], 0.0}; };
  const Ensemble e0 = seed_ensemble(lat, mom, 0.0);
  const Ensemble e = integrate_ensemble(e0, free_hamiltonian(2.0), 0.1, 30);
  EXPECT_NEAR(e.time, 3.0, 1e-14);
  ASSERT_EQ(e.particles.size(), lat.size());
  for (std::size_t k = 0; k < lat.size(); ++k) {
    const Particle& a = e0.particles[k];
    const Particle& b = e.particles[k];
    EXPECT_LE(dist(a.p, b.p), 1e-14);
    const Point expect{a.q[0] + 3.0 * a.p[0] / 2.0, a.q[1] + 3.0 * a.p[1] / 2.0, 0.0};
    EXPECT_LE(dist(b.q, expect), 1e-13);
    // S = |p|^2 t / 2m for a free particle.
    const double p2 = a.p[0] * a.p[0] + a.p[1] * a.p[1];
    EXPECT_NEAR(b.action, p2 * 3.0 / 4.0, 1e-13);
  }
}

TEST(Ensemble, RotorDataFollowsFlowMap) {
  const RotorScenario sc;
  const Grid lat = Grid::cube(3, 5, -1, 1);
  Ensemble e = seed_ensemble(lat, [&](const Point& q) { return momentum_field(q, 0.0, sc); }, 0.0);
  e = integrate_ensemble(e, free_hamiltonian(1.0), 0.05, 40);
  for (std::size_t k = 0; k < lat.size(); ++k) {
    EXPECT_LE(dist(e.particles[k].q, flow_map(lat.point(k), 2.0, sc)), 1e-13);
  }
}

TEST(Ensemble, HarmonicPeriodAtSecondOrder) {
  const double w = 1.0, period = 2 * std::numbers::pi / w;
  const auto err = [&](int steps) {
    const Grid lat = Grid::cube(2, 3, -1, 1);
    const Ensemble e0 = seed_ensemble(lat, [](const Point& q) { return Point{q[1], 0.5, 0}; }, 0.0);
    const Ensemble e = integrate_ensemble(e0, harmonic_hamiltonian(1.0, w), period / steps, steps);
    double m = 0.0;
    for (std::size_t k = 0; k < lat.size(); ++k) {
      m = std::max({m, dist(e.particles[k].q, e0.particles[k].q), dist(e.particles[k].p, e0.particles[k].p)});
    }
    return m;
  };
  EXPECT_NEAR(err(100) / err(200), 4.0, 0.5);
}

TEST(Ensemble, HarmonicEnergyBounded) {
  const HamiltonianSpec h = harmonic_hamiltonian(1.0, 1.3);
  Ensemble e = seed_ensemble(Grid::cube(1, 3, 0.5, 1.5), [](const Point&) { return Point{0.2, 0, 0}; }, 0.0);
  const double e0 = h.value(e.particles[2].q, e.particles[2].p, 0.0);
  double drift = 0.0;
  for (int i = 0; i < 100; ++i) {
    e = integrate_ensemble(e, h, 0.05, 20);
    drift = std::max(drift, std::abs(h.value(e.particles[2].q, e.particles[2].p, e.time) - e0));
  }
  EXPECT_LE(drift, 1e-2 * e0);
}

TEST(Ensemble, AlternativeHamiltonianMatchesFlowMap) {
  const RotorScenario sc;
  const HamiltonianSpec h = rotor_hamiltonian(sc);
  const Grid lat = Grid::cube(2, 5, -1, 1);
  const auto err = [&](double dt) {
    Ensemble e = seed_ensemble(lat, [&](const Point& q) { return rotor_closed_form(q, 0.0, sc).grad_phi; }, 0.0);
    e = integrate_ensemble(e, h, dt, static_cast<int>(std::lround(1.5 / dt)));
    double m = 0.0;
    for (std::size_t k = 0; k < lat.size(); ++k) m = std::max(m, dist(e.particles[k].q, flow_map(lat.point(k), 1.5, sc)));
    return m;
  };
  const double a = err(0.05), b = err(0.025);
  EXPECT_LE(b, 1e-3);
  EXPECT_NEAR(a / b, 4.0, 0.5);
}

TEST(Ensemble, ErrorsAreReported) {
  const Ensemble e = seed_ensemble(Grid::cube(1, 3, 0, 1), [](const Point&) { return Point{}; }, 0.0);
  EXPECT_THROW(integrate_ensemble(e, free_hamiltonian(1.0), 0.0, 1), InvalidInput);
  EXPECT_THROW(integrate_ensemble(e, free_hamiltonian(1.0), 0.1, -1), InvalidInput);
  HamiltonianSpec h = free_hamiltonian(1.0);
  h.potential = [](const Point& q) { return q[0]; };
  h.potential_gradient = [](const Point&) { return Point{NAN, 0, 0}; };
  EXPECT_THROW(integrate_ensemble(e, h, 0.1, 1), NumericalError);
  EXPECT_THROW(seed_ensemble(Grid::cube(1, 3, 0, 1), [](const Point&) { return Point{INFINITY, 0, 0}; }, 0.0),
               NumericalError);
  const RotorScenario sc;
  EXPECT_THROW(integrate_ensemble(seed_ensemble(Grid::cube(2, 5, -1, 1), [](const Point&) { return Point{}; }, 0.0),
                                  rotor_hamiltonian(sc), 2.0, 1),
               NumericalError);
}

TEST(Vorticity, RotorDecayLaw) {
  const RotorScenario sc;
  const Grid lat = Grid::cube(2, 17, -1, 1);
  const HamiltonianSpec h = free_hamiltonian(1.0);
  Ensemble e = seed_ensemble(lat, [&](const Point& q) { return momentum_field(q, 0.0, sc); }, 0.0);
  for (double target : {0.5, 1.0, 2.0}) {
    e = integrate_ensemble(e, h, 0.01, static_cast<int>(std::lround((target - e.time) / 0.01)));
    const VorticityReport r = vorticity_diagnostics(e, lat, h);
    EXPECT_FALSE(r.crossed);
    EXPECT_NEAR(r.max_vorticity, rotor_vorticity(e.time, sc), 1e-10);
    EXPECT_LE(r.identity_residual, 1e-10);
    ASSERT_EQ(r.vorticity.components(), 1);
  }
}

TEST(Vorticity, ZeroOmegaStaysZero) {
  const RotorScenario sc{0.0, 1.0, 0.0};
  const Grid lat = Grid::cube(3, 5, -1, 1);
  Ensemble e = seed_ensemble(lat, [&](const Point& q) { return momentum_field(q, 0.0, sc); }, 0.0);
  e = integrate_ensemble(e, free_hamiltonian(1.0), 0.1, 10);
  const VorticityReport r = vorticity_diagnostics(e, lat, free_hamiltonian(1.0));
  EXPECT_EQ(r.max_vorticity, 0.0);
  EXPECT_EQ(r.vorticity.components(), 3);
}

TEST(Vorticity, PotentialDataStaysIrrotational) {
  HamiltonianSpec h = free_hamiltonian(1.0);
  h.potential = [](const Point& q) { return 0.3 * (std::cos(q[0]) + std::cos(q[1])); };
  const auto max_w = [&](std::size_t n, double dt) {
    const Grid lat = Grid::cube(2, n, -1, 1);
    Ensemble e = seed_ensemble(lat, [](const Point& q) {
      return Point{0.3 * std::cos(q[0]) * std::sin(q[1]), 0.3 * std::sin(q[0]) * std::cos(q[1]), 0};
    }, 0.0);
    e = integrate_ensemble(e, h, dt, static_cast<int>(std::lround(1.0 / dt)));
    return vorticity_diagnostics(e, lat, h).max_vorticity;
  };
  const double a = max_w(17, 0.02), b = max_w(33, 0.01);
  EXPECT_LE(b, 1e-3);
  EXPECT_GT(a / b, 3.0);
}

TEST(Vorticity, CrossingIsDetected) {
  // V = x^2 / 2 focuses the x coordinate at t = pi/2 and inverts it after.
  HamiltonianSpec h = free_hamiltonian(1.0);
  h.potential = [](const Point& q) { return 0.5 * q[0] * q[0]; };
  h.potential_gradient = [](const Point& q) { return Point{q[0], 0, 0}; };
  const Grid lat = Grid::cube(2, 9, -1, 1);
  Ensemble e = seed_ensemble(lat, [](const Point&) { return Point{}; }, 0.0);
  e = integrate_ensemble(e, h, 0.01, 200);
  const VorticityReport r = vorticity_diagnostics(e, lat, h);
  EXPECT_TRUE(r.crossed);
  EXPECT_LT(r.min_jacobian, 0.0);
}
