#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "common.hpp"
#include "hhj/ensemble.hpp"
#include "hhj/errors.hpp"
#include "hhj/hamilton_jacobi.hpp"
#include "hhj/rotor.hpp"
#include "hhj_cli/commands.hpp"

namespace hhj::cli {

namespace {

constexpr double kAnalyticTol = 1e-10;
constexpr double kConsistencyTol = 1e-12;
constexpr double kDiscrepancyMin = 1e-2;
constexpr double kTrajectoryTol = 1e-9;
constexpr double kVorticityRel = 0.02;
constexpr double kOrderWidth = 0.5;
constexpr double kFdFloor = 1e-11;

double norm(const Point& p) { return std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]); }

Point sub(const Point& a, const Point& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

// Warn when a table that should show second order does not.
void order_warning(Report& rep, const ConvergenceTable& t) {
  if (t.saturated) return;
  if (!t.order || std::abs(*t.order - t.expected_order) > kOrderWidth) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: observed order %s, expected %.1f (dt too large?)",
                  t.quantity.c_str(), t.order ? std::to_string(*t.order).c_str() : "n/a",
                  t.expected_order);
    rep.warnings.emplace_back(buf);
  }
}

double max_position_error(const Ensemble& e, const Grid& lattice, double t,
                          const RotorScenario& sc) {
  double err = 0.0;
  for (std::size_t k = 0; k < lattice.size(); ++k) {
    err = std::max(err, norm(sub(e.particles[k].q, flow_map(lattice.point(k), t, sc))));
  }
  return err;
}

}  // namespace

Report cmd_rotor(const RunConfig& cfg) {
  Report rep;
  rep.command = to_string(cfg.command);
  rep.config = cfg.to_json();

  const RotorScenario sc{cfg.omega, cfg.mass, cfg.t0};
  sc.validate();
  const Grid g = cfg.make_grid();
  const double horizon = cfg.dt * cfg.steps;
  const double t_end = cfg.t0 + horizon;
  const bool spinning = cfg.omega != 0.0;

  // Closed forms with analytic derivatives at the start, middle and end.
  double hj_max = 0.0, hj_l2 = 0.0, lor_max = 0.0, lor_l2 = 0.0;
  for (double t : {cfg.t0, cfg.t0 + 0.5 * horizon, t_end}) {
    const ScalarField hj = hj_residual(t, sc, g);
    const VectorField lor = lorentz_residual(t, sc, g);
    hj_max = std::max(hj_max, max_abs(hj));
    hj_l2 = std::max(hj_l2, l2_norm(hj));
    lor_max = std::max(lor_max, max_norm(lor));
    lor_l2 = std::max(lor_l2, l2_norm(lor));
  }
  rep.checks.push_back(Check::at_most("HJ", hj_max, hj_l2, kAnalyticTol, "corrected Theta"));
  rep.checks.push_back(Check::at_most("LORENTZ", lor_max, lor_l2, kAnalyticTol));

  // The unsquared-denominator Theta must be flagged.
  const Point ref{1.0, 0.0, 0.0};
  const double unsquared =
      std::abs(hj_residual_at(rotor_sample(ref, cfg.t0 + 1.0, sc, ThetaForm::unsquared), sc.mass));
  if (spinning) {
    rep.checks.push_back(Check::at_least("THETA_UNSQUARED", unsquared, kDiscrepancyMin,
                                         "unsquared Theta flagged at (1,0,0), dt = 1"));
  } else {
    rep.checks.push_back(Check::info("THETA_UNSQUARED", unsquared, NAN, "omega = 0: forms coincide"));
  }

  // Consistency of the closed forms with each other.
  double round_trip = 0.0, momentum = 0.0, kinetic = 0.0, theta_def = 0.0;
  for (double t : {cfg.t0, t_end}) {
    for (std::size_t k = 0; k < g.size(); ++k) {
      const Point r = g.point(k);
      const double scale = std::max(1.0, norm(r));
      round_trip = std::max(round_trip, norm(sub(flow_map(inverse_flow_map(r, t, sc), t, sc), r)) / scale);
      const RotorPoint s = rotor_closed_form(r, t, sc);
      const Point p = momentum_field(r, t, sc);
      const double pscale = std::max(1.0, norm(p));
      momentum = std::max(momentum, norm(sub(sub(s.grad_phi, s.A), p)) / pscale);
      const double k_ref = 0.5 * (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]) / sc.mass;
      kinetic = std::max(kinetic, std::abs(s.kinetic - k_ref) / std::max(1.0, k_ref));
      theta_def = std::max(theta_def, std::abs(s.theta + s.kinetic + s.dphi_dt) /
                                          std::max(1.0, std::abs(s.theta)));
    }
  }
  rep.checks.push_back(Check::at_most("ROUND_TRIP", round_trip, NAN, kConsistencyTol));
  rep.checks.push_back(Check::at_most("MOMENTUM", momentum, NAN, kConsistencyTol, "p = grad Phi - A"));
  rep.checks.push_back(Check::at_most("KINETIC", kinetic, NAN, kConsistencyTol));
  rep.checks.push_back(Check::at_most("THETA_DEF", theta_def, NAN, kConsistencyTol,
                                      "Theta = -K - dPhi/dt"));

  // Numerical derivatives: only the time step matters for these closed forms.
  const double t_fd = cfg.t0 + 0.3 * horizon;
  std::vector<double> steps_h, hj_fd, lor_fd;
  for (double dt : {cfg.dt, cfg.dt / 2, cfg.dt / 4}) {
    steps_h.push_back(dt);
    hj_fd.push_back(max_abs(hj_residual_fd(t_fd, dt, sc, g)));
    lor_fd.push_back(max_norm(lorentz_residual_fd(t_fd, dt, sc, g)));
  }
  rep.tables.push_back(make_table("HJ_FD", steps_h, hj_fd, kFdFloor));
  rep.tables.push_back(make_table("LORENTZ_FD", steps_h, lor_fd, kFdFloor));

  // Free particles started on the lattice follow the flow map.
  const HamiltonianSpec free_h = free_hamiltonian(sc.mass);
  Ensemble e = seed_ensemble(g, [&](const Point& q) { return momentum_field(q, cfg.t0, sc); }, cfg.t0);

  std::vector<std::array<double, 4>> series;
  double vort_rel = 0.0, identity = 0.0;
  bool crossed = false;
  const auto track = [&](const Ensemble& en) {
    const VorticityReport vr = vorticity_diagnostics(en, g, free_h);
    const double a = std::abs(rotor_vorticity(en.time, sc));
    series.push_back({en.time, vr.max_vorticity, a, vr.identity_residual});
    vort_rel = std::max(vort_rel, std::abs(vr.max_vorticity - a) / (a + 1e-10));
    identity = std::max(identity, vr.identity_residual);
    crossed = crossed || vr.crossed;
  };
  track(e);
  for (int s = 0; s < cfg.steps; ++s) {
    e = integrate_ensemble(std::move(e), free_h, cfg.dt, 1);
    track(e);
  }
  rep.checks.push_back(Check::at_most("TRAJECTORY", max_position_error(e, g, e.time, sc), NAN,
                                      kTrajectoryTol, "free H against the flow map"));
  rep.checks.push_back(Check::at_most("VORTICITY", crossed ? NAN : vort_rel, NAN, kVorticityRel,
                                      "relative to 2 m omega / (1 + omega^2 dt^2), every step"));
  rep.checks.push_back(Check::info("VORTICITY_IDENTITY", identity, NAN,
                                   "dp/dt + grad H - qdot x curl p on the lattice"));

  // Same trajectories from H' with p = grad Phi, at three step sizes.
  const HamiltonianSpec alt = rotor_hamiltonian(sc);
  std::vector<double> alt_h, alt_err;
  for (int level = 0; level < 3; ++level) {
    const int mult = 1 << level;
    Ensemble a = seed_ensemble(
        g, [&](const Point& q) { return rotor_closed_form(q, cfg.t0, sc).grad_phi; }, cfg.t0);
    a = integrate_ensemble(std::move(a), alt, cfg.dt / mult, cfg.steps * mult);
    alt_h.push_back(cfg.dt / mult);
    alt_err.push_back(max_position_error(a, g, t_end, sc));
  }
  rep.tables.push_back(make_table("ALT_HAMILTONIAN", alt_h, alt_err, kFdFloor));

  for (const auto& t : rep.tables) order_warning(rep, t);

  rep.diagnostics["grid"] = detail::dims_label(g);
  rep.diagnostics["t_end"] = t_end;
  rep.diagnostics["fd_time"] = t_fd;
  rep.diagnostics["trajectories_crossed"] = crossed;
  rep.diagnostics["final_vorticity"] = series.back()[1];
  rep.diagnostics["final_vorticity_analytic"] = series.back()[2];

  if (const std::string path = detail::output_path(cfg, rep, "vorticity.csv"); !path.empty()) {
    std::ofstream os(path);
    if (!os) throw Error("cannot write " + path);
    os << "t,max_vorticity,analytic,identity_residual\n";
    char buf[128];
    for (const auto& r : series) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", r[0], r[1], r[2], r[3]);
      os << buf;
    }
  }
  detail::write_output(cfg, rep, "hj_residual.field", FieldData::from(hj_residual(t_end, sc, g)));
  detail::write_output(cfg, rep, "lorentz_residual.field",
                       FieldData::from(lorentz_residual(t_end, sc, g)));
  return rep;
}

}  // namespace hhj::cli
