#include <algorithm>
#include <cmath>
#include <numbers>

#include "common.hpp"
#include "hhj/hamilton_jacobi.hpp"
#include "hhj/helmholtz.hpp"
#include "hhj/klein_gordon.hpp"
#include "hhj/madelung.hpp"
#include "hhj/rotor.hpp"
#include "hhj_cli/commands.hpp"

namespace hhj::cli {

namespace {

constexpr double kOrderWidth = 0.3;
constexpr double kLaplacianFloor = 1e-10;

double laplacian_error(const std::string& field, const Grid& g) {
  const double pi = std::numbers::pi;
  const int d = g.dim();
  if (field == "sin") {
    const auto u = ScalarField::sample(g, [&](const Point& x) {
      double p = 1.0;
      for (int a = 0; a < d; ++a) p *= std::sin(pi * x[a]);
      return p;
    });
    const ScalarField err = laplacian(u) + (d * pi * pi) * u;
    return max_abs(err);
  }
  if (field == "linear") {
    const auto u = ScalarField::sample(g, [](const Point& x) {
      return 1.0 + 2.0 * x[0] - 3.0 * x[1] + 0.5 * x[2];
    });
    return max_abs(laplacian(u));
  }
  throw InvalidInput("convergence: laplacian --field is sin or linear");
}

}  // namespace

Report cmd_convergence(const RunConfig& cfg) {
  Report rep;
  rep.command = to_string(cfg.command);
  rep.config = cfg.to_json();

  std::vector<double> h, err;
  double floor = kLaplacianFloor;
  std::string quantity;
  Grid g = cfg.make_grid();
  for (int level = 0; level < cfg.levels; ++level, g = g.refined()) {
    if (g.size() > Grid::kMaxPoints) throw InvalidInput("convergence: refined grid too large");
    if (cfg.target == "laplacian") {
      quantity = "laplacian(" + cfg.field + ")";
      h.push_back(g.max_spacing());
      err.push_back(laplacian_error(cfg.field, g));
    } else if (cfg.target == "decompose") {
      quantity = "decompose.potential_reconstruction_error";
      floor = std::max(1e-11, 10.0 * cfg.tol);
      RunConfig sub = cfg;
      sub.command = Command::decompose;
      sub.grid = g.counts();
      sub.out_dir.clear();
      // Reuse the decompose driver on the generated field.
      const Report r = cmd_decompose(sub);
      double e = NAN;
      for (const auto& c : r.checks) {
        if (c.tag == "POT_RECON") e = c.max;
      }
      h.push_back(g.max_spacing());
      err.push_back(e);
    } else if (cfg.target == "rotor") {
      quantity = "rotor.hj_residual_fd";
      floor = 1e-11;
      const RotorScenario sc{cfg.omega, cfg.mass, cfg.t0};
      const double dt = cfg.dt / std::pow(2.0, level);
      const double t = cfg.t0 + 0.3 * cfg.dt * cfg.steps;
      h.push_back(dt);
      err.push_back(max_abs(hj_residual_fd(t, dt, sc, g)));
    } else {
      quantity = "kg-check.kg_residual";
      floor = 1e-9;
      const PhysicalConstants pc = cfg.constants();
      const ComplexField psi = make_superposition(cfg.waves, pc, g);
      const MadelungState st = madelung(psi, pc);
      h.push_back(g.max_spacing());
      err.push_back(masked_max(kg_residual(psi, pc), st.mask));
      rep.diagnostics["mask_fraction"].push_back(masked_fraction(st.mask));
    }
  }

  ConvergenceTable t = make_table(quantity, h, err, floor);
  if (t.saturated) {
    rep.checks.push_back(Check::info("ORDER", NAN, NAN, "saturated at the rounding floor"));
  } else {
    rep.checks.push_back(Check::ratio("ORDER", t.order ? *t.order : NAN, t.expected_order,
                                      kOrderWidth, "least-squares slope of log error vs log h"));
  }
  rep.diagnostics["floor"] = floor;
  rep.tables.push_back(std::move(t));
  return rep;
}

}  // namespace hhj::cli
