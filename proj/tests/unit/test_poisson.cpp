#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hhj/errors.hpp"
#include "hhj/operators.hpp"
#include "hhj/poisson.hpp"

using namespace hhj;

namespace {

constexpr double pi = std::numbers::pi;

double zero_mean_max_diff(const ScalarField& a, const ScalarField& b) {
  const Grid& g = a.grid();
  double vol = 1.0;
  for (int d = 0; d < g.dim(); ++d) vol *= g.hi(d) - g.lo(d);
  const double ma = integral(a) / vol, mb = integral(b) / vol;
  double e = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) e = std::max(e, std::abs((a[k] - ma) - (b[k] - mb)));
  return e;
}

// Neumann problem for phi = x^2 + y^2 on [0,1]^2.
double quadratic_error(std::size_t n, SolverMethod m) {
  const Grid g = Grid::cube(2, n, 0, 1);
  const auto exact = ScalarField::sample(g, [](const Point& p) { return p[0] * p[0] + p[1] * p[1]; });
  const auto f = VectorField::sample(g, 2, [](const Point& p) { return Point{2 * p[0], 2 * p[1], 0}; });
  SolverConfig cfg;
  cfg.tolerance = 1e-12;
  cfg.method = m;
  const auto sol = solve_scalar_neumann(divergence(f), boundary_normal_component(f), cfg);
  EXPECT_TRUE(sol.report.converged);
  return zero_mean_max_diff(sol.field, exact);
}

}  // namespace

TEST(SolverConfig, Validation) {
  SolverConfig c;
  EXPECT_NO_THROW(c.validate());
  c.tolerance = 0.0;
  EXPECT_THROW(c.validate(), InvalidInput);
  c.tolerance = 1e-8;
  c.max_iterations = 0;
  EXPECT_THROW(c.validate(), InvalidInput);
}

TEST(ScalarNeumann, HomogeneousGivesZero) {
  const Grid g = Grid::cube(3, 9, 0, 1);
  const auto sol = solve_scalar_neumann(ScalarField(g), BoundaryField(g), SolverConfig{});
  EXPECT_EQ(max_abs(sol.field), 0.0);
  EXPECT_TRUE(sol.report.converged);
}

TEST(ScalarNeumann, ManufacturedQuadratic) {
  for (auto m : {SolverMethod::conjugate_gradient, SolverMethod::successive_over_relaxation}) {
    const double e = quadratic_error(17, m);
    EXPECT_LE(e, 1e-3) << to_string(m);
  }
}

TEST(ScalarNeumann, ZeroMeanGauge) {
  const Grid g = Grid::cube(2, 17, 0, 1);
  const auto f = VectorField::sample(g, 2, [](const Point& p) { return Point{std::cos(p[1]), p[0], 0}; });
  const auto sol = solve_scalar_neumann(divergence(f), boundary_normal_component(f), SolverConfig{});
  EXPECT_NEAR(integral(sol.field), 0.0, 1e-13);
}

TEST(ScalarNeumann, ConvergesAtSecondOrder) {
  // Manufactured cos(pi x) cos(pi y): zero normal derivative, source -2 pi^2 u.
  std::vector<double> err;
  for (std::size_t n : {9, 17, 33}) {
    const Grid g = Grid::cube(2, n, 0, 1);
    const auto u = ScalarField::sample(g, [](const Point& p) { return std::cos(pi * p[0]) * std::cos(pi * p[1]); });
    SolverConfig cfg;
    cfg.tolerance = 1e-12;
    const auto sol = solve_scalar_neumann(-2 * pi * pi * u, BoundaryField(g), cfg);
    err.push_back(zero_mean_max_diff(sol.field, u));
  }
  const double order = std::log2(err[0] / err[2]) / 2.0;
  EXPECT_NEAR(order, 2.0, 0.3);
}

TEST(ScalarNeumann, RotationalDataGivesHarmonicPhi) {
  const Grid g = Grid::cube(2, 17, -0.5, 0.5);
  const auto f = VectorField::sample(g, 2, [](const Point& p) { return Point{-p[1], p[0], 0}; });
  SolverConfig cfg;
  cfg.tolerance = 1e-10;
  const auto sol = solve_scalar_neumann(divergence(f), boundary_normal_component(f), cfg);
  EXPECT_LE(sol.report.final_residual, cfg.tolerance);
  EXPECT_LE(sol.report.compatibility_defect, 1e-14);
  // phi = -xy is not representable (edge singularity), but the interior is harmonic.
  const ScalarField l = laplacian(sol.field);
  double interior = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!g.on_boundary(k)) interior = std::max(interior, std::abs(l[k]));
  }
  EXPECT_LE(interior, 1e-6);
}

TEST(ScalarNeumann, RejectsIncompatibleData) {
  const Grid g = Grid::cube(2, 9, 0, 1);
  const auto one = ScalarField::sample(g, [](const Point&) { return 1.0; });
  try {
    solve_scalar_neumann(one, BoundaryField(g), SolverConfig{});
    FAIL() << "expected IncompatibleProblem";
  } catch (const IncompatibleProblem& e) {
    EXPECT_NEAR(e.defect(), 1.0, 1e-12);
  }
}

TEST(ScalarNeumann, ReportsNonConvergence) {
  const Grid g = Grid::cube(2, 17, 0, 1);
  const auto f = VectorField::sample(g, 2, [](const Point& p) { return Point{std::exp(p[1]) * p[0], p[0] * p[1] * p[1], 0}; });
  SolverConfig cfg;
  cfg.max_iterations = 2;
  cfg.tolerance = 1e-12;
  try {
    solve_scalar_neumann(divergence(f), boundary_normal_component(f), cfg);
    FAIL() << "expected ConvergenceFailure";
  } catch (const ConvergenceFailure& e) {
    EXPECT_FALSE(e.report().converged);
    EXPECT_EQ(e.report().iterations, 2u);
    EXPECT_EQ(e.report().residual_history.size(), 2u);
  }
}

TEST(ScalarNeumann, CGEnergyDecreasesMonotonically) {
  const Grid g = Grid::cube(3, 13, 0, 1);
  const auto f = VectorField::sample(g, 3, [](const Point& p) {
    return Point{std::sin(3 * p[1]), p[0] * p[2], std::cos(2 * p[0])};
  });
  SolverConfig cfg;
  cfg.tolerance = 1e-10;
  const auto sol = solve_scalar_neumann(divergence(f), boundary_normal_component(f), cfg);
  const auto& e = sol.report.energy_history;
  ASSERT_GE(e.size(), 3u);
  for (std::size_t i = 1; i < e.size(); ++i) {
    EXPECT_LE(e[i], e[i - 1] + 1e-12 * std::abs(e[i - 1])) << "iteration " << i;
  }
  EXPECT_LE(sol.report.residual_history.back(), cfg.tolerance);
}

TEST(ScalarNeumann, CGAndSORAgree) {
  const Grid g = Grid::cube(2, 17, 0, 1);
  const auto f = VectorField::sample(g, 2, [](const Point& p) { return Point{std::exp(p[1]), p[0] * p[0], 0}; });
  SolverConfig cg, sor;
  cg.tolerance = sor.tolerance = 1e-11;
  sor.method = SolverMethod::successive_over_relaxation;
  const auto a = solve_scalar_neumann(divergence(f), boundary_normal_component(f), cg);
  const auto b = solve_scalar_neumann(divergence(f), boundary_normal_component(f), sor);
  EXPECT_LE(max_abs(a.field - b.field), 1e-8);
}

TEST(VectorPoisson, StreamFunctionRecovered) {
  // t = (d_y psi, -d_x psi) for psi = sin(pi x) sin(pi y); curl t = -lap psi.
  std::vector<double> err;
  for (std::size_t n : {17, 33}) {
    const Grid g = Grid::cube(2, n, 0, 1);
    const auto psi = ScalarField::sample(g, [](const Point& p) { return std::sin(pi * p[0]) * std::sin(pi * p[1]); });
    const auto t = VectorField::sample(g, 2, [](const Point& p) {
      return Point{pi * std::sin(pi * p[0]) * std::cos(pi * p[1]), -pi * std::cos(pi * p[0]) * std::sin(pi * p[1]), 0};
    });
    const ScalarField w = 2 * pi * pi * psi;
    const VectorField src(g, {std::vector<double>(w.values().begin(), w.values().end())});
    SolverConfig cfg;
    cfg.tolerance = 1e-12;
    const auto sol = solve_vector_poisson(src, t, cfg);
    ASSERT_EQ(sol.field.components(), 1);
    err.push_back(max_abs(sol.field.component_field(0) - psi));
  }
  EXPECT_LE(err[0], 1e-2);
  EXPECT_NEAR(err[0] / err[1], 4.0, 0.5);
}

TEST(VectorPoisson, GradientInputHasNoSolenoidalPart) {
  const Grid g = Grid::cube(3, 13, 0, 1);
  const auto f = VectorField::sample(g, 3, [](const Point& p) {
    return Point{std::cos(p[0]) * p[1], std::sin(p[0]), 2 * p[2]};
  });
  const auto sol = solve_vector_poisson(curl(f), VectorField(g, 3), SolverConfig{});
  EXPECT_LE(max_norm(curl(sol.field)), 1e-3);
}

TEST(VectorPoisson, RotationalFieldGaugeAndCurl) {
  const Grid g = Grid::cube(3, 17, -0.5, 0.5);
  const auto f = VectorField::sample(g, 3, [](const Point& p) { return Point{-p[1], p[0], 0}; });
  SolverConfig cfg;
  cfg.tolerance = 1e-10;
  const auto sol = solve_vector_poisson(curl(f), f, cfg);
  EXPECT_LE(sol.report.divergence_defect, 1e-6);
  // curl curl lambda = curl f = (0, 0, 2) in the interior.
  const VectorField cc = curl(curl(sol.field));
  double e = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto m = g.unravel(k);
    bool deep = true;
    for (int a = 0; a < 3; ++a) deep = deep && m[a] >= 2 && m[a] + 2 < g.count(a);
    if (!deep) continue;
    e = std::max(e, std::abs(cc.component(2)[k] - 2.0));
  }
  EXPECT_LE(e, 0.15);
}

TEST(VectorPoisson, GaugeProjection) {
  // psi vanishes on the faces, so the projection removes the divergence in
  // the interior only: O(h^2) away from the faces, uncorrected on them. A
  // second projection then changes lambda at O(h).
  std::vector<double> change, interior;
  for (std::size_t n : {9, 17, 33}) {
    const Grid g = Grid::cube(3, n, 0, 1);
    const auto lam = VectorField::sample(g, 3, [](const Point& p) {
      return Point{std::sin(pi * p[1]) * p[0], p[2] * p[2], std::cos(p[0] + p[1])};
    });
    SolverConfig cfg;
    cfg.tolerance = 1e-12;
    const auto once = project_gauge(lam, cfg);
    const auto twice = project_gauge(once.field, cfg);
    change.push_back(max_norm(twice.field - once.field) / max_norm(once.field));
    const ScalarField d = divergence(once.field);
    double m = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      const Point p = g.point(k);
      bool deep = true;
      for (int a = 0; a < 3; ++a) deep = deep && std::min(p[a], 1 - p[a]) >= 0.2;
      if (deep) m = std::max(m, std::abs(d[k]));
    }
    interior.push_back(m);
  }
  EXPECT_GT(interior[0] / interior[1], 3.0);
  EXPECT_GT(interior[1] / interior[2], 2.5);
  EXPECT_LE(change[2], 2e-3);
  EXPECT_GT(change[1] / change[2], 1.7);
  EXPECT_THROW(project_gauge(VectorField(Grid::cube(2, 5, 0, 1), 2), SolverConfig{}), InvalidInput);
}
