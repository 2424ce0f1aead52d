#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hhj/errors.hpp"
#include "hhj/helmholtz.hpp"
#include "hhj/operators.hpp"
#include "hhj/rotor.hpp"

using namespace hhj;

namespace {

VectorField rotational(const Grid& g) {
  return VectorField::sample(g, g.dim(), [](const Point& p) { return Point{-p[1], p[0], 0}; });
}

SolverConfig tight() {
  SolverConfig c;
  c.tolerance = 1e-10;
  return c;
}

// Max over points farther than `band` from every edge where two faces meet
// (in 2D the corners).
double away_from_edges(const ScalarField& s, double band) {
  const Grid& g = s.grid();
  double m = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Point p = g.point(k);
    int near = 0;
    for (int a = 0; a < std::min(g.dim(), 2); ++a) {
      near += std::min(p[a] - g.lo(a), g.hi(a) - p[a]) < band;
    }
    if (near < 2) m = std::max(m, std::abs(s[k]));
  }
  return m;
}

}  // namespace

TEST(Decompose, PureGradientHasNoSolenoidalPart) {
  const Grid g = Grid::cube(2, 17, 0, 1);
  const auto f = VectorField::sample(g, 2, [](const Point& p) { return Point{2 * p[0], 2 * p[1], 0}; });
  const Decomposition d = decompose(f, tight());
  EXPECT_LE(max_norm(d.t), 1e-6);
  const auto exact = ScalarField::sample(g, [](const Point& p) { return p[0] * p[0] + p[1] * p[1]; });
  const double shift = integral(exact);
  double e = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) e = std::max(e, std::abs(d.phi[k] - (exact[k] - shift)));
  EXPECT_LE(e, 1e-3);
  EXPECT_LE(best_approximation_error(f, d.phi), 1e-10);
}

TEST(Decompose, RejectsBadInput) {
  EXPECT_THROW(decompose(VectorField(Grid::cube(1, 5, 0, 1), 1), SolverConfig{}), InvalidInput);
  EXPECT_THROW(decompose(VectorField(Grid::cube(3, 5, 0, 1), 2), SolverConfig{}), InvalidInput);
}

TEST(Decompose, RotationalFieldInvariants) {
  const Grid g = Grid::cube(3, 17, -0.5, 0.5);
  const Decomposition d = decompose(rotational(g), tight());
  const auto& diag = d.diagnostics;
  EXPECT_LE(diag.reconstruction_error, 1e-12);
  EXPECT_LE(diag.curl_defect, 1e-12);
  EXPECT_LE(diag.compatibility_defect, 1e-14);
  EXPECT_TRUE(diag.scalar_report.converged);
  EXPECT_TRUE(diag.vector_report.converged);
  // curl t = (0, 0, 2) everywhere off the boundary.
  const VectorField c = curl(d.t);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!g.on_boundary(k)) EXPECT_NEAR(c.component(2)[k], 2.0, 1e-10);
  }
}

TEST(Decompose, SolenoidalDefectsConvergeAwayFromEdges) {
  std::vector<double> div, normal;
  for (std::size_t n : {33, 65}) {
    const Grid g = Grid::cube(2, n, -0.5, 0.5);
    const Decomposition d = decompose(rotational(g), tight());
    div.push_back(away_from_edges(divergence(d.t), 0.2));
    const BoundaryField bn = boundary_normal_component(d.t);
    double m = 0.0;
    for (std::size_t i = 0; i < bn.size(); ++i) {
      const Point p = g.point(bn.points()[i].index);
      const int other = 1 - bn.points()[i].axis;
      if (std::min(p[other] - g.lo(other), g.hi(other) - p[other]) >= 0.2) m = std::max(m, std::abs(bn.values()[i]));
    }
    normal.push_back(m);
  }
  EXPECT_GT(div[0] / div[1], 3.0);
  EXPECT_GT(normal[0] / normal[1], 3.0);
}

TEST(Decompose, RotorMomentumMatchesClosedFormCurl) {
  const RotorScenario sc;
  const Grid g = Grid::cube(3, 13, -1, 1);
  const VectorField p = momentum_on_grid(1.0, sc, g);
  const Decomposition d = decompose(p, tight());
  // t and -A differ by a gradient, so their curls agree: curl(-A) = (0, 0, 1).
  const RotorFields cf = closed_form_fields(1.0, sc, g);
  const VectorField diff = curl(d.t + cf.A);
  double e = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!g.on_boundary(k)) e = std::max(e, std::abs(diff.component(2)[k]));
  }
  EXPECT_LE(e, 1e-10);
}

TEST(BestApproximation, ComputedPhiIsMinimal) {
  const Grid g = Grid::cube(3, 13, -0.5, 0.5);
  const VectorField f = rotational(g);
  const Decomposition d = decompose(f, tight());
  const double base = best_approximation_error(f, d.phi);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const ScalarField psi = random_trig_probe(g, rng);
    for (double eps : {1e-2, -1e-2}) {
      EXPECT_LT(base, best_approximation_error(f, d.phi + eps * psi)) << trial << " " << eps;
    }
  }
  EXPECT_EQ(best_approximation_error(VectorField(g, 3), ScalarField(g)), 0.0);
}

TEST(Orthogonality, ConstantProbeAndZeroField) {
  const Grid g = Grid::cube(3, 9, 0, 1);
  const Decomposition d = decompose(rotational(g), tight());
  const auto c = ScalarField::sample(g, [](const Point&) { return 4.0; });
  EXPECT_EQ(verify_orthogonality(d, {c})[0], 0.0);
  const auto grad = VectorField::sample(g, 3, [](const Point& p) { return Point{p[1], p[0], 1}; });
  const Decomposition z = decompose(grad, tight());
  std::mt19937_64 rng(3);
  for (double o : verify_orthogonality(z, {random_trig_probe(g, rng), random_trig_probe(g, rng)})) {
    EXPECT_LE(o, 1e-8);
  }
}

TEST(Orthogonality, ProbesAreSeeded) {
  const Grid g = Grid::cube(2, 9, 0, 1);
  std::mt19937_64 a(5), b(5);
  EXPECT_EQ(max_abs(random_trig_probe(g, a) - random_trig_probe(g, b)), 0.0);
}

TEST(TensorPotential, GradientFieldIsDiagonal) {
  // Off-diagonal part and reconstruction error vanish at second order.
  std::vector<double> anti, recon;
  for (std::size_t n : {17, 33}) {
    const Grid g = Grid::cube(2, n, 0, 1);
    const auto f = VectorField::sample(g, 2, [](const Point& p) {
      return Point{std::cos(p[0]) * p[1], std::sin(p[0]) + 2 * p[1], 0};
    });
    const TensorPotential tp = tensor_potential(f, tight());
    anti.push_back(max_abs(tp.antisymmetric(0, 1)));
    recon.push_back(max_norm(tp.divergence() - f));
    EXPECT_EQ(max_abs(tp.component(0, 0) - tp.phi()), 0.0);
  }
  EXPECT_LE(recon[1], 1e-3);
  EXPECT_NEAR(anti[0] / anti[1], 4.0, 0.5);
  EXPECT_NEAR(recon[0] / recon[1], 4.0, 0.5);
}

TEST(TensorPotential, RotationalStreamFunction) {
  const Grid g = Grid::cube(2, 33, -0.5, 0.5);
  const TensorPotential tp = tensor_potential(rotational(g), tight());
  const ScalarField l = laplacian(tp.antisymmetric(0, 1));
  // lap(Lambda_01) = -curl f = -2 away from the boundary.
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!g.on_boundary(k)) EXPECT_NEAR(l[k], -2.0, 1e-6);
  }
  EXPECT_LE(max_abs(tp.antisymmetric(0, 1) + tp.antisymmetric(1, 0)), 0.0);
  // Reconstruction converges away from the corners.
  const VectorField r = tp.divergence() - rotational(g);
  ScalarField rn(g);
  for (std::size_t k = 0; k < g.size(); ++k) rn[k] = std::hypot(r.component(0)[k], r.component(1)[k]);
  EXPECT_LE(away_from_edges(rn, 0.2), 1e-2);
}

TEST(TensorPotential, ThreeDimensionalAntisymmetry) {
  const Grid g = Grid::cube(3, 9, -0.5, 0.5);
  const Decomposition d = decompose(rotational(g), tight());
  const TensorPotential tp = tensor_potential(d);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      EXPECT_EQ(max_abs(tp.antisymmetric(i, j) + tp.antisymmetric(j, i)), 0.0);
    }
  }
  EXPECT_EQ(max_abs(tp.antisymmetric(0, 1) - d.lambda.component_field(2)), 0.0);
  EXPECT_THROW(tensor_potential(VectorField(Grid::cube(1, 5, 0, 1), 1), SolverConfig{}), InvalidInput);
  EXPECT_THROW(tp.antisymmetric(0, 3), InvalidInput);
}
