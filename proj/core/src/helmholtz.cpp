#include "hhj/helmholtz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "hhj/operators.hpp"

namespace hhj {

ScalarField Decomposition::stream_function() const {
  if (phi.grid().dim() != 2) throw InvalidInput("stream function exists only in 2D");
  return lambda.component_field(0);
}

namespace {

// curl(lambda) as a vector with grid.dim() components (2D: psi z-hat).
VectorField solenoidal_from_potential(const VectorField& lambda) {
  const Grid& g = lambda.grid();
  if (g.dim() == 3) return curl(lambda);
  auto tx = derivative(g, lambda.component(0), 1);
  auto ty = derivative(g, lambda.component(0), 0);
  for (double& v : ty) v = -v;
  return VectorField(g, {std::move(tx), std::move(ty)});
}

double interior_max_diff(const VectorField& a, const VectorField& b) {
  const Grid& g = a.grid();
  double m = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.on_boundary(k)) continue;
    double s = 0.0;
    for (int c = 0; c < a.components(); ++c) {
      const double d = a.component(c)[k] - b.component(c)[k];
      s += d * d;
    }
    m = std::max(m, std::sqrt(s));
  }
  return m;
}

}  // namespace

Decomposition decompose(const VectorField& f, const SolverConfig& cfg) {
  cfg.validate();
  const Grid& g = f.grid();
  if (g.dim() != 2 && g.dim() != 3) throw InvalidInput("decompose: needs a 2D or 3D grid");
  if (f.components() != g.dim()) {
    throw InvalidInput("decompose: component count must equal grid dimension");
  }

  ScalarField source = divergence(f);
  const BoundaryField flux = boundary_normal_component(f);
  DecompositionDiagnostics diag;
  diag.compatibility_defect = compatibility_defect(source, flux);
  double volume = 1.0;
  for (int a = 0; a < g.dim(); ++a) volume *= g.hi(a) - g.lo(a);
  const double shift = (integral(source) - surface_integral(flux)) / volume;
  for (double& s : source.values()) s -= shift;

  auto scalar = solve_scalar_neumann(source, flux, cfg);
  diag.scalar_report = scalar.report;
  diag.scalar_report.compatibility_defect = diag.compatibility_defect;
  ScalarField phi = std::move(scalar.field);
  const VectorField grad_phi = gradient(phi);
  VectorField t = f - grad_phi;

  const VectorField curl_f = curl(f);
  auto vec = solve_vector_poisson(curl_f, t, cfg);
  diag.vector_report = vec.report;

  const double fnorm = l2_norm(f);
  const auto rel = [&](const VectorField& r) {
    const double n = l2_norm(r);
    return fnorm > 0.0 ? n / fnorm : n;
  };
  diag.reconstruction_error = rel(grad_phi + t - f);
  diag.potential_reconstruction_error =
      rel(grad_phi + solenoidal_from_potential(vec.field) - f);
  diag.divergence_defect = max_abs(divergence(t));
  diag.boundary_normal_defect = max_abs(boundary_normal_component(t));
  diag.curl_defect = interior_max_diff(curl(t), curl_f);

  return {std::move(phi), std::move(vec.field), std::move(t), std::move(diag)};
}

double best_approximation_error(const VectorField& f, const ScalarField& phi) {
  const VectorField r = gradient(phi) - f;
  return 0.5 * inner_product(r, r);
}

std::vector<double> verify_orthogonality(const Decomposition& dec,
                                         const std::vector<ScalarField>& probes) {
  std::vector<double> out;
  out.reserve(probes.size());
  for (const auto& psi : probes) {
    out.push_back(std::abs(inner_product(dec.t, gradient(psi))));
  }
  return out;
}

ScalarField random_trig_probe(const Grid& grid, std::mt19937_64& rng, int terms,
                              int max_wavenumber) {
  std::uniform_int_distribution<int> kdist(1, max_wavenumber);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  struct Term {
    double a;
    std::array<double, Grid::kMaxDim> k, ph;
  };
  std::vector<Term> ts;
  for (int j = 0; j < terms; ++j) {
    Term t{amp(rng) / terms, {0, 0, 0}, {0, 0, 0}};
    for (int d = 0; d < grid.dim(); ++d) {
      t.k[d] = kdist(rng) * std::numbers::pi / (grid.hi(d) - grid.lo(d));
      t.ph[d] = phase(rng);
    }
    ts.push_back(t);
  }
  return ScalarField::sample(grid, [&](const Point& x) {
    double s = 0.0;
    for (const Term& t : ts) {
      double p = t.a;
      for (int d = 0; d < grid.dim(); ++d) p *= std::cos(t.k[d] * (x[d] - grid.lo(d)) + t.ph[d]);
      s += p;
    }
    return s;
  });
}

TensorPotential::TensorPotential(ScalarField phi, VectorField lambda)
    : phi_(std::move(phi)), lambda_(std::move(lambda)) {
  require_same_grid(phi_.grid(), lambda_.grid(), "TensorPotential");
  const int d = phi_.grid().dim();
  if (d == 2 && lambda_.components() != 1) {
    throw InvalidInput("2D tensor potential needs a single stream component");
  }
  if (d == 3 && lambda_.components() != 3) {
    throw InvalidInput("3D tensor potential needs a three-component lambda");
  }
  if (d < 2) throw InvalidInput("tensor potential needs dimension 2 or 3");
}

ScalarField TensorPotential::antisymmetric(int i, int j) const {
  const int d = dim();
  if (i < 0 || j < 0 || i >= d || j >= d) throw InvalidInput("tensor index out of range");
  if (i == j) return ScalarField(grid());
  if (d == 2) {
    const ScalarField psi = lambda_.component_field(0);
    return i == 0 ? psi : -1.0 * psi;
  }
  // Lambda_ij = eps_ijk lambda_k.
  const int k = 3 - i - j;
  const double sign = ((j - i + 3) % 3 == 1) ? 1.0 : -1.0;
  return sign * lambda_.component_field(k);
}

ScalarField TensorPotential::component(int i, int j) const {
  ScalarField out = antisymmetric(i, j);
  if (i == j) out = out + phi_;
  return out;
}

VectorField TensorPotential::divergence() const {
  const int d = dim();
  std::vector<std::vector<double>> comps(d, std::vector<double>(grid().size(), 0.0));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const ScalarField c = component(i, j);
      const auto dc = derivative(grid(), c.values(), j);
      for (std::size_t k = 0; k < dc.size(); ++k) comps[i][k] += dc[k];
    }
  }
  return VectorField(grid(), std::move(comps));
}

TensorPotential tensor_potential(const VectorField& f, const SolverConfig& cfg) {
  if (f.grid().dim() == 1) {
    throw InvalidInput("tensor_potential: a 1D field has no antisymmetric part");
  }
  if (f.grid().dim() != 2) {
    throw InvalidInput("tensor_potential: direct construction is 2D; use decompose() in 3D");
  }
  return tensor_potential(decompose(f, cfg));
}

TensorPotential tensor_potential(const Decomposition& dec) {
  return TensorPotential(dec.phi, dec.lambda);
}

}  // namespace hhj
