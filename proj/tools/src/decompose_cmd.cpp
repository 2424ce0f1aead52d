#include <algorithm>
#include <random>

#include "common.hpp"
#include "hhj/helmholtz.hpp"
#include "hhj_cli/commands.hpp"

namespace hhj::cli {

namespace {

constexpr double kReconTol = 1e-4;
constexpr double kOrthoTol = 1e-4;
constexpr double kDivTol = 1e-3;
constexpr double kNormalTol = 1e-3;
constexpr int kProbes = 5;

VectorField builtin_field(const std::string& name, const Grid& g) {
  const int d = g.dim();
  if (name == "rotational") {
    return VectorField::sample(g, d, [](const Point& x) { return Point{-x[1], x[0], 0.0}; });
  }
  if (name == "gradient") {
    // grad(xy + yz + (x^2 - z^2)/2); harmonic, and exact for the stencils.
    return VectorField::sample(g, d, [d](const Point& x) {
      if (d == 2) return Point{x[1] + x[0], x[0], 0.0};
      return Point{x[1] + x[0], x[0] + x[2], x[1] - x[2]};
    });
  }
  throw InvalidInput("decompose: unknown --field '" + name + "' (rotational | gradient)");
}

SolverConfig solver_config(const RunConfig& cfg) {
  SolverConfig sc;
  sc.tolerance = cfg.tol;
  sc.method = cfg.solver == "sor" ? SolverMethod::successive_over_relaxation
                                  : SolverMethod::conjugate_gradient;
  return sc;
}

}  // namespace

Report cmd_decompose(const RunConfig& cfg) {
  Report rep;
  rep.command = to_string(cfg.command);
  rep.config = cfg.to_json();

  VectorField f = cfg.input.empty() ? builtin_field(cfg.field, cfg.make_grid())
                                    : read_field_file(cfg.input).as_vector();
  const Grid& g = f.grid();
  if (g.dim() < 2 || f.components() != g.dim()) {
    throw InvalidInput("decompose: field needs grid.dim() components on a 2D or 3D grid");
  }

  const Decomposition dec = decompose(f, solver_config(cfg));
  const auto& d = dec.diagnostics;

  std::mt19937_64 rng(cfg.seed);
  std::vector<ScalarField> probes;
  for (int i = 0; i < kProbes; ++i) probes.push_back(random_trig_probe(g, rng));
  const auto ortho = verify_orthogonality(dec, probes);
  const double ortho_max = *std::max_element(ortho.begin(), ortho.end());

  const double fnorm = l2_norm(f);
  const double tnorm = l2_norm(dec.t);

  rep.checks.push_back(Check::at_most("RECON", d.reconstruction_error, NAN, kReconTol,
                                      "||grad phi + t - f|| / ||f||"));
  rep.checks.push_back(Check::at_most("ORTHO", ortho_max, NAN, kOrthoTol,
                                      std::to_string(kProbes) + " seeded probes"));
  rep.checks.push_back(
      Check::at_most("DIV", d.divergence_defect, l2_norm(divergence(dec.t)), kDivTol));
  rep.checks.push_back(Check::at_most("BNORMAL", d.boundary_normal_defect, NAN, kNormalTol));
  rep.checks.push_back(Check::info("CURL", d.curl_defect, NAN, "interior max |curl t - curl f|"));
  rep.checks.push_back(Check::info("POT_RECON", d.potential_reconstruction_error, NAN,
                                   "||grad phi + curl lambda - f|| / ||f||"));
  rep.checks.push_back(Check::info("T_NORM", detail::rel(tnorm, fnorm), tnorm, "||t|| / ||f||"));

  rep.diagnostics["grid"] = detail::dims_label(g);
  rep.diagnostics["compatibility_defect"] = d.compatibility_defect;
  rep.diagnostics["orthogonality"] = ortho;
  rep.diagnostics["scalar_solve"] = {{"iterations", d.scalar_report.iterations},
                                     {"final_residual", d.scalar_report.final_residual},
                                     {"method", to_string(d.scalar_report.method)}};
  rep.diagnostics["vector_solve"] = {{"iterations", d.vector_report.iterations},
                                     {"final_residual", d.vector_report.final_residual},
                                     {"divergence_defect", d.vector_report.divergence_defect},
                                     {"boundary_defect", d.vector_report.boundary_defect}};

  detail::write_output(cfg, rep, "phi.field", FieldData::from(dec.phi));
  detail::write_output(cfg, rep, "lambda.field", FieldData::from(dec.lambda));
  detail::write_output(cfg, rep, "t.field", FieldData::from(dec.t));
  return rep;
}

}  // namespace hhj::cli
