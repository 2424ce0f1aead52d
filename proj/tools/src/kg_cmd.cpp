#include <cmath>

#include "common.hpp"
#include "hhj/klein_gordon.hpp"
#include "hhj/madelung.hpp"
#include "hhj_cli/commands.hpp"

namespace hhj::cli {

namespace {

constexpr double kExactTol = 1e-10;
constexpr double kNormTol = 1e-12;
constexpr double kRatioTarget = 4.0;
constexpr double kRatioWidth = 0.5;

struct KGLevel {
  double kg = 0.0, cont = 0.0, qhj = 0.0;
  double mask_fraction = 0.0;
};

KGLevel measure(const RunConfig& cfg, const Grid& g, const PhysicalConstants& pc) {
  const ComplexField psi = make_superposition(cfg.waves, pc, g);
  const MadelungState st = madelung(psi, pc);
  return {masked_max(kg_residual(psi, pc), st.mask), masked_max(continuity_residual(st, pc), st.mask),
          masked_max(quantum_hj_residual(st, pc), st.mask), masked_fraction(st.mask)};
}

double ratio(double coarse, double fine) { return fine > 0.0 ? coarse / fine : NAN; }

}  // namespace

Report cmd_kg_check(const RunConfig& cfg) {
  Report rep;
  rep.command = to_string(cfg.command);
  rep.config = cfg.to_json();

  const PhysicalConstants pc = cfg.constants();
  const Grid g = cfg.make_grid();
  const ComplexField psi = make_superposition(cfg.waves, pc, g);
  MadelungState st = madelung(psi, pc);
  solve_omega(st, pc);

  const ScalarField kg = kg_residual(psi, pc);
  const ScalarField cont = continuity_residual(st, pc);
  const ScalarField qhj = quantum_hj_residual(st, pc);
  const double kg_max = masked_max(kg, st.mask);
  const double cont_max = masked_max(cont, st.mask);
  const double qhj_max = masked_max(qhj, st.mask);
  const double omega_max = masked_max(st.omega, st.omega_mask);

  if (cfg.waves.size() == 1) {
    rep.checks.push_back(Check::at_most("KG", kg_max, l2_norm(kg), kExactTol, "polar stencil"));
    rep.checks.push_back(Check::at_most("CONT", cont_max, l2_norm(cont), kExactTol));
    rep.checks.push_back(Check::at_most("QHJ", qhj_max, l2_norm(qhj), kExactTol));
    rep.checks.push_back(Check::at_most("OMEGA", omega_max, l2_norm(st.omega), kExactTol));
  } else {
    const KGLevel fine = measure(cfg, g.refined(), pc);
    rep.checks.push_back(Check::info("KG", kg_max, NAN, "unmasked points"));
    rep.checks.push_back(Check::info("CONT", cont_max, NAN, "unmasked points"));
    rep.checks.push_back(Check::info("QHJ", qhj_max, NAN, "unmasked points"));
    rep.checks.push_back(Check::info("OMEGA", omega_max, NAN, "unmasked points"));
    rep.checks.push_back(Check::ratio("KG_RATIO", ratio(kg_max, fine.kg), kRatioTarget, kRatioWidth,
                                      "two-grid ratio against the refined grid"));
    rep.checks.push_back(Check::ratio("CONT_RATIO", ratio(cont_max, fine.cont), kRatioTarget,
                                      kRatioWidth));
    rep.checks.push_back(Check::ratio("QHJ_RATIO", ratio(qhj_max, fine.qhj), kRatioTarget,
                                      kRatioWidth));
    const double h = g.max_spacing();
    rep.tables.push_back(make_table("KG", {h, h / 2}, {kg_max, fine.kg}, 0.0));
    rep.tables.push_back(make_table("CONT", {h, h / 2}, {cont_max, fine.cont}, 0.0));
    rep.tables.push_back(make_table("QHJ", {h, h / 2}, {qhj_max, fine.qhj}, 0.0));
    rep.diagnostics["refined_mask_fraction"] = fine.mask_fraction;
  }

  rep.checks.push_back(Check::at_most("NORM", masked_max(normalization_residual(st, pc), st.omega_mask),
                                      NAN, kNormTol, "(k + omega)^2 = m^2 c^2 after solve_omega"));
  const ScalarField create = creation_rate(st, pc);
  rep.checks.push_back(Check::info("VORT", masked_max(vorticity_orthogonality_residual(st, pc), st.omega_mask), NAN));
  rep.checks.push_back(Check::info("DIV", masked_max(omega_divergence(st, pc), st.omega_mask), NAN,
                                   "d_mu omega^mu, diagnostic"));
  rep.checks.push_back(Check::info("CREATE", masked_max(create, st.omega_mask), NAN));
  rep.checks.push_back(Check::info("CREATE_INTEGRAL", std::abs(integral(create)), NAN,
                                   "integral of d_mu(rho omega^mu) over the grid"));
  rep.checks.push_back(Check::info("FOURVEL", masked_max(four_velocity_identity_residual(st, pc), st.omega_mask), NAN));
  rep.checks.push_back(Check::info("KG_CARTESIAN", max_abs(kg_residual(psi, pc, KGStencil::cartesian)), NAN,
                                   "second differences of re, im"));

  rep.diagnostics["grid"] = detail::dims_label(g);
  rep.diagnostics["mask_fraction"] = masked_fraction(st.mask);
  rep.diagnostics["omega_mask_fraction"] = masked_fraction(st.omega_mask);
  rep.diagnostics["node_fraction"] = masked_fraction(st.nodes);
  nlohmann::json freqs = nlohmann::json::array();
  for (const auto& w : cfg.waves) freqs.push_back(plane_wave_frequency(w.wavenumber, pc));
  rep.diagnostics["frequencies"] = freqs;

  detail::write_output(cfg, rep, "psi.field", to_field_data(psi));
  FieldData md{g, {}};
  md.components = {std::vector<double>(st.rho.values().begin(), st.rho.values().end()),
                   std::vector<double>(st.S.values().begin(), st.S.values().end())};
  for (const VectorField* v : {&st.k, &st.omega}) {
    for (int c = 0; c < 2; ++c) {
      md.components.emplace_back(v->component(c).begin(), v->component(c).end());
    }
  }
  detail::write_output(cfg, rep, "madelung.field", md);
  detail::write_output(cfg, rep, "kg_residual.field", FieldData::from(kg));
  return rep;
}

}  // namespace hhj::cli
