#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "hhj/errors.hpp"
#include "hhj/poisson.hpp"
#include "hhj_cli/commands.hpp"

namespace hhj::cli {

Report run_command(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  Report rep;
  switch (cfg.command) {
    case Command::decompose: rep = cmd_decompose(cfg); break;
    case Command::rotor: rep = cmd_rotor(cfg); break;
    case Command::kg_check: rep = cmd_kg_check(cfg); break;
    case Command::convergence: rep = cmd_convergence(cfg); break;
  }
  rep.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

namespace {

// Raw flag values; parsed into RunConfig after CLI11 is done.
struct Flags {
  std::string grid, domain, waves;
  bool json = false;
};

void add_common(CLI::App* sub, RunConfig& cfg, Flags& fl) {
  sub->add_option("--grid", fl.grid, "Grid counts NX[,NY[,NZ]]");
  sub->add_option("--domain", fl.domain, "Box lo:hi[,lo:hi...]; one interval applies to every axis");
  sub->add_option("--tol", cfg.tol, "Solver tolerance");
  sub->add_option("--seed", cfg.seed, "Seed for random probes");
  sub->add_option("--out", cfg.out_dir, std::string("Output directory (default $") + kOutDirEnv + ")");
  sub->add_flag("--json", fl.json, "Print the JSON report instead of the summary");
}

void add_rotor(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--omega", cfg.omega, "Angular velocity");
  sub->add_option("--mass", cfg.mass, "Particle mass");
  sub->add_option("--t0", cfg.t0, "Start time");
  sub->add_option("--dt", cfg.dt, "Time step");
  sub->add_option("--steps", cfg.steps, "Number of steps");
}

void add_kg(CLI::App* sub, RunConfig& cfg, Flags& fl) {
  sub->add_option("--waves", fl.waves, "Wave components amp:k[,amp:k...]");
  sub->add_option("--c", cfg.c, "Speed of light");
  sub->add_option("--hbar", cfg.hbar, "Reduced Planck constant");
  sub->add_option("--charge", cfg.charge, "Charge");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Helmholtz / Hamilton-Jacobi / Klein-Gordon verification suite", "hhj"};
  app.require_subcommand(1);

  RunConfig cfg;
  Flags fl;

  auto* dec = app.add_subcommand("decompose", "Helmholtz decomposition of a vector field");
  add_common(dec, cfg, fl);
  dec->add_option("--input", cfg.input, "Field file to decompose");
  dec->add_option("--field", cfg.field, "Built-in field when no input: rotational | gradient");
  dec->add_option("--solver", cfg.solver, "cg | sor");

  auto* rot = app.add_subcommand("rotor", "Rotor closed forms, ensembles and vorticity");
  add_common(rot, cfg, fl);
  add_rotor(rot, cfg);

  auto* kg = app.add_subcommand("kg-check", "Klein-Gordon and Madelung residuals");
  add_common(kg, cfg, fl);
  add_kg(kg, cfg, fl);
  kg->add_option("--mass", cfg.mass, "Particle mass");

  auto* conv = app.add_subcommand("convergence", "Grid refinement study with fitted order");
  add_common(conv, cfg, fl);
  add_rotor(conv, cfg);
  conv->add_option("--waves", fl.waves, "Wave components amp:k[,amp:k...]");
  conv->add_option("--c", cfg.c, "Speed of light");
  conv->add_option("--hbar", cfg.hbar, "Reduced Planck constant");
  conv->add_option("--target", cfg.target, "laplacian | decompose | rotor | kg-check");
  conv->add_option("--levels", cfg.levels, "Refinement levels");
  conv->add_option("--field", cfg.field, "laplacian: sin | linear; decompose: rotational | gradient");
  conv->add_option("--solver", cfg.solver, "cg | sor");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitConfig;
  }

  try {
    cfg.command = parse_command(app.get_subcommands().front()->get_name());
    if (!fl.grid.empty()) cfg.grid = parse_grid(fl.grid);
    if (!fl.domain.empty()) parse_domain(fl.domain, cfg.lo, cfg.hi);
    if (!fl.waves.empty()) cfg.waves = parse_waves(fl.waves);
    cfg.resolve_defaults();

    Report rep = run_command(cfg);
    if (!cfg.out_dir.empty()) {
      std::filesystem::create_directories(cfg.out_dir);
      rep.files.push_back("report.json");
      std::ofstream os(std::filesystem::path(cfg.out_dir) / "report.json");
      os << rep.to_json().dump(2) << '\n';
      if (!os) throw Error("cannot write report.json in " + cfg.out_dir);
    }
    if (fl.json) {
      std::cout << rep.to_json().dump(2) << '\n';
    } else {
      std::cout << rep.summary();
    }
    return rep.exit_code() == 0 ? kExitPass : kExitTolerance;
  } catch (const FormatError& e) {
    std::cerr << "error: " << (cfg.input.empty() ? "input" : cfg.input) << ": " << e.what() << '\n';
    return kExitConfig;
  } catch (const ConvergenceFailure& e) {
    std::cerr << "error: solver did not converge after " << e.report().iterations
              << " iterations (residual " << e.report().final_residual << "): " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace hhj::cli
