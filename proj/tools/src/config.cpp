#include "hhj_cli/config.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "hhj/errors.hpp"

namespace hhj::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string tok;
  std::istringstream is(s);
  while (std::getline(is, tok, sep)) out.push_back(tok);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double to_double(const std::string& s, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw InvalidInput("bad number '" + s + "' in " + what);
  }
  return v;
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::decompose: return "decompose";
    case Command::rotor: return "rotor";
    case Command::kg_check: return "kg-check";
    case Command::convergence: return "convergence";
  }
  return "?";
}

Command parse_command(const std::string& s) {
  if (s == "decompose") return Command::decompose;
  if (s == "rotor") return Command::rotor;
  if (s == "kg-check") return Command::kg_check;
  if (s == "convergence") return Command::convergence;
  throw InvalidInput("unknown command '" + s + "'");
}

std::vector<std::size_t> parse_grid(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.empty() || parts.size() > 3) throw InvalidInput("--grid takes 1 to 3 counts");
  std::vector<std::size_t> out;
  for (const auto& p : parts) {
    const double v = to_double(p, "--grid");
    if (v < 3 || v != std::floor(v)) throw InvalidInput("--grid counts must be integers >= 3");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

void parse_domain(const std::string& s, std::vector<double>& lo, std::vector<double>& hi) {
  lo.clear();
  hi.clear();
  for (const auto& p : split(s, ',')) {
    const auto ends = split(p, ':');
    if (ends.size() != 2) throw InvalidInput("--domain entries look like lo:hi, got '" + p + "'");
    lo.push_back(to_double(ends[0], "--domain"));
    hi.push_back(to_double(ends[1], "--domain"));
  }
  if (lo.empty() || lo.size() > 3) throw InvalidInput("--domain takes 1 to 3 intervals");
}

std::vector<WaveComponent> parse_waves(const std::string& s) {
  std::vector<WaveComponent> out;
  for (const auto& p : split(s, ',')) {
    const auto f = split(p, ':');
    if (f.size() != 2) throw InvalidInput("--waves entries look like amp:k, got '" + p + "'");
    out.push_back({to_double(f[0], "--waves"), to_double(f[1], "--waves")});
  }
  if (out.empty()) throw InvalidInput("--waves needs at least one component");
  return out;
}

void RunConfig::resolve_defaults() {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  Command kind = command;
  if (command == Command::convergence) {
    if (target == "decompose") kind = Command::decompose;
    else if (target == "rotor") kind = Command::rotor;
    else if (target == "kg-check") kind = Command::kg_check;
    // The decompose default field has no meaning for the Laplacian target.
    if (target == "laplacian" && field == "rotational") field = "sin";
  }
  if (grid.empty()) {
    switch (kind) {
      case Command::decompose: grid = {17, 17, 17}; break;
      case Command::rotor: grid = {33, 33}; break;
      case Command::kg_check: grid = {129, 129}; break;
      case Command::convergence: grid = {17, 17}; break;
    }
  }
  if (lo.empty()) {
    switch (kind) {
      case Command::decompose: lo = {-0.5}; hi = {0.5}; break;
      case Command::rotor: lo = {-1.0}; hi = {1.0}; break;
      case Command::kg_check: lo = {0.0}; hi = {two_pi}; break;
      case Command::convergence: lo = {0.0}; hi = {1.0}; break;
    }
  }
  if (lo.size() == 1 && grid.size() > 1) {
    lo.assign(grid.size(), lo[0]);
    hi.assign(grid.size(), hi[0]);
  }
  if (waves.empty()) waves = {{1.0, 1.0}};
  if (out_dir.empty()) {
    if (const char* env = std::getenv(kOutDirEnv); env && *env) out_dir = env;
  }
  validate();
}

void RunConfig::validate() const {
  if (lo.size() != grid.size() || hi.size() != grid.size()) {
    throw InvalidInput("--domain needs one interval per grid axis (or a single one)");
  }
  for (double v : {omega, mass, t0, dt, tol, c, hbar, charge}) {
    if (!std::isfinite(v)) throw InvalidInput("scenario parameters must be finite");
  }
  if (!(mass > 0.0)) throw InvalidInput("--mass must be positive");
  if (!(dt > 0.0)) throw InvalidInput("--dt must be positive");
  if (steps < 1) throw InvalidInput("--steps must be at least 1");
  if (!(tol > 0.0) || tol >= 1.0) throw InvalidInput("--tol must be in (0, 1)");
  if (!(c > 0.0) || !(hbar > 0.0)) throw InvalidInput("--c and --hbar must be positive");
  if (solver != "cg" && solver != "sor") throw InvalidInput("--solver is cg or sor");
  if (command == Command::convergence) {
    if (levels < 2) throw InvalidInput("convergence needs at least 2 refinement levels");
    if (levels > 6) throw InvalidInput("convergence supports at most 6 refinement levels");
    if (target != "laplacian" && target != "decompose" && target != "rotor" &&
        target != "kg-check") {
      throw InvalidInput("unknown convergence target '" + target + "'");
    }
  }
  const bool needs_2d = command == Command::rotor || command == Command::kg_check ||
                        (command == Command::convergence && (target == "rotor" || target == "kg-check"));
  if (command == Command::kg_check || (command == Command::convergence && target == "kg-check")) {
    if (grid.size() != 2) throw InvalidInput("kg-check needs a 2D (t, x) grid");
  } else if (needs_2d && grid.size() < 2) {
    throw InvalidInput("rotor needs a 2D or 3D grid");
  }
  if (command == Command::decompose && input.empty() && grid.size() < 2) {
    throw InvalidInput("decompose needs a 2D or 3D grid");
  }
  make_grid();
}

Grid RunConfig::make_grid() const { return Grid(grid, lo, hi); }

PhysicalConstants RunConfig::constants() const {
  PhysicalConstants pc{mass, c, charge, hbar};
  pc.validate();
  return pc;
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["command"] = to_string(command);
  j["grid"] = grid;
  j["lo"] = lo;
  j["hi"] = hi;
  j["omega"] = omega;
  j["mass"] = mass;
  j["t0"] = t0;
  j["dt"] = dt;
  j["steps"] = steps;
  j["tol"] = tol;
  j["seed"] = seed;
  j["c"] = c;
  j["hbar"] = hbar;
  j["charge"] = charge;
  j["solver"] = solver;
  nlohmann::json w = nlohmann::json::array();
  for (const auto& c : waves) w.push_back({{"amplitude", c.amplitude.real()}, {"k", c.wavenumber}});
  j["waves"] = w;
  j["input"] = input;
  j["field"] = field;
  if (command == Command::convergence) {
    j["target"] = target;
    j["levels"] = levels;
  }
  return j;
}

}  // namespace hhj::cli
