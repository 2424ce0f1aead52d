#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hhj/grid.hpp"
#include "hhj/klein_gordon.hpp"
#include "json.hpp"

namespace hhj::cli {

enum class Command { decompose, rotor, kg_check, convergence };

std::string to_string(Command c);
Command parse_command(const std::string& s);

/// Everything one invocation needs. Empty grid/domain/waves select the
/// per-command defaults in resolve_defaults().
struct RunConfig {
  Command command = Command::rotor;
  std::vector<std::size_t> grid;
  std::vector<double> lo, hi;
  double omega = 1.0;
  double mass = 1.0;
  double t0 = 0.0;
  double dt = 0.01;
  int steps = 200;
  double tol = 1e-8;
  std::uint64_t seed = 42;
  std::string out_dir;
  std::vector<WaveComponent> waves;
  double c = 1.0;
  double hbar = 1.0;
  double charge = 0.0;
  /// decompose: field file to read; empty means generate `field`.
  std::string input;
  /// Built-in test field: rotational | gradient (decompose),
  /// sin | linear (laplacian convergence).
  std::string field = "rotational";
  /// convergence: laplacian | decompose | rotor | kg-check.
  std::string target = "laplacian";
  int levels = 3;
  std::string solver = "cg";

  /// Fill unset grid/domain/waves/out_dir for the command, then validate.
  void resolve_defaults();
  void validate() const;
  Grid make_grid() const;
  PhysicalConstants constants() const;
  nlohmann::json to_json() const;
};

/// "NX[,NY[,NZ]]".
std::vector<std::size_t> parse_grid(const std::string& s);
/// "lo:hi[,lo:hi...]".
void parse_domain(const std::string& s, std::vector<double>& lo, std::vector<double>& hi);
/// "amp:k[,amp:k...]".
std::vector<WaveComponent> parse_waves(const std::string& s);

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "HHJ_OUT_DIR";

}  // namespace hhj::cli
