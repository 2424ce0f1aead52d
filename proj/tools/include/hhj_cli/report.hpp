#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace hhj::cli {

/// One named residual or identity with its declared tolerance.
struct Check {
  enum class Kind { at_most, at_least, ratio, info };

  std::string tag;
  Kind kind = Kind::info;
  double max = 0.0;
  /// L2 norm where one exists; NaN otherwise (serialized as null).
  double l2 = 0.0;
  double tolerance = 0.0;
  /// Ratio checks: accepted interval [tolerance - width, tolerance + width].
  double width = 0.0;
  bool pass = true;
  std::string note;

  static Check at_most(std::string tag, double max, double l2, double tol, std::string note = {});
  static Check at_least(std::string tag, double value, double tol, std::string note = {});
  static Check ratio(std::string tag, double value, double target, double width,
                     std::string note = {});
  static Check info(std::string tag, double max, double l2, std::string note = {});
  bool enforced() const { return kind != Kind::info; }
};

struct ConvergenceTable {
  std::string quantity;
  std::vector<double> h;
  std::vector<double> error;
  /// Least-squares slope of log(error) against log(h); empty when saturated.
  std::optional<double> order;
  bool saturated = false;
  double expected_order = 2.0;
};

/// Fit the observed order; errors all at or below `floor` mark the table
/// saturated.
ConvergenceTable make_table(std::string quantity, std::vector<double> h,
                            std::vector<double> error, double floor,
                            double expected_order = 2.0);

struct Report {
  std::string command;
  nlohmann::json config;
  std::vector<Check> checks;
  std::vector<ConvergenceTable> tables;
  nlohmann::json diagnostics = nlohmann::json::object();
  std::vector<std::string> warnings;
  std::vector<std::string> files;
  double wall_time = 0.0;

  bool passed() const;
  /// 0 when every enforced check passes, 1 otherwise.
  int exit_code() const { return passed() ? 0 : 1; }
  nlohmann::json to_json(bool include_timing = true) const;
  /// One line per check, then warnings.
  std::string summary() const;
};

}  // namespace hhj::cli
