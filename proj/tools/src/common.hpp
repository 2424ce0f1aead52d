#pragma once

#include <cmath>
#include <filesystem>
#include <string>

#include "hhj/field.hpp"
#include "hhj/field_io.hpp"
#include "hhj/operators.hpp"
#include "hhj_cli/config.hpp"
#include "hhj_cli/report.hpp"

namespace hhj::cli::detail {

/// Full path for an output file, or empty when the run writes nothing.
/// Registers the bare name in the report.
inline std::string output_path(const RunConfig& cfg, Report& rep, const std::string& name) {
  if (cfg.out_dir.empty()) return {};
  std::filesystem::create_directories(cfg.out_dir);
  rep.files.push_back(name);
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

inline void write_output(const RunConfig& cfg, Report& rep, const std::string& name,
                         const FieldData& data) {
  const std::string path = output_path(cfg, rep, name);
  if (!path.empty()) write_field_file(path, data);
}

inline double rel(double err, double scale) { return scale > 0.0 ? err / scale : err; }

inline std::string dims_label(const Grid& g) {
  std::string s;
  for (int a = 0; a < g.dim(); ++a) s += (a ? "x" : "") + std::to_string(g.count(a));
  return s;
}

}  // namespace hhj::cli::detail
