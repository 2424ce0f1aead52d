#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hhj/field.hpp"

namespace hhj {

/// Grid plus k component arrays, as stored in a field file.
///
/// Text format, one header line then one line per grid point (row-major,
/// axis 0 slowest) with k whitespace-separated values:
///
///   FIELD v1 dim=<d> components=<k> counts=<n1,...> lo=<...> hi=<...>
struct FieldData {
  Grid grid;
  std::vector<std::vector<double>> components;

  static FieldData from(const ScalarField& s);
  static FieldData from(const VectorField& v);
  ScalarField as_scalar() const;
  VectorField as_vector() const;
};

void write_field(std::ostream& os, const FieldData& data);
/// Throws FormatError carrying the offending line number.
FieldData read_field(std::istream& is);

void write_field_file(const std::string& path, const FieldData& data);
FieldData read_field_file(const std::string& path);

}  // namespace hhj
