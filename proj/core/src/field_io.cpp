#include "hhj/field_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>

#include "hhj/errors.hpp"

namespace hhj {

FieldData FieldData::from(const ScalarField& s) {
  return {s.grid(), {std::vector<double>(s.values().begin(), s.values().end())}};
}

FieldData FieldData::from(const VectorField& v) {
  FieldData d{v.grid(), {}};
  for (int c = 0; c < v.components(); ++c) {
    d.components.emplace_back(v.component(c).begin(), v.component(c).end());
  }
  return d;
}

ScalarField FieldData::as_scalar() const {
  if (components.size() != 1) {
    throw InvalidInput("expected a scalar field, file has " +
                       std::to_string(components.size()) + " components");
  }
  return ScalarField(grid, components[0]);
}

VectorField FieldData::as_vector() const { return VectorField(grid, components); }

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T>
std::string join(const std::vector<T>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    if constexpr (std::is_floating_point_v<T>) {
      out += format_double(xs[i]);
    } else {
      out += std::to_string(xs[i]);
    }
  }
  return out;
}

double parse_double(std::string_view tok, std::size_t line) {
  // strtod accepts the full %.17g output including exponents.
  std::string s(tok);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw FormatError(line, "malformed number '" + s + "'");
  }
  if (!std::isfinite(v)) throw FormatError(line, "non-finite value '" + s + "'");
  return v;
}

template <class T>
std::vector<T> parse_list(const std::string& s, std::size_t line) {
  std::vector<T> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = s.find(',', start);
    const std::string tok =
        s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if constexpr (std::is_floating_point_v<T>) {
      out.push_back(parse_double(tok, line));
    } else {
      T v{};
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || p != tok.data() + tok.size()) {
        throw FormatError(line, "malformed integer '" + tok + "'");
      }
      out.push_back(v);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

void write_field(std::ostream& os, const FieldData& data) {
  const Grid& g = data.grid;
  os << "FIELD v1 dim=" << g.dim() << " components=" << data.components.size()
     << " counts=" << join(g.counts()) << " lo=" << join(g.lows())
     << " hi=" << join(g.highs()) << '\n';
  for (std::size_t k = 0; k < g.size(); ++k) {
    for (std::size_t c = 0; c < data.components.size(); ++c) {
      if (c) os << ' ';
      os << format_double(data.components[c][k]);
    }
    os << '\n';
  }
}

FieldData read_field(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw FormatError(1, "missing header");
  std::istringstream hs(header);
  std::string magic, version;
  hs >> magic >> version;
  if (magic != "FIELD") throw FormatError(1, "expected 'FIELD' magic");
  if (version != "v1") throw FormatError(1, "unsupported version '" + version + "'");

  std::map<std::string, std::string> kv;
  std::string tok;
  while (hs >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw FormatError(1, "bad header token '" + tok + "'");
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  for (const char* key : {"dim", "components", "counts", "lo", "hi"}) {
    if (!kv.count(key)) throw FormatError(1, std::string("missing header key '") + key + "'");
  }
  const auto dim = parse_list<int>(kv["dim"], 1);
  const auto ncomp = parse_list<int>(kv["components"], 1);
  const auto counts = parse_list<std::size_t>(kv["counts"], 1);
  const auto lo = parse_list<double>(kv["lo"], 1);
  const auto hi = parse_list<double>(kv["hi"], 1);
  if (dim.size() != 1 || ncomp.size() != 1 || ncomp[0] < 1) {
    throw FormatError(1, "bad dim/components");
  }
  if (counts.size() != static_cast<std::size_t>(dim[0])) {
    throw FormatError(1, "counts do not match dim");
  }
  FieldData data{[&] {
                   try {
                     return Grid(counts, lo, hi);
                   } catch (const InvalidInput& e) {
                     throw FormatError(1, e.what());
                   }
                 }(),
                 {}};
  const std::size_t n = data.grid.size();
  data.components.assign(ncomp[0], std::vector<double>(n));

  std::string line;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t lineno = k + 2;
    if (!std::getline(is, line)) throw FormatError(lineno, "unexpected end of file");
    std::istringstream ls(line);
    for (int c = 0; c < ncomp[0]; ++c) {
      if (!(ls >> tok)) throw FormatError(lineno, "too few values");
      data.components[c][k] = parse_double(tok, lineno);
    }
    if (ls >> tok) throw FormatError(lineno, "too many values");
  }
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      throw FormatError(n + 2, "trailing data after last grid point");
    }
  }
  return data;
}

void write_field_file(const std::string& path, const FieldData& data) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  write_field(os, data);
  if (!os) throw Error("write to '" + path + "' failed");
}

FieldData read_field_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw FormatError(0, "cannot open '" + path + "'");
  return read_field(is);
}

}  // namespace hhj
