#include "hhj_cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "hhj/errors.hpp"

namespace hhj::cli {

namespace {

nlohmann::json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

const char* kind_name(Check::Kind k) {
  switch (k) {
    case Check::Kind::at_most: return "at_most";
    case Check::Kind::at_least: return "at_least";
    case Check::Kind::ratio: return "ratio";
    case Check::Kind::info: return "info";
  }
  return "info";
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

Check Check::at_most(std::string tag, double max, double l2, double tol, std::string note) {
  Check c{std::move(tag), Kind::at_most, max, l2, tol, 0.0, false, std::move(note)};
  c.pass = std::isfinite(max) && max <= tol;
  return c;
}

Check Check::at_least(std::string tag, double value, double tol, std::string note) {
  Check c{std::move(tag), Kind::at_least, value, NAN, tol, 0.0, false, std::move(note)};
  c.pass = std::isfinite(value) && value >= tol;
  return c;
}

Check Check::ratio(std::string tag, double value, double target, double width, std::string note) {
  Check c{std::move(tag), Kind::ratio, value, NAN, target, width, false, std::move(note)};
  c.pass = std::isfinite(value) && std::abs(value - target) <= width;
  return c;
}

Check Check::info(std::string tag, double max, double l2, std::string note) {
  return Check{std::move(tag), Kind::info, max, l2, 0.0, 0.0, true, std::move(note)};
}

ConvergenceTable make_table(std::string quantity, std::vector<double> h,
                            std::vector<double> error, double floor, double expected_order) {
  if (h.size() != error.size() || h.size() < 2) {
    throw InvalidInput("convergence table needs at least two (h, error) pairs");
  }
  ConvergenceTable t;
  t.quantity = std::move(quantity);
  t.expected_order = expected_order;
  t.saturated = true;
  for (double e : error) {
    if (!(e <= floor)) t.saturated = false;
  }
  if (!t.saturated) {
    // Least-squares slope of log e against log h.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(h.size());
    bool ok = true;
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (!(h[i] > 0.0) || !(error[i] > 0.0)) ok = false;
      const double x = std::log(h[i]), y = std::log(error[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double den = n * sxx - sx * sx;
    if (ok && den > 0.0) t.order = (n * sxy - sx * sy) / den;
  }
  t.h = std::move(h);
  t.error = std::move(error);
  return t;
}

bool Report::passed() const {
  for (const auto& c : checks) {
    if (c.enforced() && !c.pass) return false;
  }
  return true;
}

nlohmann::json Report::to_json(bool include_timing) const {
  nlohmann::json j;
  j["command"] = command;
  j["config"] = config;
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json e;
    e["tag"] = c.tag;
    e["kind"] = kind_name(c.kind);
    e["max"] = number(c.max);
    e["l2"] = number(c.l2);
    if (c.enforced()) e["tolerance"] = c.tolerance;
    if (c.kind == Check::Kind::ratio) e["width"] = c.width;
    e["pass"] = c.pass;
    if (!c.note.empty()) e["note"] = c.note;
    cs.push_back(std::move(e));
  }
  j["checks"] = std::move(cs);
  nlohmann::json ts = nlohmann::json::array();
  for (const auto& t : tables) {
    nlohmann::json e;
    e["quantity"] = t.quantity;
    e["h"] = t.h;
    nlohmann::json err = nlohmann::json::array();
    for (double v : t.error) err.push_back(number(v));
    e["error"] = std::move(err);
    e["order"] = t.order ? number(*t.order) : nlohmann::json(nullptr);
    e["saturated"] = t.saturated;
    e["expected_order"] = t.expected_order;
    ts.push_back(std::move(e));
  }
  j["tables"] = std::move(ts);
  j["diagnostics"] = diagnostics;
  j["warnings"] = warnings;
  j["files"] = files;
  j["pass"] = passed();
  if (include_timing) j["wall_time_s"] = wall_time;
  return j;
}

std::string Report::summary() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.enforced() ? (c.pass ? "PASS " : "FAIL ") : "INFO ") << c.tag << "  ";
    switch (c.kind) {
      case Check::Kind::at_most: os << fmt(c.max) << " <= " << fmt(c.tolerance); break;
      case Check::Kind::at_least: os << fmt(c.max) << " >= " << fmt(c.tolerance); break;
      case Check::Kind::ratio:
        os << fmt(c.max) << " in " << fmt(c.tolerance) << " +- " << fmt(c.width);
        break;
      case Check::Kind::info: os << fmt(c.max); break;
    }
    if (!c.note.empty()) os << "  (" << c.note << ")";
    os << '\n';
  }
  for (const auto& t : tables) {
    os << "table " << t.quantity << ":";
    for (std::size_t i = 0; i < t.h.size(); ++i) os << "  h=" << fmt(t.h[i]) << " e=" << fmt(t.error[i]);
    if (t.saturated) os << "  order: saturated";
    else if (t.order) os << "  order " << fmt(*t.order);
    os << '\n';
  }
  for (const auto& w : warnings) os << "warning: " << w << '\n';
  os << (passed() ? "result: pass" : "result: FAIL") << '\n';
  return os.str();
}

}  // namespace hhj::cli
