#include "maxvar/grid.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "maxvar/error.hpp"

namespace maxvar {

void GridSpec::validate() const {
  if (count < 1) throw ParameterError("grid needs at least one point");
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo > 0.0) || hi < lo) {
    throw ParameterError("grid needs 0 < lo <= hi");
  }
  if (count > 1 && !(hi > lo)) throw ParameterError("grid with several points needs lo < hi");
}

std::vector<double> GridSpec::points() const {
  validate();
  std::vector<double> s(static_cast<std::size_t>(count));
  if (count == 1) {
    s[0] = lo;
    return s;
  }
  for (int i = 0; i < count; ++i) {
    const double w = static_cast<double>(i) / (count - 1);
    s[i] = log ? lo * std::pow(hi / lo, w) : lo + w * (hi - lo);
  }
  s.back() = hi;
  return s;
}

GridSpec GridSpec::refined() const { return {lo, hi, 2 * count - 1, log}; }

GridSpec GridSpec::scaled(double factor) const { return {lo * factor, hi * factor, count, log}; }

std::string GridSpec::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << lo << ':' << hi << ':' << count << ':' << (log ? "log" : "lin");
  return os.str();
}

GridSpec GridSpec::parse(std::string_view text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  if (parts.size() != 4) throw ParameterError("grid must look like lo:hi:count:log|lin");
  GridSpec g;
  try {
    std::size_t pos = 0;
    g.lo = std::stod(parts[0], &pos);
    if (pos != parts[0].size()) throw ParameterError("bad grid lower bound");
    g.hi = std::stod(parts[1], &pos);
    if (pos != parts[1].size()) throw ParameterError("bad grid upper bound");
    g.count = std::stoi(parts[2], &pos);
    if (pos != parts[2].size()) throw ParameterError("bad grid count");
  } catch (const std::logic_error&) {
    throw ParameterError("grid must look like lo:hi:count:log|lin");
  }
  if (parts[3] == "log") {
    g.log = true;
  } else if (parts[3] == "lin") {
    g.log = false;
  } else {
    throw ParameterError("grid spacing must be 'log' or 'lin'");
  }
  g.validate();
  return g;
}

GridSpec GridSpec::standard(double support_radius, int count) {
  return {1e-2 * support_radius, 8.0 * support_radius, count, true};
}

}  // namespace maxvar
