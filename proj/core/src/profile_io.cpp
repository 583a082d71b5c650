#include "maxvar/profile_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "maxvar/error.hpp"

namespace maxvar {
namespace {

using Points = std::vector<std::pair<double, double>>;

bool parse_double(std::string_view text, double& out) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

RadialProfile parse_profile_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ProfileError(std::string("malformed profile JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("knots") || !doc["knots"].is_array()) {
    throw ProfileError("profile JSON needs a \"knots\" array");
  }
  Points pts;
  for (const auto& k : doc["knots"]) {
    if (!k.is_array() || k.size() != 2 || !k[0].is_number() || !k[1].is_number()) {
      throw ProfileError("each knot must be a [t, F] pair of numbers");
    }
    pts.emplace_back(k[0].get<double>(), k[1].get<double>());
  }
  return load_profile(pts);
}

RadialProfile parse_profile_csv(const std::string& text) {
  Points pts;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (char& c : line) {
      if (c == ',' || c == ';' || c == '\t' || c == '\r') c = ' ';
    }
    std::istringstream fields(line);
    std::vector<std::string> cols;
    for (std::string f; fields >> f;) cols.push_back(f);
    if (cols.empty()) continue;
    double t = 0.0, v = 0.0;
    const bool ok = cols.size() == 2 && parse_double(cols[0], t) && parse_double(cols[1], v);
    if (!ok) {
      if (pts.empty() && lineno == 1) continue;  // header
      throw ProfileError("malformed profile CSV at line " + std::to_string(lineno));
    }
    pts.emplace_back(t, v);
  }
  return load_profile(pts);
}

RadialProfile read_profile(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ProfileError("cannot open profile file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  const bool json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  return json ? parse_profile_json(buf.str()) : parse_profile_csv(buf.str());
}

std::string profile_to_json(const RadialProfile& profile) {
  nlohmann::json knots = nlohmann::json::array();
  for (const Knot& k : profile.knots()) {
    knots.push_back({k.t, k.left});
    if (k.right != k.left) knots.push_back({k.t, k.right});
  }
  return nlohmann::json{{"knots", knots}}.dump();
}

}  // namespace maxvar
