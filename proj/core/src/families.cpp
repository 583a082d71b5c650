#include "maxvar/families.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "maxvar/error.hpp"

namespace maxvar {

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double a, double b) { return a + (b - a) * unit_uniform(rng); }

std::vector<NamedProfile> standard_family() {
  using P = std::vector<std::pair<double, double>>;
  const P tent{{0, 1}, {1, 0}};
  const P annular{{0, 0}, {1, 0}, {2, 1}, {3, 0}};
  const P two_bump{{0, 1}, {0.5, 0}, {1.5, 0}, {2, 0.6}, {2.5, 0}};
  return {{"tent", load_profile(tent)},
          {"annular_bump", load_profile(annular)},
          {"two_bump", load_profile(two_bump)}};
}

RadialProfile random_profile(std::mt19937_64& rng, int knots) {
  if (knots < 3) throw ParameterError("random profiles need at least 3 knots");
  const double support = uniform(rng, 2.0, 4.0);
  std::vector<double> w(knots - 1);
  double total = 0.0;
  for (double& x : w) total += (x = uniform(rng, 0.3, 1.0));
  std::vector<std::pair<double, double>> pts;
  double t = 0.0;
  for (int i = 0; i < knots; ++i) {
    double v = 0.0;
    if (i + 1 < knots) {
      v = uniform(rng, 0.1, 1.0);
      if (i > 0 && unit_uniform(rng) < 0.2) v = 0.0;
    }
    pts.emplace_back(t, v);
    if (i + 1 < knots) t += support * w[i] / total;
  }
  pts.back().first = support;
  return load_profile(pts);
}

AxisBall random_ball(std::mt19937_64& rng, double support) {
  const double d = uniform(rng, 0.0, 1.5 * support);
  const double r = support * std::exp(uniform(rng, std::log(0.05), std::log(2.0)));
  return {d, r};
}

AxisBall random_annulus_ball(std::mt19937_64& rng, double support) {
  const double d = uniform(rng, 0.2 * support, 1.5 * support);
  const double r = d * uniform(rng, 0.02, 0.5);
  return {d, r};
}

std::vector<NamedProfile> FamilySpec::materialize(std::uint64_t seed) const {
  std::vector<NamedProfile> out = profiles;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < random_count; ++i) {
    out.push_back({"random_" + std::to_string(i), random_profile(rng, random_knots)});
  }
  return out;
}

FamilySpec FamilySpec::standard() {
  FamilySpec spec;
  spec.profiles = standard_family();
  spec.params = {{2, 0.2}, {2, 0.5}, {2, 1.0}};
  return spec;
}

FamilySpec FamilySpec::parse_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParameterError(std::string("malformed family spec: ") + e.what());
  }
  FamilySpec spec;
  try {
    if (doc.value("standard", false)) spec.profiles = standard_family();
    for (const auto& p : doc.value("profiles", nlohmann::json::array())) {
      std::vector<std::pair<double, double>> pts;
      for (const auto& k : p.at("knots")) pts.emplace_back(k.at(0).get<double>(), k.at(1).get<double>());
      spec.profiles.push_back({p.value("name", "profile_" + std::to_string(spec.profiles.size())),
                               load_profile(pts)});
    }
    if (doc.contains("random")) {
      spec.random_count = doc["random"].value("count", 0);
      spec.random_knots = doc["random"].value("knots", 6);
    }
    for (const auto& pr : doc.value("params", nlohmann::json::array())) {
      spec.params.push_back({pr.at(0).get<int>(), pr.at(1).get<double>()});
    }
    if (doc.contains("grid")) spec.grid = GridSpec::parse(doc["grid"].get<std::string>());
    spec.grid_count = doc.value("grid_count", 64);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("invalid family spec: ") + e.what());
  }
  if (spec.profiles.empty() && spec.random_count == 0) {
    throw ParameterError("family spec lists no profiles");
  }
  if (spec.params.empty()) throw ParameterError("family spec lists no (n, beta) pairs");
  for (const ParamPair& p : spec.params) AmbientParams(p.n, p.beta);
  return spec;
}

}  // namespace maxvar
