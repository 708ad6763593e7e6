#include "hyperdet/sweep_config.hpp"

#include <json.hpp>
#include <set>

#include "hyperdet/error.hpp"

namespace hyperdet {

namespace {

using Json = nlohmann::ordered_json;

template <typename T>
T get(const Json& obj, const char* key) {
  if (!obj.contains(key)) throw ConfigError(std::string("sweep config: missing key '") + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("sweep config: key '") + key + "' has the wrong type");
  }
}

ThresholdPolicy policy_from_json(const Json& p) {
  const auto kind = get<std::string>(p, "kind");
  if (kind == "MCQuantile") {
    return MCQuantile{get<double>(p, "alpha"), get<std::uint32_t>(p, "reps")};
  }
  if (kind == "Fixed") return FixedThreshold{get<double>(p, "t")};
  if (kind == "AnalyticScanKnown") {
    AnalyticScanKnown out;
    if (p.contains("eta")) out.eta = get<double>(p, "eta");
    return out;
  }
  if (kind == "AnalyticScanUnknown") return AnalyticScanUnknown{};
  if (kind == "GaussianQuantile") return GaussianQuantile{get<double>(p, "alpha")};
  throw ConfigError("sweep config: unknown policy kind '" + kind + "'");
}

ScanMode scan_mode_from(const std::string& s) {
  if (s == "exact") return ScanMode::Exact;
  if (s == "greedy") return ScanMode::Greedy;
  if (s == "auto") return ScanMode::Auto;
  throw ConfigError("sweep config: scan_mode must be exact, greedy or auto");
}

}  // namespace

SweepSpec sweep_spec_from_json(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("sweep config: invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("sweep config: top level must be an object");
  static const std::set<std::string> known = {
      "fixed", "axes", "test", "policy", "reps", "seed", "scan_n", "scan_mode", "restarts",
      "budget", "boundary", "null_p0_grid", "star_denominator"};
  for (const auto& [key, value] : root.items()) {
    if (!known.count(key)) throw ConfigError("sweep config: unknown key '" + key + "'");
  }

  SweepSpec spec;
  const Json& fixed = root.contains("fixed") ? root.at("fixed") : Json::object();
  spec.num_vertices = get<std::uint32_t>(fixed, "N");
  spec.arity = get<std::uint32_t>(fixed, "m");
  spec.planted_size = get<std::uint32_t>(fixed, "n");
  spec.p0 = get<double>(fixed, "p0");
  spec.p1 = get<double>(fixed, "p1");

  if (root.contains("axes")) {
    const Json& axes = root.at("axes");
    if (axes.is_array()) {
      for (const Json& a : axes) {
        spec.axes.push_back({get<std::string>(a, "name"), get<std::vector<double>>(a, "values")});
      }
    } else if (axes.is_object()) {
      for (const auto& [name, values] : axes.items()) {
        spec.axes.push_back({name, values.get<std::vector<double>>()});
      }
    } else {
      throw ConfigError("sweep config: axes must be an array or an object");
    }
  }

  spec.test.statistic = parse_stat_name(get<std::string>(root, "test"));
  spec.test.policy = root.contains("policy") ? policy_from_json(root.at("policy"))
                                             : default_policy(spec.test.statistic);
  spec.reps = get<std::uint32_t>(root, "reps");
  spec.seed = root.contains("seed") ? get<std::uint64_t>(root, "seed") : 0;
  if (root.contains("scan_n")) spec.test.scan_size = get<std::uint32_t>(root, "scan_n");
  if (root.contains("scan_mode")) spec.test.scan_mode = scan_mode_from(get<std::string>(root, "scan_mode"));
  if (root.contains("restarts")) spec.test.greedy_restarts = get<std::uint32_t>(root, "restarts");
  if (root.contains("budget")) spec.test.budget = get<std::uint64_t>(root, "budget");
  if (root.contains("boundary")) {
    const auto b = get<std::string>(root, "boundary");
    if (b == "known") spec.boundary = BoundaryCase::KnownRates;
    else if (b == "unknown") spec.boundary = BoundaryCase::UnknownRates;
    else throw ConfigError("sweep config: boundary must be known or unknown");
  }
  if (root.contains("null_p0_grid")) spec.null_p0_grid = get<std::vector<double>>(root, "null_p0_grid");
  if (root.contains("star_denominator")) {
    const auto d = get<std::string>(root, "star_denominator");
    if (d == "N-m!") spec.test.loose_path.denominator = StarVarianceDenominator::NMinusMFactorial;
    else if (d == "N-m") spec.test.loose_path.denominator = StarVarianceDenominator::NMinusM;
    else throw ConfigError("sweep config: star_denominator must be N-m! or N-m");
  }
  spec.test.validate();
  return spec;
}

}  // namespace hyperdet
