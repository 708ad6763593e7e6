#include "hyperdet/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "hyperdet/boundaries.hpp"
#include "hyperdet/error.hpp"
#include "hyperdet/experiments.hpp"
#include "hyperdet/models.hpp"
#include "hyperdet/plot.hpp"
#include "hyperdet/statistics.hpp"
#include "hyperdet/sweep_config.hpp"

namespace hyperdet {

namespace {

using Json = nlohmann::ordered_json;

struct Flags {
  std::uint32_t N = 0;
  std::uint32_t m = 0;
  std::uint32_t n = 0;
  double p0 = 0.0;
  double p1 = 0.0;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "jsonl";
  unsigned threads = 1;
  std::string test;
  std::string policy;
  double alpha = 0.05;
  std::uint32_t cal_reps = 1000;
  std::uint32_t reps = 100;
  double threshold = 0.0;
  double eta = 0.0;
  std::string in;
  std::string scan_mode = "exact";
  std::uint32_t restarts = 8;
  std::string boundary = "known";
  std::string star_denominator = "N-m!";
  double margin = kDefaultMargin;
  std::string x;
  std::string y;
  std::string value = "risk";
  std::string config;
};

struct Seen {
  CLI::Option* n = nullptr;
  CLI::Option* p0 = nullptr;
  CLI::Option* p1 = nullptr;
  CLI::Option* threshold = nullptr;
  CLI::Option* eta = nullptr;
};

class UsageError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

std::uint64_t enumeration_budget() {
  const char* env = std::getenv("HYPERDET_ENUM_BUDGET");
  if (!env || !*env) return kDefaultEnumerationBudget;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) {
    throw ConfigError(std::string("HYPERDET_ENUM_BUDGET must be a positive integer, got '") + env +
                      "'");
  }
  return v;
}

// Output goes to --out when given, otherwise to the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw ConfigError("cannot open output file '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void require(CLI::Option* opt, const std::string& what) {
  if (opt->count() == 0) throw UsageError(what + " requires " + opt->get_name());
}

Json to_json(const std::map<std::string, double>& m) {
  Json j = Json::object();
  for (const auto& [k, v] : m) j[k] = v;
  return j;
}

void emit(std::ostream& out, const std::string& format, const Json& record) {
  if (format == "jsonl") {
    out << record.dump() << '\n';
    return;
  }
  std::string header, row;
  for (const auto& [k, v] : record.items()) {
    if (v.is_object() || v.is_array()) continue;
    if (!header.empty()) {
      header += ',';
      row += ',';
    }
    header += k;
    if (v.is_number_float()) {
      row += format_real(v.get<double>());
    } else if (v.is_string()) {
      row += v.get<std::string>();
    } else if (v.is_null()) {
      // empty field
    } else {
      row += v.dump();
    }
  }
  out << header << '\n' << row << '\n';
}

ThresholdPolicy policy_from_flags(const Flags& f, const Seen& seen) {
  std::string kind = f.policy;
  std::transform(kind.begin(), kind.end(), kind.begin(), [](unsigned char c) { return std::tolower(c); });
  if (kind.empty()) {
    ThresholdPolicy p = default_policy(parse_stat_name(f.test));
    if (auto* mc = std::get_if<MCQuantile>(&p)) *mc = MCQuantile{f.alpha, f.cal_reps};
    return p;
  }
  if (kind == "mc") return MCQuantile{f.alpha, f.cal_reps};
  if (kind == "fixed") {
    require(seen.threshold, "--policy fixed");
    return FixedThreshold{f.threshold};
  }
  if (kind == "analytic-known") {
    AnalyticScanKnown p;
    if (seen.eta->count()) p.eta = f.eta;
    return p;
  }
  if (kind == "analytic-unknown") return AnalyticScanUnknown{};
  if (kind == "gaussian") return GaussianQuantile{f.alpha};
  throw UsageError("unknown --policy '" + f.policy +
                   "' (mc, fixed, analytic-known, analytic-unknown, gaussian)");
}

ScanMode scan_mode_from_flag(const std::string& s) {
  if (s == "exact") return ScanMode::Exact;
  if (s == "greedy") return ScanMode::Greedy;
  if (s == "auto") return ScanMode::Auto;
  throw UsageError("unknown --scan-mode '" + s + "' (exact, greedy, auto)");
}

LoosePathOptions loose_path_from_flag(const std::string& s) {
  if (s == "N-m!") return {StarVarianceDenominator::NMinusMFactorial};
  if (s == "N-m") return {StarVarianceDenominator::NMinusM};
  throw UsageError("unknown --star-denominator '" + s + "' (N-m!, N-m)");
}

TestSpec test_from_flags(const Flags& f, const Seen& seen) {
  TestSpec spec;
  spec.statistic = parse_stat_name(f.test);
  spec.policy = policy_from_flags(f, seen);
  if (seen.n->count()) spec.scan_size = f.n;
  spec.scan_mode = scan_mode_from_flag(f.scan_mode);
  spec.greedy_restarts = f.restarts;
  spec.budget = enumeration_budget();
  spec.loose_path = loose_path_from_flag(f.star_denominator);
  spec.validate();
  return spec;
}

int cmd_gen(const Flags& f, const Seen& seen, std::ostream& out) {
  const bool planted = seen.n->count() || seen.p1->count();
  UniformHypergraph graph = UniformHypergraph::new_empty(f.N, f.m);
  if (planted) {
    require(seen.n, "a planted gen");
    require(seen.p1, "a planted gen");
    PlantedModel model{f.N, f.m, f.n, f.p0, f.p1, {}};
    model.validate();
    RngStream rng(f.seed, stream_id(StreamRole::Alternative, 0, 0, 0));
    graph = sample_planted(model, rng);
  } else {
    NullModel model{f.N, f.m, f.p0};
    model.validate();
    RngStream rng(f.seed, stream_id(StreamRole::Null, 0, 0, 0));
    graph = sample_null(model, rng);
  }
  Sink sink(f.out, out);
  write_edge_list(sink.get(), graph);
  return 0;
}

int cmd_stat(const Flags& f, const Seen& seen, std::ostream& out) {
  const StatName name = parse_stat_name(f.test);
  std::ifstream in(f.in, std::ios::binary);
  if (!in) throw ConfigError("cannot open input file '" + f.in + "'");
  const UniformHypergraph graph = read_edge_list(in);
  const std::uint64_t budget = enumeration_budget();
  StatValue v;
  switch (name) {
    case StatName::HTDT: v = htdt_stat(graph); break;
    case StatName::HST:
      require(seen.n, "hst");
      v = f.scan_mode == "greedy" ? [&] {
        RngStream rng(f.seed, stream_id(StreamRole::Auxiliary, 0, 0, 0));
        return hst_stat_greedy(graph, f.n, f.restarts, rng);
      }()
                                  : hst_stat(graph, f.n, budget);
      break;
    case StatName::HCNT:
      require(seen.n, "hcnt");
      v = hcnt_has_clique(graph, f.n, budget);
      break;
    case StatName::HL2PT: v = hl2pt_stat(graph, loose_path_from_flag(f.star_denominator)); break;
    case StatName::HT2PT: v = ht2pt_stat(graph); break;
  }
  Json rec;
  rec["name"] = to_string(v.name);
  rec["value"] = v.value;
  rec["aux"] = to_json(v.aux);
  rec["degenerate"] = v.degenerate;
  rec["approximate"] = v.approximate;
  Json witness = Json::array();
  for (Vertex u : v.witness) witness.push_back(u + 1);
  rec["witness"] = witness;
  Sink sink(f.out, out);
  emit(sink.get(), f.format, rec);
  return 0;
}

Json boundary_json(const BoundaryReport& r) {
  Json rec;
  rec["case"] = to_string(r.boundary_case);
  rec["b1"] = r.b1;
  rec["b2"] = r.b2;
  rec["p0_prime"] = r.p0_prime ? Json(*r.p0_prime) : Json();
  rec["hpc_threshold"] = r.hpc_threshold ? Json(*r.hpc_threshold) : Json();
  rec["verdict"] = to_string(r.verdict);
  rec["diagnostics"] = to_json(r.diagnostics);
  return rec;
}

int cmd_boundary(const Flags& f, const Seen& seen, std::ostream& out) {
  require(seen.n, "boundary");
  require(seen.p1, "boundary");
  BoundaryReport r;
  if (f.boundary == "known") {
    r = known_boundary(f.N, f.m, f.n, f.p0, f.p1, f.margin);
  } else if (f.boundary == "unknown") {
    r = unknown_boundary(f.N, f.m, f.n, f.p0, f.p1, f.margin);
  } else {
    throw UsageError("unknown --boundary '" + f.boundary + "' (known, unknown)");
  }
  Json rec;
  rec["N"] = f.N;
  rec["m"] = f.m;
  rec["n"] = f.n;
  rec["p0"] = f.p0;
  rec["p1"] = f.p1;
  const Json report = boundary_json(r);
  for (const auto& [k, v] : report.items()) rec[k] = v;
  Sink sink(f.out, out);
  emit(sink.get(), f.format, rec);
  return 0;
}

int cmd_risk(const Flags& f, const Seen& seen, std::ostream& out) {
  require(seen.n, "risk");
  require(seen.p1, "risk");
  const TestSpec spec = test_from_flags(f, seen);
  PlantedModel alt{f.N, f.m, f.n, f.p0, f.p1, {}};
  if (f.boundary == "unknown") {
    alt.p0 = calibrated_background(f.N, f.m, f.n, f.p0, f.p1);
  } else if (f.boundary != "known") {
    throw UsageError("unknown --boundary '" + f.boundary + "' (known, unknown)");
  }
  alt.validate();
  const NullModel null{f.N, f.m, f.p0};
  null.validate();
  RunOptions opts;
  opts.threads = f.threads;
  const RiskEstimate r = estimate_risk(spec, null, alt, f.reps, f.seed, opts);
  Json rec;
  rec["test"] = r.test;
  rec["N"] = f.N;
  rec["m"] = f.m;
  rec["n"] = f.n;
  rec["p0"] = f.p0;
  rec["p1"] = f.p1;
  rec["alt_p0"] = alt.p0;
  rec["threshold"] = r.threshold_used;
  rec["type1"] = r.type1;
  rec["se1"] = r.se_type1;
  rec["type2"] = r.type2;
  rec["se2"] = r.se_type2;
  rec["risk"] = r.risk;
  rec["reps"] = r.reps;
  rec["seed"] = r.seed;
  rec["approximate"] = r.approximate;
  Sink sink(f.out, out);
  emit(sink.get(), f.format, rec);
  return 0;
}

int cmd_sweep(const Flags& f, std::ostream& out) {
  SweepSpec spec = sweep_spec_from_json(read_file(f.config));
  if (spec.test.budget == kDefaultEnumerationBudget) spec.test.budget = enumeration_budget();
  RunOptions opts;
  opts.threads = f.threads;
  const auto records = sweep(spec, opts);
  Sink sink(f.out, out);
  write_sweep_csv(sink.get(), records);
  return 0;
}

int cmd_plot(const Flags& f, std::ostream& out) {
  std::ifstream in(f.in, std::ios::binary);
  if (!in) throw ConfigError("cannot open input file '" + f.in + "'");
  const CsvTable table = read_csv(in);
  const std::string svg = render_heatmap_svg(table, f.x, f.y, f.value);
  Sink sink(f.out, out);
  sink.get() << svg;
  return 0;
}

void add_model_flags(CLI::App* sub, Flags& f, Seen& seen, bool with_planted) {
  sub->add_option("--N", f.N, "number of vertices")->required()->check(CLI::PositiveNumber);
  sub->add_option("--m", f.m, "edge arity")->required()->check(CLI::Range(2u, 64u));
  seen.p0 = sub->add_option("--p0", f.p0, "null edge probability")->required();
  if (with_planted) {
    seen.n = sub->add_option("--n", f.n, "planted / scan size");
    seen.p1 = sub->add_option("--p1", f.p1, "planted edge probability");
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dense subhypergraph detection toolkit", "hyperdet"};
  app.require_subcommand(1);
  Flags f;
  Seen seen;

  auto* gen = app.add_subcommand("gen", "sample a null or planted hypergraph as an edge list");
  add_model_flags(gen, f, seen, true);
  gen->add_option("--seed", f.seed, "master seed");
  gen->add_option("--out", f.out, "output path (default standard output)");

  auto* stat = app.add_subcommand("stat", "evaluate one statistic on an edge-list file");
  stat->add_option("--test", f.test, "HTDT, HST, HCNT, HL2PT or HT2PT")->required();
  stat->add_option("--in", f.in, "edge-list file")->required();
  Seen stat_seen;
  stat_seen.n = stat->add_option("--n", f.n, "scan / clique size");
  stat->add_option("--p0", f.p0, "unused; accepted for symmetry");
  stat->add_option("--p1", f.p1, "unused; accepted for symmetry");
  stat->add_option("--scan-mode", f.scan_mode, "exact or greedy");
  stat->add_option("--restarts", f.restarts, "greedy random restarts");
  stat->add_option("--star-denominator", f.star_denominator, "N-m! or N-m");
  stat->add_option("--seed", f.seed, "seed for greedy restarts");
  stat->add_option("--out", f.out, "output path");
  stat->add_option("--format", f.format, "jsonl or csv")->check(CLI::IsMember({"jsonl", "csv"}));

  auto* risk = app.add_subcommand("risk", "Monte Carlo type-I / type-II risk of a test");
  Seen risk_seen;
  add_model_flags(risk, f, risk_seen, true);
  risk->add_option("--test", f.test, "statistic")->required();
  risk->add_option("--policy", f.policy, "mc, fixed, analytic-known, analytic-unknown, gaussian "
                   "(default depends on the test)");
  risk->add_option("--alpha", f.alpha, "target level");
  risk->add_option("--cal-reps", f.cal_reps, "null calibration replications");
  risk->add_option("--reps", f.reps, "evaluation replications");
  risk_seen.threshold = risk->add_option("--threshold", f.threshold, "fixed threshold");
  risk_seen.eta = risk->add_option("--eta", f.eta, "analytic known-rate interpolation");
  risk->add_option("--scan-mode", f.scan_mode, "exact, greedy or auto");
  risk->add_option("--restarts", f.restarts, "greedy random restarts");
  risk->add_option("--star-denominator", f.star_denominator, "N-m! or N-m");
  risk->add_option("--boundary", f.boundary, "known or unknown (alternative at p0')");
  risk->add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber);
  risk->add_option("--seed", f.seed, "master seed");
  risk->add_option("--out", f.out, "output path");
  risk->add_option("--format", f.format, "jsonl or csv")->check(CLI::IsMember({"jsonl", "csv"}));

  auto* sweep_cmd = app.add_subcommand("sweep", "grid of boundary and risk records as CSV");
  sweep_cmd->add_option("--config", f.config, "JSON sweep configuration")->required();
  sweep_cmd->add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--out", f.out, "output CSV path");

  auto* bnd = app.add_subcommand("boundary", "detection-boundary ratios and verdict");
  Seen bnd_seen;
  add_model_flags(bnd, f, bnd_seen, true);
  bnd->add_option("--boundary", f.boundary, "known or unknown");
  bnd->add_option("--margin", f.margin, "verdict margin on b1");
  bnd->add_option("--out", f.out, "output path");
  bnd->add_option("--format", f.format, "jsonl or csv")->check(CLI::IsMember({"jsonl", "csv"}));

  auto* plot = app.add_subcommand("plot", "SVG heatmap of a sweep CSV");
  plot->add_option("--in", f.in, "sweep CSV")->required();
  plot->add_option("--x", f.x, "x-axis column")->required();
  plot->add_option("--y", f.y, "y-axis column")->required();
  plot->add_option("--value", f.value, "value column (risk, verdict, ...)");
  plot->add_option("--out", f.out, "output SVG path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "hyperdet: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*gen) return cmd_gen(f, seen, out);
    if (*stat) return cmd_stat(f, stat_seen, out);
    if (*risk) return cmd_risk(f, risk_seen, out);
    if (*sweep_cmd) return cmd_sweep(f, out);
    if (*bnd) return cmd_boundary(f, bnd_seen, out);
    if (*plot) return cmd_plot(f, out);
  } catch (const UsageError& e) {
    err << "hyperdet: usage: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    err << "hyperdet: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "hyperdet: " << e.what() << '\n';
    return 2;
  } catch (const ConstructionError& e) {
    err << "hyperdet: " << e.what() << '\n';
    return 2;
  } catch (const RangeError& e) {
    err << "hyperdet: " << e.what() << '\n';
    return 2;
  } catch (const InvalidSubsetError& e) {
    err << "hyperdet: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "hyperdet: " << e.what() << '\n';
    return 3;
  }
  return 2;
}

}  // namespace hyperdet
