#include "hyperdet/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include <boost/math/distributions/normal.hpp>

#include "hyperdet/error.hpp"
#include "parallel.hpp"

namespace hyperdet {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr std::uint64_t kReplicationMask = 0xFFFFFFFFull;
constexpr std::uint64_t kGridMask = 0xFFull;
constexpr std::uint64_t kCellMask = (std::uint64_t{1} << 22) - 1;

bool needs_scan_size(StatName s) { return s == StatName::HST || s == StatName::HCNT; }

std::string to_string(StreamRole role) {
  switch (role) {
    case StreamRole::Null: return "null";
    case StreamRole::Calibration: return "calibration";
    case StreamRole::Alternative: return "alternative";
    case StreamRole::Auxiliary: return "auxiliary";
  }
  return "?";
}

double binomial_se(double rate, std::uint32_t reps) {
  return reps == 0 ? 0.0 : std::sqrt(rate * (1.0 - rate) / reps);
}

}  // namespace

std::string describe(const ThresholdPolicy& policy) {
  return std::visit(
      Overloaded{
          [](const MCQuantile& p) {
            return "MCQuantile(alpha=" + format_real(p.alpha) + ",reps=" + std::to_string(p.reps) +
                   ")";
          },
          [](const AnalyticScanKnown& p) {
            return p.eta ? "AnalyticScanKnown(eta=" + format_real(*p.eta) + ")"
                         : std::string("AnalyticScanKnown");
          },
          [](const AnalyticScanUnknown&) { return std::string("AnalyticScanUnknown"); },
          [](const FixedThreshold& p) { return "Fixed(" + format_real(p.value) + ")"; },
          [](const GaussianQuantile& p) {
            return "GaussianQuantile(alpha=" + format_real(p.alpha) + ")";
          },
      },
      policy);
}

ThresholdPolicy default_policy(StatName statistic) {
  switch (statistic) {
    case StatName::HST: return AnalyticScanKnown{};
    case StatName::HCNT: return FixedThreshold{1.0};
    default: return MCQuantile{};
  }
}

void TestSpec::validate() const {
  std::visit(Overloaded{
                 [](const MCQuantile& p) {
                   if (!(p.alpha > 0.0 && p.alpha <= 1.0)) {
                     throw ConfigError("MCQuantile alpha must lie in (0,1]");
                   }
                   if (p.reps < 100) throw ConfigError("MCQuantile needs at least 100 reps");
                 },
                 [](const AnalyticScanKnown& p) {
                   if (p.eta && !(*p.eta >= 0.0 && *p.eta <= 1.0)) {
                     throw ConfigError("AnalyticScanKnown eta must lie in [0,1]");
                   }
                 },
                 [](const AnalyticScanUnknown&) {},
                 [](const FixedThreshold& p) {
                   if (!std::isfinite(p.value) || std::abs(p.value) >= 1e300) {
                     throw ConfigError("Fixed threshold must be a finite number, not a sentinel");
                   }
                 },
                 [](const GaussianQuantile& p) {
                   if (!(p.alpha > 0.0 && p.alpha < 1.0)) {
                     throw ConfigError("GaussianQuantile alpha must lie in (0,1)");
                   }
                 },
             },
             policy);
  const bool scan_policy = std::holds_alternative<AnalyticScanKnown>(policy) ||
                           std::holds_alternative<AnalyticScanUnknown>(policy);
  if (scan_policy && statistic != StatName::HST) {
    throw ConfigError("analytic scan thresholds apply to the HST statistic only");
  }
}

std::uint64_t stream_id(StreamRole role, std::uint64_t cell, std::uint64_t grid,
                        std::uint64_t replication) {
  if (replication > kReplicationMask || grid > kGridMask || cell > kCellMask) {
    throw ConfigError("stream layout overflow (too many replications, cells or grid points)");
  }
  return (static_cast<std::uint64_t>(role) << 62) | (cell << 40) | (grid << 32) | replication;
}

StatValue evaluate_statistic(const TestSpec& spec, const UniformHypergraph& graph,
                             std::uint32_t scan_size, std::uint64_t master_seed,
                             std::uint64_t graph_stream) {
  switch (spec.statistic) {
    case StatName::HTDT: return htdt_stat(graph);
    case StatName::HL2PT: return hl2pt_stat(graph, spec.loose_path);
    case StatName::HT2PT: return ht2pt_stat(graph);
    case StatName::HCNT: return hcnt_has_clique(graph, scan_size, spec.budget);
    case StatName::HST: {
      auto greedy = [&] {
        const std::uint64_t aux = (static_cast<std::uint64_t>(StreamRole::Auxiliary) << 62) |
                                  (splitmix64_mix(graph_stream) >> 2);
        RngStream rng(master_seed, aux);
        return hst_stat_greedy(graph, scan_size, spec.greedy_restarts, rng);
      };
      switch (spec.scan_mode) {
        case ScanMode::Exact: return hst_stat(graph, scan_size, spec.budget);
        case ScanMode::Greedy: return greedy();
        case ScanMode::Auto:
          try {
            return hst_stat(graph, scan_size, spec.budget);
          } catch (const BudgetError&) {
            return greedy();
          }
      }
    }
  }
  throw ConfigError("unhandled statistic");
}

Threshold Threshold::fixed(double value) {
  Threshold t;
  t.value_ = value;
  return t;
}

Threshold Threshold::scan_unknown(std::uint32_t num_vertices, std::uint32_t arity,
                                  std::uint32_t scan_size) {
  if (scan_size < arity || scan_size >= num_vertices) {
    throw ConfigError("AnalyticScanUnknown needs m <= n < N");
  }
  Threshold t;
  t.data_dependent_ = true;
  t.value_ = std::numeric_limits<double>::quiet_NaN();
  t.num_vertices_ = num_vertices;
  t.arity_ = arity;
  t.scan_size_ = scan_size;
  return t;
}

double analytic_scan_unknown_threshold(const UniformHypergraph& graph, std::uint32_t scan_size) {
  const double inner = binomial_real(scan_size, graph.arity());
  const double n = scan_size;
  const double budget = n * (std::log(graph.num_vertices() / n) + 2.0) / inner;
  const double phat = p0_hat(graph);
  if (phat <= 0.0) return inner * kl_inverse_upper(std::numeric_limits<double>::min(), budget);
  if (phat >= 1.0) return inner;
  return inner * kl_inverse_upper(phat, budget);
}

double Threshold::for_graph(const UniformHypergraph& graph) const {
  if (!data_dependent_) return value_;
  if (graph.num_vertices() != num_vertices_ || graph.arity() != arity_) {
    throw ConfigError("threshold was built for a different hypergraph shape");
  }
  return analytic_scan_unknown_threshold(graph, scan_size_);
}

double mc_quantile_threshold(std::vector<double> null_values, double alpha) {
  if (null_values.empty()) throw ConfigError("MC quantile needs at least one null value");
  std::sort(null_values.begin(), null_values.end());
  const double total = static_cast<double>(null_values.size());
  for (std::size_t i = 0; i < null_values.size(); ++i) {
    if (i > 0 && null_values[i] == null_values[i - 1]) continue;
    // Every value from index i on is >= null_values[i].
    const double exceed = static_cast<double>(null_values.size() - i) / total;
    if (exceed <= alpha) return null_values[i];
  }
  return std::nextafter(null_values.back(), std::numeric_limits<double>::infinity());
}

std::vector<double> simulate_null_values(const TestSpec& spec, const NullModel& null,
                                         std::uint32_t scan_size, std::uint32_t reps,
                                         std::uint64_t master_seed, StreamRole role,
                                         const RunOptions& options) {
  std::vector<double> values(reps);
  detail::parallel_for(reps, options.threads, [&](std::size_t r) {
    const std::uint64_t id = stream_id(role, options.cell, 0, r);
    RngStream rng(master_seed, id);
    const UniformHypergraph g = sample_null(null, rng);
    values[r] = evaluate_statistic(spec, g, scan_size, master_seed, id).value;
  });
  return values;
}

Threshold calibrate_threshold(const TestSpec& spec, const NullModel& null,
                              std::optional<std::uint32_t> scan_size, std::optional<double> p1,
                              std::uint64_t master_seed, const RunOptions& options) {
  spec.validate();
  null.validate();
  if (needs_scan_size(spec.statistic) && !scan_size) {
    throw ConfigError(to_string(spec.statistic) + " needs a scan size n");
  }
  return std::visit(
      Overloaded{
          [&](const MCQuantile& p) {
            std::vector<double> values = simulate_null_values(
                spec, null, scan_size.value_or(0), p.reps, master_seed, StreamRole::Calibration,
                options);
            return Threshold::fixed(mc_quantile_threshold(std::move(values), p.alpha));
          },
          [&](const AnalyticScanKnown& p) {
            if (!scan_size || !p1) {
              throw ConfigError("AnalyticScanKnown needs p0, p1 and the scan size n");
            }
            const double inner = binomial_real(*scan_size, null.arity);
            double eta = 0.0;
            if (p.eta) {
              eta = *p.eta;
            } else {
              const double log_ratio =
                  std::log(static_cast<double>(null.num_vertices) / *scan_size);
              eta = std::min(std::pow(inner * *p1, -0.25), std::pow(log_ratio, -0.25));
              eta = std::clamp(eta, 0.0, 1.0);
            }
            return Threshold::fixed((eta * null.p0 + (1.0 - eta) * *p1) * inner);
          },
          [&](const AnalyticScanUnknown&) {
            if (!scan_size) throw ConfigError("AnalyticScanUnknown needs the scan size n");
            return Threshold::scan_unknown(null.num_vertices, null.arity, *scan_size);
          },
          [&](const FixedThreshold& p) { return Threshold::fixed(p.value); },
          [&](const GaussianQuantile& p) {
            const boost::math::normal_distribution<double> normal;
            return Threshold::fixed(boost::math::quantile(boost::math::complement(normal, p.alpha)));
          },
      },
      spec.policy);
}

RiskEstimate estimate_risk_with(const TestSpec& spec, const Threshold& threshold,
                                const NullModel& null, const PlantedModel& alt,
                                std::uint32_t reps, std::uint64_t master_seed,
                                const RunOptions& options) {
  null.validate();
  alt.validate();
  if (null.num_vertices != alt.num_vertices || null.arity != alt.arity) {
    throw ConfigError("null and alternative models must share N and m");
  }
  if (reps == 0) throw ConfigError("risk estimation needs at least one replication");
  const std::uint32_t scan_size = spec.scan_size.value_or(alt.planted_size);

  std::vector<double> grid = options.null_p0_grid;
  if (grid.empty()) grid.push_back(null.p0);

  RiskEstimate out;
  out.test = to_string(spec.statistic);
  out.reps = reps;
  out.seed = master_seed;

  std::vector<char> approx_flags((grid.size() + 1) * reps, 0);
  std::vector<double> null_thresholds(grid.size() * reps, 0.0);

  auto run_block = [&](std::size_t block, StreamRole role, std::uint64_t grid_index,
                       auto make_graph) {
    std::vector<char> rejected(reps, 0);
    detail::parallel_for(reps, options.threads, [&](std::size_t r) {
      const std::uint64_t id = stream_id(role, options.cell, grid_index, r);
      RngStream rng(master_seed, id);
      const UniformHypergraph g = make_graph(rng);
      StatValue s;
      try {
        s = evaluate_statistic(spec, g, scan_size, master_seed, id);
      } catch (const BudgetError& e) {
        throw BudgetError(to_string(role) + " replication " + std::to_string(r) + ": " + e.what());
      }
      const double t = threshold.for_graph(g);
      if (role == StreamRole::Null) null_thresholds[grid_index * reps + r] = t;
      approx_flags[block * reps + r] = s.approximate;
      rejected[r] = s.value >= t;
    });
    std::uint32_t count = 0;
    for (char c : rejected) count += c != 0;
    return static_cast<double>(count) / reps;
  };

  bool first = true;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    NullModel null_g = null;
    null_g.p0 = grid[g];
    const double rate = run_block(g, StreamRole::Null, g, [&](RngStream& rng) {
      return sample_null(null_g, rng);
    });
    if (first || rate > out.type1) {
      out.type1 = rate;
      first = false;
    }
  }
  out.type2 = 1.0 - run_block(grid.size(), StreamRole::Alternative, 0, [&](RngStream& rng) {
    return sample_planted(alt, rng);
  });
  out.risk = out.type1 + out.type2;
  out.se_type1 = binomial_se(out.type1, reps);
  out.se_type2 = binomial_se(out.type2, reps);
  out.approximate = std::any_of(approx_flags.begin(), approx_flags.end(),
                                [](char c) { return c != 0; });
  if (threshold.data_dependent()) {
    double sum = 0.0;
    for (double t : null_thresholds) sum += t;
    out.threshold_used = sum / static_cast<double>(null_thresholds.size());
  } else {
    out.threshold_used = threshold.value();
  }
  return out;
}

RiskEstimate estimate_risk(const TestSpec& spec, const NullModel& null, const PlantedModel& alt,
                           std::uint32_t reps, std::uint64_t master_seed,
                           const RunOptions& options) {
  const Threshold threshold =
      calibrate_threshold(spec, null, spec.scan_size.value_or(alt.planted_size), alt.p1,
                          master_seed, options);
  return estimate_risk_with(spec, threshold, null, alt, reps, master_seed, options);
}

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

}  // namespace hyperdet
