#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hyperdet/boundaries.hpp"
#include "hyperdet/models.hpp"
#include "hyperdet/statistics.hpp"

namespace hyperdet {

// Threshold policies. Every test rejects when statistic >= threshold.
struct MCQuantile {
  double alpha = 0.05;
  std::uint32_t reps = 1000;
};
// a = eta p0 + (1 - eta) p1, threshold a C(n,m). Without an explicit eta the
// schedule min((C(n,m) p1)^{-1/4}, (ln(N/n))^{-1/4}) clamped to [0,1] is used.
struct AnalyticScanKnown {
  std::optional<double> eta;
};
// C(n,m) H^{-1}_{p0_hat}(n (ln(N/n) + 2) / C(n,m)), recomputed per graph.
struct AnalyticScanUnknown {};
struct FixedThreshold {
  double value = 0.0;
};
// Standard normal upper quantile z_{1-alpha}, for standardized statistics.
struct GaussianQuantile {
  double alpha = 0.05;
};

using ThresholdPolicy =
    std::variant<MCQuantile, AnalyticScanKnown, AnalyticScanUnknown, FixedThreshold,
                 GaussianQuantile>;

std::string describe(const ThresholdPolicy& policy);

// Analytic a C(n,m) for HST, the indicator itself (t = 1) for HCNT, and an MC
// quantile at alpha = 0.05 with 1000 reps otherwise.
ThresholdPolicy default_policy(StatName statistic);

enum class ScanMode {
  Exact,   // exact revolving-door scan; budget overruns are errors
  Greedy,  // always the hill-climbing lower bound
  Auto,    // exact within budget, greedy (flagged approximate) beyond it
};

struct TestSpec {
  StatName statistic = StatName::HTDT;
  ThresholdPolicy policy = MCQuantile{};
  // Scan / clique size for HST and HCNT; defaults to the planted size.
  std::optional<std::uint32_t> scan_size;
  ScanMode scan_mode = ScanMode::Exact;
  std::uint32_t greedy_restarts = 8;
  std::uint64_t budget = kDefaultEnumerationBudget;
  LoosePathOptions loose_path;

  void validate() const;
};

struct RunOptions {
  unsigned threads = 1;
  // Null rates at which type-I error is measured; the maximum is reported.
  // Empty means the single null p0.
  std::vector<double> null_p0_grid;
  // Stream block of this experiment; sweeps assign one per cell.
  std::uint64_t cell = 0;
};

// Stream-id layout: bits 63-62 select the role, bits 61-40 the cell, bits
// 39-32 the null-grid index, bits 31-0 the replication.
enum class StreamRole : std::uint64_t { Null = 0, Calibration = 1, Alternative = 2, Auxiliary = 3 };
std::uint64_t stream_id(StreamRole role, std::uint64_t cell, std::uint64_t grid,
                        std::uint64_t replication);

// The statistic a TestSpec evaluates, with its scan fallback applied.
StatValue evaluate_statistic(const TestSpec& spec, const UniformHypergraph& graph,
                             std::uint32_t scan_size, std::uint64_t master_seed,
                             std::uint64_t graph_stream);

// Either a fixed number or a rule evaluated on each observed graph.
class Threshold {
 public:
  static Threshold fixed(double value);
  static Threshold scan_unknown(std::uint32_t num_vertices, std::uint32_t arity,
                                std::uint32_t scan_size);

  bool data_dependent() const { return data_dependent_; }
  double value() const { return value_; }
  double for_graph(const UniformHypergraph& graph) const;

 private:
  bool data_dependent_ = false;
  double value_ = 0.0;
  std::uint32_t num_vertices_ = 0;
  std::uint32_t arity_ = 0;
  std::uint32_t scan_size_ = 0;
};

double analytic_scan_unknown_threshold(const UniformHypergraph& graph, std::uint32_t scan_size);

// Smallest simulated value t with empirical P(stat >= t) <= alpha. When no
// simulated value qualifies the result lies just above the maximum (never
// reject).
double mc_quantile_threshold(std::vector<double> null_values, double alpha);

// Statistic values on `reps` null graphs drawn from the `role` stream block.
std::vector<double> simulate_null_values(const TestSpec& spec, const NullModel& null,
                                         std::uint32_t scan_size, std::uint32_t reps,
                                         std::uint64_t master_seed,
                                         StreamRole role = StreamRole::Null,
                                         const RunOptions& options = {});

// Builds the threshold for `spec`. MCQuantile simulates `reps` null graphs
// from the calibration stream block, independent of evaluation streams.
Threshold calibrate_threshold(const TestSpec& spec, const NullModel& null,
                              std::optional<std::uint32_t> scan_size,
                              std::optional<double> p1, std::uint64_t master_seed,
                              const RunOptions& options = {});

struct RiskEstimate {
  std::string test;
  double type1 = 0.0;
  double type2 = 0.0;
  double risk = 0.0;
  double se_type1 = 0.0;
  double se_type2 = 0.0;
  std::uint32_t reps = 0;
  std::uint64_t seed = 0;
  // Mean over null replications when the threshold is data dependent.
  double threshold_used = 0.0;
  bool approximate = false;
};

// Type-I error over null replications (stream r) plus type-II error over
// planted replications with S = alt's planted set (stream 2^63 + r). The
// fixed S stands in for the max over S because every statistic is
// permutation invariant.
RiskEstimate estimate_risk(const TestSpec& spec, const NullModel& null, const PlantedModel& alt,
                           std::uint32_t reps, std::uint64_t master_seed,
                           const RunOptions& options = {});

// Same, with a precomputed threshold.
RiskEstimate estimate_risk_with(const TestSpec& spec, const Threshold& threshold,
                                const NullModel& null, const PlantedModel& alt,
                                std::uint32_t reps, std::uint64_t master_seed,
                                const RunOptions& options = {});

struct SweepAxis {
  std::string name;  // N, n, p0 or p1
  std::vector<double> values;
};

struct SweepSpec {
  std::uint32_t num_vertices = 20;
  std::uint32_t arity = 2;
  std::uint32_t planted_size = 5;
  double p0 = 0.1;
  double p1 = 0.5;
  std::vector<SweepAxis> axes;  // first axis varies slowest
  TestSpec test;
  std::uint32_t reps = 100;
  std::uint64_t seed = 0;
  BoundaryCase boundary = BoundaryCase::KnownRates;
  std::vector<double> null_p0_grid;
};

struct SweepRecord {
  std::uint32_t num_vertices = 0;
  std::uint32_t arity = 0;
  std::uint32_t planted_size = 0;
  double p0 = 0.0;
  double p1 = 0.0;
  std::optional<double> p0_prime;
  std::optional<BoundaryReport> boundary;
  std::optional<RiskEstimate> risk;
  std::string error;
};

std::vector<SweepRecord> sweep(const SweepSpec& spec, const RunOptions& options = {});

// Columns N,m,n,p0,p1,p0_prime,b1,b2,verdict,test,threshold,type1,se1,type2,
// se2,risk,reps,seed; reals with 9 significant digits.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records);

std::string format_real(double value);

}  // namespace hyperdet
