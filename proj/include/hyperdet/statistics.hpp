#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hyperdet/hypergraph.hpp"
#include "hyperdet/rng.hpp"

namespace hyperdet {

enum class StatName { HTDT, HST, HCNT, HL2PT, HT2PT };

std::string to_string(StatName name);
// Case-insensitive; accepts the hyphenated forms HL2-PT / HT2-PT as well.
StatName parse_stat_name(std::string_view text);

// Result of one statistic evaluation.
//
// aux keys by statistic:
//   HTDT   W
//   HST    W_n, subsets (visited), and for greedy restarts
//   HCNT   nodes (branch-and-bound nodes expanded)
//   HL2PT  p0_hat, V1, V2, star_denominator
//   HT2PT  p0_hat, numerator, denominator
struct StatValue {
  StatName name = StatName::HTDT;
  double value = 0.0;
  std::map<std::string, double> aux;
  bool degenerate = false;   // p0_hat in {0,1}; value forced to 0
  bool approximate = false;  // heuristic lower bound (greedy scan)
  std::vector<Vertex> witness;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 1'000'000'000;
inline constexpr std::uint64_t kScanOracleLimit = 1'000'000;
inline constexpr std::uint64_t kTightPathOracleLimit = 100'000'000;

// Total degree W: the number of edges.
StatValue htdt_stat(const UniformHypergraph& graph);

// Exact scan statistic W_n = max over n-subsets of the induced edge count.
// Walks all C(N, n) subsets in revolving-door order, updating the count by the
// degree delta of the swapped pair. Throws BudgetError above `budget` subsets.
StatValue hst_stat(const UniformHypergraph& graph, std::uint32_t scan_size,
                   std::uint64_t budget = kDefaultEnumerationBudget);

// Naive recount of every n-subset; requires C(N, n) <= kScanOracleLimit.
StatValue hst_oracle(const UniformHypergraph& graph, std::uint32_t scan_size);

// Single-swap hill climbing from the top-degree set plus `restarts` random
// starts. The value is a lower bound on W_n and flagged approximate unless
// n == N.
StatValue hst_stat_greedy(const UniformHypergraph& graph, std::uint32_t scan_size,
                          std::uint32_t restarts, RngStream& rng);

// Indicator of an n-vertex sub-hypergraph that is complete (a clique of size
// >= n exists). Branch and bound over vertex inclusion; throws BudgetError
// once more than `budget` nodes are expanded.
StatValue hcnt_has_clique(const UniformHypergraph& graph, std::uint32_t clique_size,
                          std::uint64_t budget = kDefaultEnumerationBudget);

// Largest k such that some k-set induces a complete sub-hypergraph.
std::uint32_t clique_number(const UniformHypergraph& graph,
                            std::uint64_t budget = kDefaultEnumerationBudget);

double p0_hat(const UniformHypergraph& graph);

// Ordered star count W_{v*} = (m-1)! deg(v).
std::uint64_t vertex_star_count(const UniformHypergraph& graph, Vertex v);

enum class StarVarianceDenominator {
  NMinusMFactorial,  // N - m!, the default
  NMinusM,           // N - m, sensitivity switch
};

struct LoosePathOptions {
  StarVarianceDenominator denominator = StarVarianceDenominator::NMinusMFactorial;
};

struct LoosePathMoments {
  double v1 = 0.0;
  double v2 = 0.0;
};

// V1 and V2 of the loose 2-path statistic evaluated at edge rate `rate`
// (p0_hat for the test itself, the true p0 for null-centering checks).
LoosePathMoments loose_path_moments(const UniformHypergraph& graph, double rate,
                                    LoosePathOptions options = {});

// (V2 - V1) / (N^{(2m-3)/2} p0_hat). Requires N > m! (N > m with NMinusM).
StatValue hl2pt_stat(const UniformHypergraph& graph, LoosePathOptions options = {});

// Sum over ordered pairwise-distinct (i_1, ..., i_{m+1}) of
// (A_{i_1..i_m} - rate)(A_{i_2..i_{m+1}} - rate), via the shared-core identity
// (m-1)! sum_D [ (sum_u a_{D+u})^2 - sum_u a_{D+u}^2 ] over (m-1)-sets D.
double tight_path_numerator(const UniformHypergraph& graph, double rate);

// Literal enumeration of the ordered tuples; requires N!/(N-m-1)! <=
// kTightPathOracleLimit.
double ht2pt_numerator_oracle(const UniformHypergraph& graph, double rate);

// Standardized tight 2-path statistic. Requires N >= m + 1.
StatValue ht2pt_stat(const UniformHypergraph& graph);

// Unordered pairs of distinct edges sharing exactly `overlap` vertices
// (1 = loose 2-paths, m-1 = tight 2-paths). Brute force over edge pairs.
std::uint64_t edge_pair_overlap_count(const UniformHypergraph& graph, std::uint32_t overlap);

}  // namespace hyperdet
