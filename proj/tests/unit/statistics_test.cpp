#include "hyperdet/statistics.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hyperdet/error.hpp"
#include "test_util.hpp"

namespace hyperdet {
namespace {

using testing::complete_graph;
using testing::make_graph;
using testing::random_graph;

UniformHypergraph path3() { return make_graph(3, 2, {{0, 1}, {1, 2}}); }

// Number of ordered tuples (u_2..u_m) of distinct vertices other than v with
// {v, u_2..u_m} an edge, counted one tuple at a time.
double ordered_star(const UniformHypergraph& g, Vertex v) {
  const std::uint32_t k = g.arity() - 1;
  std::vector<Vertex> tuple(k, 0);
  double count = 0;
  const std::uint64_t total = static_cast<std::uint64_t>(std::pow(g.num_vertices(), k));
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < k; ++i) {
      tuple[i] = c % g.num_vertices();
      c /= g.num_vertices();
    }
    std::vector<Vertex> members(tuple);
    members.push_back(v);
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end()) continue;
    if (g.has_edge(SubsetKey(members))) ++count;
  }
  return count;
}

TEST(Htdt, Values) {
  EXPECT_EQ(htdt_stat(complete_graph(5, 3)).value, 10.0);
  EXPECT_EQ(htdt_stat(UniformHypergraph(5, 3)).value, 0.0);
  EXPECT_EQ(htdt_stat(path3()).value, 2.0);
}

TEST(Hst, Trivial) {
  const auto g = random_graph(9, 3, 0.4, 1);
  EXPECT_EQ(hst_stat(g, 9).value, static_cast<double>(g.edge_count()));
  EXPECT_EQ(hst_stat(UniformHypergraph(9, 3), 5).value, 0.0);
  EXPECT_EQ(hst_stat(g, 3).value, g.edge_count() > 0 ? 1.0 : 0.0);
  EXPECT_EQ(hst_stat(UniformHypergraph(9, 3), 3).value, 0.0);
}

TEST(Hst, WitnessAttainsValue) {
  const auto g = random_graph(11, 3, 0.3, 8);
  const auto v = hst_stat(g, 6);
  ASSERT_EQ(v.witness.size(), 6u);
  EXPECT_EQ(static_cast<double>(g.edges_within(v.witness)), v.value);
  EXPECT_EQ(v.aux.at("subsets"), static_cast<double>(binomial(11, 6)));
}

TEST(Hst, PlantedCliqueLowerBound) {
  PlantedModel model{14, 3, 6, 0.2, 1.0, {}};
  RngStream rng(5, 0);
  const auto g = sample_planted(model, rng);
  EXPECT_GE(hst_stat(g, 6).value, 20.0);
}

TEST(Hst, MatchesOracle) {
  RngStream pick(123, 0);
  for (int i = 0; i < 100; ++i) {
    const std::uint32_t m = 2 + pick.uniform_below(2);
    const std::uint32_t N = 7 + pick.uniform_below(6);
    const std::uint32_t n = m + pick.uniform_below(7 - m);
    const double p = 0.1 + 0.8 * pick.uniform01();
    const auto g = random_graph(N, m, p, 1000 + i);
    ASSERT_EQ(hst_stat(g, n).value, hst_oracle(g, n).value) << N << ' ' << m << ' ' << n;
  }
  const auto g = random_graph(10, 2, 0.4, 77);
  EXPECT_EQ(hst_stat(g, 4).value, hst_oracle(g, 4).value);
}

TEST(Hst, BudgetAndRange) {
  const auto g = random_graph(20, 3, 0.2, 2);
  EXPECT_THROW(hst_stat(g, 10, 1000), BudgetError);
  EXPECT_THROW(hst_stat(g, 2), DomainError);
  EXPECT_THROW(hst_stat(g, 21), DomainError);
}

TEST(HstGreedy, LowerBoundOfExact) {
  for (int i = 0; i < 30; ++i) {
    const std::uint32_t m = 2 + i % 2;
    const auto g = random_graph(12, m, 0.35, 400 + i);
    RngStream rng(1, i);
    const auto greedy = hst_stat_greedy(g, 5, 4, rng);
    EXPECT_TRUE(greedy.approximate);
    EXPECT_LE(greedy.value, hst_oracle(g, 5).value);
    EXPECT_EQ(static_cast<double>(g.edges_within(greedy.witness)), greedy.value);
  }
}

TEST(HstGreedy, FindsPlantedClique) {
  PlantedModel model{40, 2, 10, 0.05, 1.0, {}};
  for (int r = 0; r < 20; ++r) {
    RngStream sample(31, r);
    const auto g = sample_planted(model, sample);
    RngStream rng(32, r);
    const auto v = hst_stat_greedy(g, 10, 8, rng);
    EXPECT_EQ(v.value, 45.0) << r;
  }
}

TEST(HstGreedy, FullScanIsExact) {
  const auto g = random_graph(9, 3, 0.4, 3);
  RngStream rng(1, 1);
  const auto v = hst_stat_greedy(g, 9, 2, rng);
  EXPECT_EQ(v.value, static_cast<double>(g.edge_count()));
  EXPECT_FALSE(v.approximate);
}

// Any n-subset inducing C(n,m) edges, by exhaustive search.
bool brute_clique(const UniformHypergraph& g, std::uint32_t n) {
  std::vector<Vertex> s(n);
  std::iota(s.begin(), s.end(), Vertex{0});
  do {
    if (g.edges_within(s) == binomial(n, g.arity())) return true;
  } while (next_lex(s, g.num_vertices()));
  return false;
}

TEST(Hcnt, Trivial) {
  EXPECT_EQ(hcnt_has_clique(complete_graph(8, 3), 6).value, 1.0);
  EXPECT_EQ(hcnt_has_clique(complete_graph(8, 3), 8).value, 1.0);
  EXPECT_EQ(hcnt_has_clique(UniformHypergraph(8, 3), 3).value, 0.0);
  EXPECT_EQ(hcnt_has_clique(UniformHypergraph(8, 3), 5).value, 0.0);
}

TEST(Hcnt, MatchesBruteForce) {
  for (int i = 0; i < 60; ++i) {
    const std::uint32_t m = 2 + i % 3;
    const double p = m == 2 ? 0.5 : 0.7;
    const auto g = random_graph(10, m, p, 600 + i);
    for (std::uint32_t n = m; n <= 7; ++n) {
      ASSERT_EQ(hcnt_has_clique(g, n).value == 1.0, brute_clique(g, n))
          << "m=" << m << " n=" << n << " i=" << i;
    }
  }
}

TEST(Hcnt, PlantedCliqueAlwaysFound) {
  PlantedModel model{30, 3, 8, 0.3, 1.0, {}};
  for (int r = 0; r < 10; ++r) {
    RngStream rng(6, r);
    const auto v = hcnt_has_clique(sample_planted(model, rng), 8);
    EXPECT_EQ(v.value, 1.0);
    EXPECT_EQ(v.witness.size(), 8u);
  }
}

TEST(Hcnt, CliqueNumber) {
  EXPECT_EQ(clique_number(complete_graph(7, 3)), 7u);
  EXPECT_EQ(clique_number(UniformHypergraph(7, 3)), 2u);
  EXPECT_EQ(clique_number(path3()), 2u);
  EXPECT_EQ(clique_number(make_graph(4, 2, {{0, 1}, {0, 2}, {1, 2}, {2, 3}})), 3u);
}

TEST(P0Hat, Values) {
  EXPECT_EQ(p0_hat(complete_graph(6, 3)), 1.0);
  EXPECT_EQ(p0_hat(UniformHypergraph(6, 3)), 0.0);
  EXPECT_DOUBLE_EQ(p0_hat(path3()), 2.0 / 3.0);
}

TEST(StarCount, Values) {
  EXPECT_EQ(vertex_star_count(path3(), 1), 2u);
  EXPECT_EQ(vertex_star_count(complete_graph(5, 3), 0), 12u);
  auto g = make_graph(6, 3, {{0, 1, 2}, {0, 1, 3}, {0, 4, 5}, {0, 2, 5}, {1, 2, 3}});
  EXPECT_EQ(g.degree(0), 4u);
  EXPECT_EQ(vertex_star_count(g, 0), 8u);
  EXPECT_THROW(vertex_star_count(g, 6), RangeError);
  const auto h = random_graph(7, 3, 0.5, 4);
  for (Vertex v = 0; v < 7; ++v) EXPECT_EQ(vertex_star_count(h, v), ordered_star(h, v));
}

TEST(Hl2pt, PathExample) {
  const auto v = hl2pt_stat(path3());
  EXPECT_NEAR(v.aux.at("V1"), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(v.aux.at("V2"), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(v.value, 0.0, 1e-12);
  EXPECT_FALSE(v.degenerate);
}

TEST(Hl2pt, Degenerate) {
  const auto v = hl2pt_stat(complete_graph(8, 3));
  EXPECT_TRUE(v.degenerate);
  EXPECT_EQ(v.value, 0.0);
  EXPECT_THROW(hl2pt_stat(random_graph(6, 3, 0.5, 1)), DomainError);
  EXPECT_NO_THROW(hl2pt_stat(random_graph(6, 3, 0.5, 1), {StarVarianceDenominator::NMinusM}));
}

TEST(Hl2pt, PerTermEvaluator) {
  for (std::uint32_t m : {2u, 3u}) {
    const auto g = random_graph(9, m, 0.4, 40 + m);
    const double phat = p0_hat(g);
    const double total = binomial_real(9, m);
    const double per_vertex = factorial(m - 1) * binomial_real(8, m - 1);
    double v2 = 0.0;
    for (Vertex v = 0; v < 9; ++v) v2 += std::pow(ordered_star(g, v) - per_vertex * phat, 2);
    v2 /= 9.0 - factorial(m);
    const double v1 = per_vertex * total / (total - 1) * phat * (1 - phat);
    const auto s = hl2pt_stat(g);
    EXPECT_NEAR(s.aux.at("V1"), v1, 1e-9);
    EXPECT_NEAR(s.aux.at("V2"), v2, 1e-9);
    EXPECT_NEAR(s.value, (v2 - v1) / (std::pow(9.0, (2.0 * m - 3) / 2) * phat), 1e-9);
  }
}

TEST(Hl2pt, DegreeVarianceForGraphs) {
  for (int i = 0; i < 20; ++i) {
    const std::uint32_t N = 5 + i % 6;
    const auto g = random_graph(N, 2, 0.45, 70 + i);
    const double phat = p0_hat(g);
    if (phat == 0.0 || phat == 1.0) continue;
    double var = 0.0;
    for (auto d : g.degrees()) var += std::pow(d - (N - 1) * phat, 2);
    var /= N - 2.0;
    EXPECT_NEAR(hl2pt_stat(g).aux.at("V2"), var, 1e-9);
  }
}

// With the true rate substituted, E V2 = N/(N - m!) (m-1)!^2 C(N-1,m-1) p(1-p)
// while V1 carries a single (m-1)! factor.
TEST(Hl2pt, NullExpectationOfV2) {
  const std::uint32_t N = 12, m = 3;
  const double p = 0.3;
  const int reps = 4000;
  double sum = 0.0, sum2 = 0.0;
  for (int r = 0; r < reps; ++r) {
    const auto g = random_graph(N, m, p, 88, r);
    const double v2 = loose_path_moments(g, p).v2;
    sum += v2;
    sum2 += v2 * v2;
  }
  const double mean = sum / reps;
  const double se = std::sqrt((sum2 / reps - mean * mean) / reps);
  const double expected = N / (N - 6.0) * 4.0 * binomial_real(N - 1, m - 1) * p * (1 - p);
  EXPECT_NEAR(mean, expected, 4 * se);
}

TEST(Ht2pt, PathExample) {
  const auto g = path3();
  const double phat = 2.0 / 3.0;
  EXPECT_NEAR(tight_path_numerator(g, phat), -2.0 / 3.0, 1e-12);
  EXPECT_NEAR(ht2pt_numerator_oracle(g, phat), -2.0 / 3.0, 1e-12);
  const auto v = ht2pt_stat(g);
  EXPECT_NEAR(v.aux.at("denominator"), 0.544331, 1e-6);
  EXPECT_NEAR(v.value, -1.224745, 1e-6);
}

TEST(Ht2pt, TriangleRawCount) {
  const auto g = complete_graph(3, 2);
  EXPECT_DOUBLE_EQ(tight_path_numerator(g, 0.0), 6.0);
  EXPECT_DOUBLE_EQ(ht2pt_numerator_oracle(g, 0.0), 6.0);
}

TEST(Ht2pt, Degenerate) {
  const auto v = ht2pt_stat(UniformHypergraph(6, 3));
  EXPECT_TRUE(v.degenerate);
  EXPECT_EQ(v.value, 0.0);
  EXPECT_EQ(ht2pt_numerator_oracle(UniformHypergraph(6, 3), 0.0), 0.0);
  EXPECT_THROW(ht2pt_stat(UniformHypergraph(3, 3)), DomainError);
}

TEST(Ht2pt, MatchesOracle) {
  RngStream pick(5, 5);
  for (int i = 0; i < 50; ++i) {
    const std::uint32_t m = 2 + i % 2;
    const std::uint32_t N = 5 + pick.uniform_below(3);
    const auto g = random_graph(N, m, 0.2 + 0.6 * pick.uniform01(), 900 + i);
    const double p = p0_hat(g);
    const double fast = tight_path_numerator(g, p);
    const double slow = ht2pt_numerator_oracle(g, p);
    EXPECT_NEAR(fast, slow, 1e-9 * std::max(1.0, std::abs(slow))) << N << ' ' << m;
  }
}

TEST(Ht2pt, RawCountIsOverlapPairs) {
  for (std::uint32_t m : {2u, 3u, 4u}) {
    for (int i = 0; i < 5; ++i) {
      const auto g = random_graph(8, m, 0.4, 10 * m + i);
      const double pairs = edge_pair_overlap_count(g, m - 1);
      EXPECT_DOUBLE_EQ(tight_path_numerator(g, 0.0), 2.0 * factorial(m - 1) * pairs);
    }
  }
}

TEST(Ht2pt, LooseEqualsTightForGraphs) {
  for (std::uint32_t N = 4; N <= 8; ++N) {
    const auto g = random_graph(N, 2, 0.5, 300 + N);
    EXPECT_EQ(edge_pair_overlap_count(g, 1), edge_pair_overlap_count(g, 2 - 1));
    EXPECT_DOUBLE_EQ(tight_path_numerator(g, 0.0) / 2.0,
                     static_cast<double>(edge_pair_overlap_count(g, 1)));
    double wedges = 0;
    for (auto d : g.degrees()) wedges += d * (d - 1.0) / 2.0;
    EXPECT_DOUBLE_EQ(wedges, static_cast<double>(edge_pair_overlap_count(g, 1)));
  }
}

// Centered at the true rate, the numerator is 2 (m-1)! times a sum of
// uncorrelated products over overlapping edge pairs, so the standardized
// statistic has null variance exactly 2 (m-1)!.
TEST(Ht2pt, NullVarianceAtTrueRate) {
  const std::uint32_t N = 10, m = 3;
  const double p = 0.3;
  const int reps = 4000;
  const double denom = std::sqrt(24.0 * binomial_real(N, 4)) * p * (1 - p);
  double sum = 0.0, sum2 = 0.0;
  for (int r = 0; r < reps; ++r) {
    const double t = tight_path_numerator(random_graph(N, m, p, 515, r), p) / denom;
    sum += t;
    sum2 += t * t;
  }
  const double mean = sum / reps;
  const double var = sum2 / reps - mean * mean;
  EXPECT_NEAR(mean, 0.0, 4 * std::sqrt(var / reps));
  EXPECT_NEAR(var / 4.0, 1.0, 0.1);
}

TEST(Statistics, PermutationInvariance) {
  const auto g = random_graph(9, 3, 0.4, 12);
  std::vector<Vertex> perm{4, 8, 1, 0, 6, 2, 7, 5, 3};
  const auto h = g.permuted(perm);
  EXPECT_EQ(htdt_stat(g).value, htdt_stat(h).value);
  EXPECT_EQ(hst_stat(g, 5).value, hst_stat(h, 5).value);
  EXPECT_EQ(hcnt_has_clique(g, 4).value, hcnt_has_clique(h, 4).value);
  EXPECT_NEAR(hl2pt_stat(g).value, hl2pt_stat(h).value, 1e-12);
  EXPECT_NEAR(ht2pt_stat(g).value, ht2pt_stat(h).value, 1e-12);
}

TEST(Statistics, NameParsing) {
  EXPECT_EQ(parse_stat_name("hst"), StatName::HST);
  EXPECT_EQ(parse_stat_name("HL2-PT"), StatName::HL2PT);
  EXPECT_EQ(parse_stat_name("ht2pt"), StatName::HT2PT);
  EXPECT_EQ(to_string(StatName::HCNT), "HCNT");
  EXPECT_THROW(parse_stat_name("foo"), ConfigError);
}

}  // namespace
}  // namespace hyperdet
