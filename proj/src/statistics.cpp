#include "hyperdet/statistics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include "hyperdet/error.hpp"

namespace hyperdet {

std::string to_string(StatName name) {
  switch (name) {
    case StatName::HTDT: return "HTDT";
    case StatName::HST: return "HST";
    case StatName::HCNT: return "HCNT";
    case StatName::HL2PT: return "HL2PT";
    case StatName::HT2PT: return "HT2PT";
  }
  return "?";
}

StatName parse_stat_name(std::string_view text) {
  std::string key;
  for (char c : text) {
    if (c != '-' && c != '_') key.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  for (StatName s : {StatName::HTDT, StatName::HST, StatName::HCNT, StatName::HL2PT,
                     StatName::HT2PT}) {
    if (key == to_string(s)) return s;
  }
  throw ConfigError("unknown statistic '" + std::string(text) + "'");
}

StatValue htdt_stat(const UniformHypergraph& graph) {
  StatValue out;
  out.name = StatName::HTDT;
  out.value = static_cast<double>(graph.edge_count());
  out.aux["W"] = out.value;
  return out;
}

double p0_hat(const UniformHypergraph& graph) {
  return static_cast<double>(graph.edge_count()) / static_cast<double>(graph.capacity());
}

std::uint64_t vertex_star_count(const UniformHypergraph& graph, Vertex v) {
  return factorial(graph.arity() - 1) * graph.degree(v);
}

namespace {

double star_denominator(const UniformHypergraph& graph, StarVarianceDenominator which) {
  const double n = graph.num_vertices();
  const double m = graph.arity();
  const double sub = which == StarVarianceDenominator::NMinusMFactorial
                         ? static_cast<double>(factorial(graph.arity()))
                         : m;
  return n - sub;
}

// Neumaier-compensated running sum; summation order is fixed by the caller.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) comp_ += (sum_ - t) + x;
    else comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

LoosePathMoments loose_path_moments(const UniformHypergraph& graph, double rate,
                                    LoosePathOptions options) {
  const double denom = star_denominator(graph, options.denominator);
  if (!(denom > 0.0)) {
    throw DomainError("loose 2-path statistic requires N larger than the star denominator offset");
  }
  const std::uint32_t m = graph.arity();
  const double n = graph.num_vertices();
  const double perms = static_cast<double>(factorial(m - 1));
  const double stars_per_vertex = perms * binomial_real(n - 1, m - 1);
  const double total = static_cast<double>(graph.capacity());

  LoosePathMoments out;
  out.v1 = stars_per_vertex * (total / (total - 1.0)) * rate * (1.0 - rate);
  const double center = stars_per_vertex * rate;
  CompensatedSum sum;
  for (std::uint64_t d : graph.degrees()) {
    const double dev = perms * static_cast<double>(d) - center;
    sum.add(dev * dev);
  }
  out.v2 = sum.value() / denom;
  return out;
}

StatValue hl2pt_stat(const UniformHypergraph& graph, LoosePathOptions options) {
  const double phat = p0_hat(graph);
  const LoosePathMoments mom = loose_path_moments(graph, phat, options);
  StatValue out;
  out.name = StatName::HL2PT;
  out.aux["p0_hat"] = phat;
  out.aux["V1"] = mom.v1;
  out.aux["V2"] = mom.v2;
  out.aux["star_denominator"] = star_denominator(graph, options.denominator);
  if (phat <= 0.0 || phat >= 1.0) {
    out.degenerate = true;
    out.value = 0.0;
    return out;
  }
  const double n = graph.num_vertices();
  const double m = graph.arity();
  out.value = (mom.v2 - mom.v1) / (std::pow(n, (2.0 * m - 3.0) / 2.0) * phat);
  return out;
}

double tight_path_numerator(const UniformHypergraph& graph, double rate) {
  const std::uint32_t n = graph.num_vertices();
  const std::uint32_t m = graph.arity();
  if (n < m + 1) throw DomainError("tight 2-path numerator requires N >= m + 1");
  const std::uint32_t k = m - 1;
  std::vector<Vertex> core(k);
  std::iota(core.begin(), core.end(), Vertex{0});
  std::vector<Vertex> edge(m);
  CompensatedSum total;
  do {
    double s = 0.0;
    double q = 0.0;
    std::size_t next_core = 0;
    for (Vertex u = 0; u < n; ++u) {
      if (next_core < k && core[next_core] == u) {
        ++next_core;
        continue;
      }
      // Merge u into the sorted core.
      std::size_t out = 0;
      bool placed = false;
      for (Vertex c : core) {
        if (!placed && u < c) {
          edge[out++] = u;
          placed = true;
        }
        edge[out++] = c;
      }
      if (!placed) edge[out++] = u;
      const double a = (graph.has_edge_unchecked(edge) ? 1.0 : 0.0) - rate;
      s += a;
      q += a * a;
    }
    total.add(s * s - q);
  } while (next_colex(core, n));
  return static_cast<double>(factorial(k)) * total.value();
}

double ht2pt_numerator_oracle(const UniformHypergraph& graph, double rate) {
  const std::uint32_t n = graph.num_vertices();
  const std::uint32_t m = graph.arity();
  if (n < m + 1) throw DomainError("tight 2-path numerator requires N >= m + 1");
  std::uint64_t tuples = 0;
  try {
    tuples = falling_factorial(n, m + 1);
  } catch (const OverflowError&) {
    tuples = kTightPathOracleLimit + 1;
  }
  if (tuples > kTightPathOracleLimit) {
    throw DomainError("ht2pt oracle is limited to " + std::to_string(kTightPathOracleLimit) +
                      " ordered tuples");
  }
  std::vector<Vertex> tuple(m + 1);
  std::vector<bool> used(n, false);
  std::vector<Vertex> first(m), second(m);
  double total = 0.0;
  // Iterative depth-first enumeration of ordered pairwise-distinct tuples.
  std::vector<Vertex> cursor(m + 1, 0);
  std::size_t depth = 0;
  cursor[0] = 0;
  while (true) {
    if (cursor[depth] >= n) {
      if (depth == 0) break;
      --depth;
      used[tuple[depth]] = false;
      ++cursor[depth];
      continue;
    }
    const Vertex v = cursor[depth];
    if (used[v]) {
      ++cursor[depth];
      continue;
    }
    tuple[depth] = v;
    if (depth == m) {
      std::copy(tuple.begin(), tuple.begin() + m, first.begin());
      std::copy(tuple.begin() + 1, tuple.end(), second.begin());
      std::sort(first.begin(), first.end());
      std::sort(second.begin(), second.end());
      const double a = (graph.has_edge_unchecked(first) ? 1.0 : 0.0) - rate;
      const double b = (graph.has_edge_unchecked(second) ? 1.0 : 0.0) - rate;
      total += a * b;
      ++cursor[depth];
      continue;
    }
    used[v] = true;
    ++depth;
    cursor[depth] = 0;
  }
  return total;
}

StatValue ht2pt_stat(const UniformHypergraph& graph) {
  const std::uint32_t n = graph.num_vertices();
  const std::uint32_t m = graph.arity();
  if (n < m + 1) throw DomainError("ht2pt requires N >= m + 1");
  const double phat = p0_hat(graph);
  StatValue out;
  out.name = StatName::HT2PT;
  out.aux["p0_hat"] = phat;
  if (phat <= 0.0 || phat >= 1.0) {
    out.degenerate = true;
    out.value = 0.0;
    return out;
  }
  const double numerator = tight_path_numerator(graph, phat);
  const double denominator =
      std::sqrt(static_cast<double>(factorial(m + 1)) * binomial_real(n, m + 1)) * phat *
      (1.0 - phat);
  out.aux["numerator"] = numerator;
  out.aux["denominator"] = denominator;
  out.value = numerator / denominator;
  return out;
}

std::uint64_t edge_pair_overlap_count(const UniformHypergraph& graph, std::uint32_t overlap) {
  const std::vector<SubsetKey> edges = graph.edges();
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const auto a = edges[i].vertices();
      const auto b = edges[j].vertices();
      std::size_t shared = 0, x = 0, y = 0;
      while (x < a.size() && y < b.size()) {
        if (a[x] == b[y]) {
          ++shared;
          ++x;
          ++y;
        } else if (a[x] < b[y]) {
          ++x;
        } else {
          ++y;
        }
      }
      count += shared == overlap;
    }
  }
  return count;
}

}  // namespace hyperdet
