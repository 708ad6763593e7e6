// Scan statistic, greedy scan and clique search.

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "hyperdet/error.hpp"
#include "hyperdet/revolving_door.hpp"
#include "hyperdet/statistics.hpp"

namespace hyperdet {

namespace {

// Vertex subset kept both as a sorted list and, for N <= 64, a bitmask.
class VertexSet {
 public:
  explicit VertexSet(std::vector<Vertex> sorted) : sorted_(std::move(sorted)) {
    for (Vertex v : sorted_) mask_ |= bit(v);
  }
  void remove(Vertex v) {
    sorted_.erase(std::lower_bound(sorted_.begin(), sorted_.end(), v));
    mask_ &= ~bit(v);
  }
  void insert(Vertex v) {
    sorted_.insert(std::upper_bound(sorted_.begin(), sorted_.end(), v), v);
    mask_ |= bit(v);
  }
  bool contains(Vertex v) const {
    return std::binary_search(sorted_.begin(), sorted_.end(), v);
  }
  const std::vector<Vertex>& sorted() const { return sorted_; }
  std::uint64_t mask() const { return mask_; }

 private:
  static std::uint64_t bit(Vertex v) { return v < 64 ? std::uint64_t{1} << v : 0; }
  std::vector<Vertex> sorted_;
  std::uint64_t mask_ = 0;
};

// Counts edges x + D with D an (m-1)-subset of a set T not containing x.
class SetDegreeKernel {
 public:
  explicit SetDegreeKernel(const UniformHypergraph& graph)
      : graph_(graph), n_(graph.num_vertices()), m_(graph.arity()),
        use_masks_(n_ <= 64 && (m_ == 2 || m_ == 3)) {
    if (!use_masks_) return;
    if (m_ == 2) {
      masks_.assign(n_, 0);
      for (const SubsetKey& e : graph.edges()) {
        masks_[e[0]] |= std::uint64_t{1} << e[1];
        masks_[e[1]] |= std::uint64_t{1} << e[0];
      }
    } else {
      masks_.assign(static_cast<std::size_t>(n_) * n_, 0);
      for (const SubsetKey& e : graph.edges()) {
        const Vertex a = e[0], b = e[1], c = e[2];
        link(a, b) |= std::uint64_t{1} << c;
        link(a, c) |= std::uint64_t{1} << b;
        link(b, a) |= std::uint64_t{1} << c;
        link(b, c) |= std::uint64_t{1} << a;
        link(c, a) |= std::uint64_t{1} << b;
        link(c, b) |= std::uint64_t{1} << a;
      }
    }
  }

  std::uint64_t count(Vertex x, const VertexSet& set) const {
    if (use_masks_) {
      const std::uint64_t t = set.mask();
      if (m_ == 2) return static_cast<std::uint64_t>(std::popcount(masks_[x] & t));
      std::uint64_t twice = 0;
      std::uint64_t rest = t;
      const std::uint64_t* row = &masks_[static_cast<std::size_t>(x) * n_];
      while (rest) {
        const int a = std::countr_zero(rest);
        rest &= rest - 1;
        twice += static_cast<std::uint64_t>(std::popcount(row[a] & t));
      }
      return twice / 2;
    }
    return count_generic(x, set.sorted());
  }

 private:
  std::uint64_t& link(Vertex a, Vertex b) { return masks_[static_cast<std::size_t>(a) * n_ + b]; }

  std::uint64_t count_generic(Vertex x, const std::vector<Vertex>& members) const {
    const std::uint32_t k = m_ - 1;
    if (members.size() < k) return 0;
    std::vector<Vertex> pick(k);
    std::iota(pick.begin(), pick.end(), Vertex{0});
    std::vector<Vertex> edge(m_);
    std::uint64_t count = 0;
    do {
      std::size_t out = 0;
      bool placed = false;
      for (Vertex p : pick) {
        const Vertex y = members[p];
        if (!placed && y > x) {
          edge[out++] = x;
          placed = true;
        }
        edge[out++] = y;
      }
      if (!placed) edge[out++] = x;
      count += graph_.has_edge_unchecked(edge);
    } while (next_colex(pick, static_cast<std::uint32_t>(members.size())));
    return count;
  }

  const UniformHypergraph& graph_;
  std::uint32_t n_;
  std::uint32_t m_;
  bool use_masks_;
  std::vector<std::uint64_t> masks_;
};

void require_scan_size(const UniformHypergraph& graph, std::uint32_t n, const char* what) {
  if (n < graph.arity() || n > graph.num_vertices()) {
    throw DomainError(std::string(what) + ": size n must satisfy m <= n <= N");
  }
}

std::uint64_t subset_count_or_budget(std::uint32_t big, std::uint32_t small,
                                     std::uint64_t budget) {
  std::uint64_t total = 0;
  try {
    total = binomial(big, small);
  } catch (const OverflowError&) {
    throw BudgetError("scan over C(" + std::to_string(big) + ", " + std::to_string(small) +
                      ") subsets exceeds the enumeration budget");
  }
  if (total > budget) {
    throw BudgetError("scan over " + std::to_string(total) +
                      " subsets exceeds the enumeration budget of " + std::to_string(budget));
  }
  return total;
}

StatValue make_scan_value(std::uint64_t best, std::vector<Vertex> witness, double visited) {
  StatValue out;
  out.name = StatName::HST;
  out.value = static_cast<double>(best);
  out.aux["W_n"] = out.value;
  out.aux["subsets"] = visited;
  out.witness = std::move(witness);
  return out;
}

// Steepest-ascent single-swap climb. Returns the final induced edge count.
std::uint64_t climb(const UniformHypergraph& graph, const SetDegreeKernel& kernel,
                    VertexSet& set) {
  std::uint64_t value = graph.edges_within(set.sorted());
  const std::uint32_t num = graph.num_vertices();
  for (;;) {
    std::int64_t best_gain = 0;
    Vertex best_out = 0, best_in = 0;
    const std::vector<Vertex> members = set.sorted();
    for (Vertex out : members) {
      set.remove(out);
      const auto lost = static_cast<std::int64_t>(kernel.count(out, set));
      for (Vertex in = 0; in < num; ++in) {
        if (in == out || set.contains(in)) continue;
        const std::int64_t gain = static_cast<std::int64_t>(kernel.count(in, set)) - lost;
        if (gain > best_gain) {
          best_gain = gain;
          best_out = out;
          best_in = in;
        }
      }
      set.insert(out);
    }
    if (best_gain <= 0) return value;
    set.remove(best_out);
    set.insert(best_in);
    value += static_cast<std::uint64_t>(best_gain);
  }
}

}  // namespace

StatValue hst_stat(const UniformHypergraph& graph, std::uint32_t scan_size, std::uint64_t budget) {
  require_scan_size(graph, scan_size, "hst_stat");
  const std::uint32_t num = graph.num_vertices();
  const std::uint64_t total = subset_count_or_budget(num, scan_size, budget);

  RevolvingDoor door(num, scan_size);
  VertexSet set(door.initial());
  std::uint64_t current = graph.edges_within(set.sorted());
  std::uint64_t best = current;
  std::vector<Vertex> witness = set.sorted();
  if (scan_size == num) return make_scan_value(best, std::move(witness), 1.0);

  const SetDegreeKernel kernel(graph);
  Vertex removed = 0, inserted = 0;
  while (door.next(removed, inserted)) {
    set.remove(removed);
    current = current + kernel.count(inserted, set) - kernel.count(removed, set);
    set.insert(inserted);
    if (current > best) {
      best = current;
      witness = set.sorted();
    }
  }
  return make_scan_value(best, std::move(witness), static_cast<double>(total));
}

StatValue hst_oracle(const UniformHypergraph& graph, std::uint32_t scan_size) {
  require_scan_size(graph, scan_size, "hst_oracle");
  std::uint64_t total = 0;
  try {
    total = binomial(graph.num_vertices(), scan_size);
  } catch (const OverflowError&) {
    total = kScanOracleLimit + 1;
  }
  if (total > kScanOracleLimit) {
    throw DomainError("hst_oracle is limited to " + std::to_string(kScanOracleLimit) +
                      " subsets");
  }
  std::vector<Vertex> subset(scan_size);
  std::iota(subset.begin(), subset.end(), Vertex{0});
  std::uint64_t best = 0;
  std::vector<Vertex> witness = subset;
  bool first = true;
  do {
    const std::uint64_t w = graph.edges_within(subset);
    if (first || w > best) {
      best = w;
      witness = subset;
      first = false;
    }
  } while (next_lex(subset, graph.num_vertices()));
  return make_scan_value(best, std::move(witness), static_cast<double>(total));
}

StatValue hst_stat_greedy(const UniformHypergraph& graph, std::uint32_t scan_size,
                          std::uint32_t restarts, RngStream& rng) {
  require_scan_size(graph, scan_size, "hst_stat_greedy");
  const std::uint32_t num = graph.num_vertices();
  const SetDegreeKernel kernel(graph);

  const std::vector<std::uint64_t> deg = graph.degrees();
  std::vector<Vertex> order(num);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return deg[a] > deg[b]; });
  std::vector<Vertex> seed(order.begin(), order.begin() + scan_size);
  std::sort(seed.begin(), seed.end());

  VertexSet best_set(seed);
  std::uint64_t best = climb(graph, kernel, best_set);

  std::vector<Vertex> pool(num);
  for (std::uint32_t r = 0; r < restarts; ++r) {
    std::iota(pool.begin(), pool.end(), Vertex{0});
    for (std::uint32_t i = 0; i < scan_size; ++i) {
      const auto j = i + static_cast<std::uint32_t>(rng.uniform_below(num - i));
      std::swap(pool[i], pool[j]);
    }
    std::vector<Vertex> start(pool.begin(), pool.begin() + scan_size);
    std::sort(start.begin(), start.end());
    VertexSet set(std::move(start));
    const std::uint64_t value = climb(graph, kernel, set);
    if (value > best) {
      best = value;
      best_set = set;
    }
  }
  StatValue out = make_scan_value(best, best_set.sorted(), 0.0);
  out.aux.erase("subsets");
  out.aux["restarts"] = restarts;
  out.approximate = scan_size < num;
  return out;
}

namespace {

class CliqueSearch {
 public:
  CliqueSearch(const UniformHypergraph& graph, std::uint64_t budget)
      : graph_(graph), m_(graph.arity()), budget_(budget) {}

  // Depth-first extension of `partial` by candidates, all of which are
  // compatible with every (m-1)-subset of `partial`.
  bool extend(std::vector<Vertex>& partial, const std::vector<Vertex>& candidates,
              std::uint32_t target, std::uint32_t& best, std::vector<Vertex>& witness,
              bool stop_at_target) {
    if (++nodes_ > budget_) {
      throw BudgetError("clique search exceeded the enumeration budget of " +
                        std::to_string(budget_) + " nodes");
    }
    if (partial.size() > best) {
      best = static_cast<std::uint32_t>(partial.size());
      witness = partial;
      if (stop_at_target && best >= target) return true;
    }
    std::vector<Vertex> next;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (partial.size() + (candidates.size() - i) < std::max(target, best + 1)) break;
      const Vertex v = candidates[i];
      next.clear();
      for (std::size_t j = i + 1; j < candidates.size(); ++j) {
        if (closes_all(partial, v, candidates[j])) next.push_back(candidates[j]);
      }
      partial.push_back(v);
      const bool done = extend(partial, next, target, best, witness, stop_at_target);
      partial.pop_back();
      if (done) return true;
    }
    return false;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  // Every m-subset of partial + {v, w} that contains both v and w is an edge.
  bool closes_all(const std::vector<Vertex>& partial, Vertex v, Vertex w) {
    const std::uint32_t k = m_ - 2;
    if (partial.size() < k) return true;
    pick_.resize(k);
    std::iota(pick_.begin(), pick_.end(), Vertex{0});
    edge_.resize(m_);
    do {
      for (std::uint32_t i = 0; i < k; ++i) edge_[i] = partial[pick_[i]];
      edge_[k] = v;
      edge_[k + 1] = w;
      std::sort(edge_.begin(), edge_.end());
      if (!graph_.has_edge_unchecked(edge_)) return false;
    } while (k > 0 && next_colex(pick_, static_cast<std::uint32_t>(partial.size())));
    return true;
  }

  const UniformHypergraph& graph_;
  std::uint32_t m_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<Vertex> pick_;
  std::vector<Vertex> edge_;
};

// High-degree vertices first: planted cliques are found early.
std::vector<Vertex> degree_order(const UniformHypergraph& graph) {
  const std::vector<std::uint64_t> deg = graph.degrees();
  std::vector<Vertex> order(graph.num_vertices());
  std::iota(order.begin(), order.end(), Vertex{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return deg[a] > deg[b]; });
  return order;
}

}  // namespace

StatValue hcnt_has_clique(const UniformHypergraph& graph, std::uint32_t clique_size,
                          std::uint64_t budget) {
  require_scan_size(graph, clique_size, "hcnt_has_clique");
  CliqueSearch search(graph, budget);
  std::vector<Vertex> partial;
  std::vector<Vertex> witness;
  std::uint32_t best = 0;
  const bool found =
      search.extend(partial, degree_order(graph), clique_size, best, witness, true);
  StatValue out;
  out.name = StatName::HCNT;
  out.value = found ? 1.0 : 0.0;
  out.aux["nodes"] = static_cast<double>(search.nodes());
  if (found) {
    std::sort(witness.begin(), witness.end());
    out.witness = std::move(witness);
  }
  return out;
}

std::uint32_t clique_number(const UniformHypergraph& graph, std::uint64_t budget) {
  CliqueSearch search(graph, budget);
  std::vector<Vertex> partial;
  std::vector<Vertex> witness;
  std::uint32_t best = 0;
  search.extend(partial, degree_order(graph), 0, best, witness, false);
  return best;
}

}  // namespace hyperdet
