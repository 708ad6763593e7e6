#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "hyperdet/combinatorics.hpp"

namespace hyperdet {

// m-uniform hypergraph on vertices [0, N). Edges live in a bitset indexed by
// colexicographic rank, so an edge is always the unordered vertex set.
//
// Mutable while it is being built, then shared read-only. There is no internal
// locking.
class UniformHypergraph {
 public:
  static constexpr std::uint64_t kDefaultCapacityCapBits = std::uint64_t{1} << 30;

  UniformHypergraph(std::uint32_t num_vertices, std::uint32_t arity,
                    std::uint64_t capacity_cap_bits = kDefaultCapacityCapBits);

  static UniformHypergraph new_empty(std::uint32_t num_vertices, std::uint32_t arity,
                                     std::uint64_t capacity_cap_bits = kDefaultCapacityCapBits) {
    return UniformHypergraph(num_vertices, arity, capacity_cap_bits);
  }

  std::uint32_t num_vertices() const { return num_vertices_; }
  std::uint32_t arity() const { return arity_; }
  std::uint64_t capacity() const { return capacity_; }
  std::uint64_t edge_count() const { return edge_count_; }

  void set_edge(const SubsetKey& key, bool present);
  bool has_edge(const SubsetKey& key) const;

  // Unchecked fast paths for kernels that already hold a valid rank.
  bool has_edge_rank(std::uint64_t rank) const {
    return (words_[rank >> 6] >> (rank & 63)) & 1u;
  }
  void set_edge_rank(std::uint64_t rank, bool present);

  // Colex rank of a sorted m-subset, without validation.
  std::uint64_t rank_unchecked(std::span<const Vertex> sorted) const {
    std::uint64_t r = 0;
    for (std::size_t j = 0; j < sorted.size(); ++j) r += (*binom_)(sorted[j], j + 1);
    return r;
  }
  bool has_edge_unchecked(std::span<const Vertex> sorted) const {
    return has_edge_rank(rank_unchecked(sorted));
  }

  std::vector<SubsetKey> edges() const;
  std::vector<std::uint64_t> edge_ranks() const;

  std::uint64_t degree(Vertex v) const;
  std::vector<std::uint64_t> degrees() const;

  // Number of edges whose vertices all lie in `subset`. Subsets smaller than
  // the arity contain no edge and give 0.
  std::uint64_t edges_within(std::span<const Vertex> subset) const;

  // Relabels vertex v as perm[v].
  UniformHypergraph permuted(std::span<const Vertex> perm) const;

  const BinomialTable& binomials() const { return *binom_; }
  std::span<const std::uint64_t> words() const { return words_; }

  friend bool operator==(const UniformHypergraph& a, const UniformHypergraph& b) {
    return a.num_vertices_ == b.num_vertices_ && a.arity_ == b.arity_ && a.words_ == b.words_;
  }

 private:
  void check_key(const SubsetKey& key) const;
  SubsetKey unrank(std::uint64_t rank) const;

  std::uint32_t num_vertices_;
  std::uint32_t arity_;
  std::uint64_t capacity_;
  std::uint64_t edge_count_ = 0;
  std::vector<std::uint64_t> words_;
  std::shared_ptr<const BinomialTable> binom_;
};

// Edge-list text format: a header line `# hypergraph N=<N> m=<m>` followed by
// one edge per non-empty line as m increasing 1-based vertex ids.
void write_edge_list(std::ostream& out, const UniformHypergraph& graph);
UniformHypergraph read_edge_list(
    std::istream& in,
    std::uint64_t capacity_cap_bits = UniformHypergraph::kDefaultCapacityCapBits);

}  // namespace hyperdet
