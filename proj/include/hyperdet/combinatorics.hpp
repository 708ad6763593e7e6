#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace hyperdet {

using Vertex = std::uint32_t;

// A k-subset of vertices stored as a strictly increasing sequence of 0-based
// indices. Construction validates the ordering; the ambient vertex count is
// checked by whoever consumes the key.
class SubsetKey {
 public:
  SubsetKey() = default;
  explicit SubsetKey(std::vector<Vertex> vertices);
  SubsetKey(std::initializer_list<Vertex> vertices);

  // Sorts and validates distinctness instead of rejecting unsorted input.
  static SubsetKey from_unsorted(std::vector<Vertex> vertices);

  std::span<const Vertex> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  Vertex operator[](std::size_t i) const { return vertices_[i]; }
  bool contains(Vertex v) const;

  std::string to_string() const;

  friend bool operator==(const SubsetKey&, const SubsetKey&) = default;
  friend auto operator<=>(const SubsetKey&, const SubsetKey&) = default;

 private:
  std::vector<Vertex> vertices_;
};

// Exact binomial coefficient. Returns 0 for k > n and throws OverflowError
// when the result does not fit in 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// n (n-1) ... (n-k+1); 1 for k = 0. Throws OverflowError.
std::uint64_t falling_factorial(std::uint64_t n, std::uint64_t k);

std::uint64_t factorial(std::uint64_t n);

// Binomial coefficients as a double, for formulas that only need real values
// and may exceed the exact integer range.
double binomial_real(double n, double k);

// Pascal table C(i, j) for 0 <= i <= max_n, 0 <= j <= max_k. Used by the hot
// ranking loops so they never call the checked routine.
class BinomialTable {
 public:
  BinomialTable(std::uint32_t max_n, std::uint32_t max_k);

  std::uint64_t operator()(std::uint32_t n, std::uint32_t k) const {
    if (k > max_k_ || n > max_n_) return 0;
    return table_[static_cast<std::size_t>(n) * (max_k_ + 1) + k];
  }
  std::uint32_t max_n() const { return max_n_; }
  std::uint32_t max_k() const { return max_k_; }

 private:
  std::uint32_t max_n_;
  std::uint32_t max_k_;
  std::vector<std::uint64_t> table_;
};

// Colexicographic rank: sum_j C(s_j, j+1) over sorted entries s_0 < ... .
std::uint64_t colex_rank(std::span<const Vertex> sorted);
std::uint64_t colex_rank(const SubsetKey& key);
SubsetKey colex_unrank(std::uint64_t rank, std::uint32_t k);

// Advances a strictly increasing k-subset of [0, n) to its colex successor.
// Returns false (leaving the input untouched) when it is the last one.
bool next_colex(std::span<Vertex> subset, std::uint32_t n);

// Same contract as next_colex for lexicographic order.
bool next_lex(std::span<Vertex> subset, std::uint32_t n);

// Bernoulli KL divergence H_p(q) = q log(q/p) + (1-q) log((1-q)/(1-p)),
// natural logs, 0 log 0 := 0. Requires p in (0,1), q in [0,1].
double kl_bernoulli(double p, double q);

// The q in [p, 1] with H_p(q) = t, found by bisection on the increasing branch.
// Returns 1 when t >= log(1/p).
double kl_inverse_upper(double p, double t);

inline constexpr double kKlInverseTolerance = 1e-12;
inline constexpr int kKlInverseMaxIterations = 200;

}  // namespace hyperdet
