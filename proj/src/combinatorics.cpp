#include "hyperdet/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hyperdet/error.hpp"

namespace hyperdet {

namespace {

void require_strictly_increasing(const std::vector<Vertex>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] <= v[i - 1]) {
      throw InvalidSubsetError("subset is not strictly increasing at position " +
                               std::to_string(i));
    }
  }
}

}  // namespace

SubsetKey::SubsetKey(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  require_strictly_increasing(vertices_);
}

SubsetKey::SubsetKey(std::initializer_list<Vertex> vertices)
    : SubsetKey(std::vector<Vertex>(vertices)) {}

SubsetKey SubsetKey::from_unsorted(std::vector<Vertex> vertices) {
  std::sort(vertices.begin(), vertices.end());
  return SubsetKey(std::move(vertices));
}

bool SubsetKey::contains(Vertex v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

std::string SubsetKey::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (i) os << ',';
    os << vertices_[i];
  }
  os << '}';
  return os.str();
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  // After step i the accumulator holds C(n-k+i, i), always an integer.
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > std::numeric_limits<std::uint64_t>::max()) {
      throw OverflowError("binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                          ") overflows 64 bits");
    }
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t falling_factorial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t acc = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    if (__builtin_mul_overflow(acc, n - i, &acc)) {
      throw OverflowError("falling_factorial(" + std::to_string(n) + ", " +
                          std::to_string(k) + ") overflows 64 bits");
    }
  }
  return acc;
}

std::uint64_t factorial(std::uint64_t n) { return falling_factorial(n, n); }

double binomial_real(double n, double k) {
  if (k < 0 || k > n) return 0.0;
  if (n == std::floor(n) && k == std::floor(k) && n < 1e15) {
    try {
      return static_cast<double>(binomial(static_cast<std::uint64_t>(n),
                                          static_cast<std::uint64_t>(k)));
    } catch (const OverflowError&) {
    }
  }
  return std::exp(std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1));
}

BinomialTable::BinomialTable(std::uint32_t max_n, std::uint32_t max_k)
    : max_n_(max_n), max_k_(max_k),
      table_(static_cast<std::size_t>(max_n + 1) * (max_k + 1), 0) {
  const auto w = static_cast<std::size_t>(max_k_ + 1);
  for (std::uint32_t n = 0; n <= max_n_; ++n) {
    table_[n * w] = 1;
    for (std::uint32_t k = 1; k <= std::min(n, max_k_); ++k) {
      const std::uint64_t a = table_[(n - 1) * w + k - 1];
      const std::uint64_t b = k <= n - 1 ? table_[(n - 1) * w + k] : 0;
      std::uint64_t sum = 0;
      if (__builtin_add_overflow(a, b, &sum)) {
        throw OverflowError("binomial table entry C(" + std::to_string(n) + ", " +
                            std::to_string(k) + ") overflows 64 bits");
      }
      table_[n * w + k] = sum;
    }
  }
}

std::uint64_t colex_rank(std::span<const Vertex> sorted) {
  std::uint64_t rank = 0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    if (j > 0 && sorted[j] <= sorted[j - 1]) {
      throw InvalidSubsetError("colex_rank requires a strictly increasing subset");
    }
    rank += binomial(sorted[j], j + 1);
  }
  return rank;
}

std::uint64_t colex_rank(const SubsetKey& key) { return colex_rank(key.vertices()); }

SubsetKey colex_unrank(std::uint64_t rank, std::uint32_t k) {
  std::vector<Vertex> out(k);
  // Greedy from the top position: largest s with C(s, j) <= remaining rank.
  for (std::uint32_t j = k; j >= 1; --j) {
    Vertex s = j - 1;
    // Exponential search keeps this logarithmic for large ranks.
    Vertex hi = s + 1;
    while (binomial(hi, j) <= rank) hi = hi * 2;
    Vertex lo = s;  // C(lo, j) <= rank holds (C(j-1, j) = 0)
    while (hi - lo > 1) {
      const Vertex mid = lo + (hi - lo) / 2;
      if (binomial(mid, j) <= rank) lo = mid; else hi = mid;
    }
    out[j - 1] = lo;
    rank -= binomial(lo, j);
  }
  return SubsetKey(std::move(out));
}

bool next_colex(std::span<Vertex> subset, std::uint32_t n) {
  const std::size_t k = subset.size();
  for (std::size_t j = 0; j < k; ++j) {
    const Vertex limit = (j + 1 < k) ? subset[j + 1] : n;
    if (subset[j] + 1 < limit) {
      ++subset[j];
      for (std::size_t i = 0; i < j; ++i) subset[i] = static_cast<Vertex>(i);
      return true;
    }
  }
  return false;
}

bool next_lex(std::span<Vertex> subset, std::uint32_t n) {
  const std::size_t k = subset.size();
  for (std::size_t jj = k; jj-- > 0;) {
    if (subset[jj] < n - k + jj) {
      ++subset[jj];
      for (std::size_t i = jj + 1; i < k; ++i) subset[i] = subset[i - 1] + 1;
      return true;
    }
  }
  return false;
}

namespace {

void require_open_probability(double p, const char* where) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError(std::string(where) + ": p must lie in (0,1), got " + std::to_string(p));
  }
}

double xlogy_ratio(double x, double num, double den) {
  return x == 0.0 ? 0.0 : x * std::log(num / den);
}

}  // namespace

double kl_bernoulli(double p, double q) {
  require_open_probability(p, "kl_bernoulli");
  if (!(q >= 0.0 && q <= 1.0)) {
    throw DomainError("kl_bernoulli: q must lie in [0,1], got " + std::to_string(q));
  }
  const double value = xlogy_ratio(q, q, p) + xlogy_ratio(1.0 - q, 1.0 - q, 1.0 - p);
  return std::max(0.0, value);
}

double kl_inverse_upper(double p, double t) {
  require_open_probability(p, "kl_inverse_upper");
  if (!(t >= 0.0)) throw DomainError("kl_inverse_upper: t must be nonnegative");
  if (t == 0.0) return p;
  if (t >= std::log(1.0 / p)) return 1.0;
  double lo = p;
  double hi = 1.0;
  for (int it = 0; it < kKlInverseMaxIterations && hi - lo > kKlInverseTolerance; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (kl_bernoulli(p, mid) < t) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace hyperdet
