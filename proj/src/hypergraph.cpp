#include "hyperdet/hypergraph.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "hyperdet/error.hpp"

namespace hyperdet {

UniformHypergraph::UniformHypergraph(std::uint32_t num_vertices, std::uint32_t arity,
                                     std::uint64_t capacity_cap_bits)
    : num_vertices_(num_vertices), arity_(arity) {
  if (arity < 2) throw ConstructionError("hypergraph arity must be at least 2");
  if (arity > num_vertices) {
    throw ConstructionError("hypergraph arity " + std::to_string(arity) +
                            " exceeds vertex count " + std::to_string(num_vertices));
  }
  try {
    capacity_ = binomial(num_vertices, arity);
  } catch (const OverflowError&) {
    throw ConstructionError("edge capacity C(N,m) overflows 64 bits");
  }
  if (capacity_ > capacity_cap_bits) {
    throw ConstructionError("edge capacity " + std::to_string(capacity_) +
                            " exceeds the memory cap of " + std::to_string(capacity_cap_bits) +
                            " bits");
  }
  words_.assign((capacity_ + 63) / 64, 0);
  binom_ = std::make_shared<const BinomialTable>(num_vertices, arity);
}

void UniformHypergraph::check_key(const SubsetKey& key) const {
  if (key.size() != arity_) {
    throw InvalidSubsetError("edge " + key.to_string() + " has arity " +
                             std::to_string(key.size()) + ", expected " + std::to_string(arity_));
  }
  if (key[key.size() - 1] >= num_vertices_) {
    throw InvalidSubsetError("edge " + key.to_string() + " has a vertex outside [0, " +
                             std::to_string(num_vertices_) + ")");
  }
}

void UniformHypergraph::set_edge_rank(std::uint64_t rank, bool present) {
  std::uint64_t& w = words_[rank >> 6];
  const std::uint64_t bit = std::uint64_t{1} << (rank & 63);
  const bool was = (w & bit) != 0;
  if (present && !was) {
    w |= bit;
    ++edge_count_;
  } else if (!present && was) {
    w &= ~bit;
    --edge_count_;
  }
}

void UniformHypergraph::set_edge(const SubsetKey& key, bool present) {
  check_key(key);
  set_edge_rank(rank_unchecked(key.vertices()), present);
}

bool UniformHypergraph::has_edge(const SubsetKey& key) const {
  check_key(key);
  return has_edge_rank(rank_unchecked(key.vertices()));
}

SubsetKey UniformHypergraph::unrank(std::uint64_t rank) const {
  std::vector<Vertex> out(arity_);
  Vertex s = num_vertices_ - 1;
  for (std::uint32_t j = arity_; j >= 1; --j) {
    while ((*binom_)(s, j) > rank) --s;
    out[j - 1] = s;
    rank -= (*binom_)(s, j);
    if (s > 0) --s;
  }
  return SubsetKey(std::move(out));
}

std::vector<std::uint64_t> UniformHypergraph::edge_ranks() const {
  std::vector<std::uint64_t> out;
  out.reserve(edge_count_);
  for (std::size_t wi = 0; wi < words_.size(); ++wi) {
    std::uint64_t w = words_[wi];
    while (w) {
      out.push_back(wi * 64 + static_cast<std::uint64_t>(std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

std::vector<SubsetKey> UniformHypergraph::edges() const {
  std::vector<SubsetKey> out;
  out.reserve(edge_count_);
  for (std::uint64_t r : edge_ranks()) out.push_back(unrank(r));
  return out;
}

std::uint64_t UniformHypergraph::degree(Vertex v) const {
  if (v >= num_vertices_) {
    throw RangeError("vertex " + std::to_string(v) + " outside [0, " +
                     std::to_string(num_vertices_) + ")");
  }
  // Walk the (m-1)-subsets of [0, N-1) and splice v back in.
  const std::uint32_t k = arity_ - 1;
  std::vector<Vertex> others(k);
  for (std::uint32_t i = 0; i < k; ++i) others[i] = i;
  std::vector<Vertex> edge(arity_);
  std::uint64_t count = 0;
  do {
    std::size_t out = 0;
    bool placed = false;
    for (Vertex x : others) {
      const Vertex y = x < v ? x : x + 1;
      if (!placed && y > v) {
        edge[out++] = v;
        placed = true;
      }
      edge[out++] = y;
    }
    if (!placed) edge[out++] = v;
    count += has_edge_unchecked(edge);
  } while (next_colex(others, num_vertices_ - 1));
  return count;
}

std::vector<std::uint64_t> UniformHypergraph::degrees() const {
  std::vector<std::uint64_t> deg(num_vertices_, 0);
  for (std::uint64_t r : edge_ranks()) {
    const SubsetKey key = unrank(r);
    for (Vertex v : key.vertices()) ++deg[v];
  }
  return deg;
}

std::uint64_t UniformHypergraph::edges_within(std::span<const Vertex> subset) const {
  std::vector<Vertex> members(subset.begin(), subset.end());
  std::sort(members.begin(), members.end());
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] >= num_vertices_) {
      throw RangeError("vertex " + std::to_string(members[i]) + " outside the hypergraph");
    }
    if (i > 0 && members[i] == members[i - 1]) {
      throw InvalidSubsetError("vertex set contains a repeated vertex");
    }
  }
  if (members.size() < arity_) return 0;
  std::vector<Vertex> pick(arity_);
  for (std::uint32_t i = 0; i < arity_; ++i) pick[i] = i;
  std::vector<Vertex> edge(arity_);
  std::uint64_t count = 0;
  do {
    for (std::uint32_t i = 0; i < arity_; ++i) edge[i] = members[pick[i]];
    count += has_edge_unchecked(edge);
  } while (next_colex(pick, static_cast<std::uint32_t>(members.size())));
  return count;
}

UniformHypergraph UniformHypergraph::permuted(std::span<const Vertex> perm) const {
  if (perm.size() != num_vertices_) throw InvalidSubsetError("permutation has the wrong size");
  std::vector<bool> seen(num_vertices_, false);
  for (Vertex p : perm) {
    if (p >= num_vertices_ || seen[p]) throw InvalidSubsetError("not a permutation");
    seen[p] = true;
  }
  UniformHypergraph out(num_vertices_, arity_, capacity_);
  std::vector<Vertex> image(arity_);
  for (std::uint64_t r : edge_ranks()) {
    const SubsetKey e = unrank(r);
    for (std::uint32_t i = 0; i < arity_; ++i) image[i] = perm[e[i]];
    std::sort(image.begin(), image.end());
    out.set_edge_rank(out.rank_unchecked(image), true);
  }
  return out;
}

void write_edge_list(std::ostream& out, const UniformHypergraph& graph) {
  out << "# hypergraph N=" << graph.num_vertices() << " m=" << graph.arity() << '\n';
  for (const SubsetKey& e : graph.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i) out << ' ';
      out << e[i] + 1;
    }
    out << '\n';
  }
}

namespace {

std::uint64_t parse_header_field(const std::string& token, const std::string& name) {
  const std::string prefix = name + "=";
  if (token.rfind(prefix, 0) != 0) {
    throw ParseError("edge-list header: expected " + prefix + "<value>, got '" + token + "'");
  }
  const std::string digits = token.substr(prefix.size());
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError("edge-list header: bad value in '" + token + "'");
  }
  return std::stoull(digits);
}

}  // namespace

UniformHypergraph read_edge_list(std::istream& in, std::uint64_t capacity_cap_bits) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("edge-list: missing header line");
  std::istringstream header(line);
  std::string hash, word, n_tok, m_tok, extra;
  header >> hash >> word >> n_tok >> m_tok;
  if (hash != "#" || word != "hypergraph" || m_tok.empty() || (header >> extra)) {
    throw ParseError("edge-list: header must be '# hypergraph N=<N> m=<m>'");
  }
  const auto n = parse_header_field(n_tok, "N");
  const auto m = parse_header_field(m_tok, "m");
  if (n > 0xFFFFFFFFu || m > 0xFFFFFFFFu) throw ParseError("edge-list: header values too large");

  UniformHypergraph graph(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(m),
                          capacity_cap_bits);
  std::size_t line_no = 1;
  std::vector<Vertex> edge;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "edge-list line " + std::to_string(line_no) + ": ";
    std::istringstream row(line);
    edge.clear();
    std::string tok;
    while (row >> tok) {
      if (tok.find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError(where + "non-numeric vertex id '" + tok + "'");
      }
      const auto id = std::stoull(tok);
      if (id < 1 || id > n) throw ParseError(where + "vertex id " + tok + " out of range");
      edge.push_back(static_cast<Vertex>(id - 1));
    }
    if (edge.size() != m) {
      throw ParseError(where + "expected " + std::to_string(m) + " vertices, got " +
                       std::to_string(edge.size()));
    }
    for (std::size_t i = 1; i < edge.size(); ++i) {
      if (edge[i] <= edge[i - 1]) throw ParseError(where + "vertex ids must be increasing");
    }
    const std::uint64_t r = graph.rank_unchecked(edge);
    if (graph.has_edge_rank(r)) throw ParseError(where + "duplicate edge");
    graph.set_edge_rank(r, true);
  }
  return graph;
}

}  // namespace hyperdet
