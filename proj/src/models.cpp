#include "hyperdet/models.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "hyperdet/error.hpp"

namespace hyperdet {

namespace {

void validate_shape(std::uint32_t num_vertices, std::uint32_t arity) {
  if (arity < 2) throw ConstructionError("arity m must be at least 2");
  if (arity > num_vertices) throw ConstructionError("arity m must not exceed N");
}

}  // namespace

void NullModel::validate() const {
  validate_shape(num_vertices, arity);
  if (!(p0 > 0.0 && p0 <= 1.0)) throw DomainError("null model requires p0 in (0,1]");
}

void PlantedModel::validate() const {
  validate_shape(num_vertices, arity);
  if (planted_size < arity || planted_size > num_vertices) {
    throw DomainError("planted size n must satisfy m <= n <= N");
  }
  // p1 == p0 is admitted so the planted sampler can reproduce the null.
  if (!(p0 > 0.0 && p0 <= p1 && p1 <= 1.0)) {
    throw DomainError("planted model requires 0 < p0 <= p1 <= 1");
  }
  if (!planted.empty()) {
    if (planted.size() != planted_size) throw DomainError("planted set size differs from n");
    std::vector<Vertex> sorted = planted;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw DomainError("planted set has repeated vertices");
    }
    if (sorted.back() >= num_vertices) throw DomainError("planted vertex outside [0, N)");
  }
}

std::vector<Vertex> PlantedModel::planted_set() const {
  if (!planted.empty()) {
    std::vector<Vertex> sorted = planted;
    std::sort(sorted.begin(), sorted.end());
    return sorted;
  }
  std::vector<Vertex> out(planted_size);
  std::iota(out.begin(), out.end(), Vertex{0});
  return out;
}

UniformHypergraph sample_null(const NullModel& model, RngStream& rng) {
  model.validate();
  UniformHypergraph graph(model.num_vertices, model.arity);
  const std::uint64_t total = graph.capacity();
  for (std::uint64_t r = 0; r < total; ++r) {
    if (rng.bernoulli(model.p0)) graph.set_edge_rank(r, true);
  }
  return graph;
}

UniformHypergraph sample_planted(const PlantedModel& model, RngStream& rng) {
  model.validate();
  UniformHypergraph graph(model.num_vertices, model.arity);
  std::vector<bool> in_planted(model.num_vertices, false);
  for (Vertex v : model.planted_set()) in_planted[v] = true;

  std::vector<Vertex> edge(model.arity);
  for (std::uint32_t i = 0; i < model.arity; ++i) edge[i] = i;
  std::uint64_t r = 0;
  do {
    const bool inside =
        std::all_of(edge.begin(), edge.end(), [&](Vertex v) { return in_planted[v]; });
    if (rng.bernoulli(inside ? model.p1 : model.p0)) graph.set_edge_rank(r, true);
    ++r;
  } while (next_colex(edge, model.num_vertices));
  return graph;
}

double calibrated_background(std::uint32_t num_vertices, std::uint32_t arity,
                             std::uint32_t planted_size, double p0, double p1) {
  if (planted_size >= num_vertices) {
    throw DomainError("calibrated background requires n < N");
  }
  if (!(p0 > 0.0 && p0 <= p1 && p1 <= 1.0)) {
    throw DomainError("calibrated background requires 0 < p0 <= p1 <= 1");
  }
  const double total = binomial_real(num_vertices, arity);
  const double inner = binomial_real(planted_size, arity);
  const double numerator = total * p0 - inner * p1;
  if (!(numerator > 0.0)) {
    throw CalibrationInfeasibleError(
        "calibration infeasible: C(N,m) p0 <= C(n,m) p1, so p0' would be non-positive");
  }
  return numerator / (total - inner);
}

}  // namespace hyperdet
