#pragma once

#include <cstdint>
#include <vector>

#include "hyperdet/hypergraph.hpp"
#include "hyperdet/rng.hpp"

namespace hyperdet {

// Erdos-Renyi m-uniform hypergraph: every potential edge independently
// present with probability p0.
struct NullModel {
  std::uint32_t num_vertices = 0;
  std::uint32_t arity = 2;
  double p0 = 0.5;

  void validate() const;
};

// Null model with a planted vertex set whose internal edges appear with the
// elevated rate p1. An empty `planted` means {0, ..., planted_size - 1}.
struct PlantedModel {
  std::uint32_t num_vertices = 0;
  std::uint32_t arity = 2;
  std::uint32_t planted_size = 0;
  double p0 = 0.1;
  double p1 = 0.5;
  std::vector<Vertex> planted;

  void validate() const;
  std::vector<Vertex> planted_set() const;
  NullModel null_model() const { return {num_vertices, arity, p0}; }
};

// Both samplers consume exactly one uniform per potential edge, visiting the
// edges in increasing colex rank.
UniformHypergraph sample_null(const NullModel& model, RngStream& rng);
UniformHypergraph sample_planted(const PlantedModel& model, RngStream& rng);

// Background rate p0' that gives the planted model the same expected edge
// count as the null: (C(N,m) p0 - C(n,m) p1) / (C(N,m) - C(n,m)).
double calibrated_background(std::uint32_t num_vertices, std::uint32_t arity,
                             std::uint32_t planted_size, double p0, double p1);

}  // namespace hyperdet
