#pragma once

#include <cstdint>
#include <random>

#include "dirlap/flows.hpp"
#include "dirlap/graph.hpp"

namespace dirlap::random {

/// splitmix64 of seed combined with index; independent streams per task.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index);

struct DigraphOptions {
  std::size_t min_order = 1;
  std::size_t max_order = 12;
  double max_density = 0.5;
  double min_weight = 0.1;  ///< log-uniform on [min_weight, max_weight]
  double max_weight = 10.0;
  double loop_probability = 0.1;
  double parallel_probability = 0.1;
  bool weighted_vertices = true;
};

WeightedDigraph random_digraph(std::mt19937_64& rng, const DigraphOptions& options = {});

/// Acyclic digraph with combinatorial weights on a random hidden order.
WeightedDigraph random_dag(std::mt19937_64& rng, std::size_t max_order = 12, double max_density = 0.5,
                           double parallel_probability = 0.1);

struct NetworkOptions {
  std::size_t max_order = 10;  ///< including the two terminals
  double max_density = 0.5;
  double min_capacity = 0.5;
  double max_capacity = 20.0;
};

/// Unit arc weights, random capacities, terminal x with arcs into the
/// interior and terminal y with arcs out of it.
CapacityNetwork random_network(std::mt19937_64& rng, const NetworkOptions& options = {});

}  // namespace dirlap::random
