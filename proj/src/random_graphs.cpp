#include "dirlap/random_graphs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace dirlap::random {

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

bool coin(std::mt19937_64& rng, double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; }

std::size_t pick_order(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::vector<Vertex> numbered_vertices(std::size_t n, const std::string& prefix = "v") {
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({prefix + std::to_string(i + 1), 1.0});
  return out;
}

}  // namespace

WeightedDigraph random_digraph(std::mt19937_64& rng, const DigraphOptions& o) {
  const std::size_t n = pick_order(rng, o.min_order, o.max_order);
  const double density = std::uniform_real_distribution<double>(0.0, o.max_density)(rng);
  std::vector<Vertex> vertices = numbered_vertices(n);
  if (o.weighted_vertices)
    for (Vertex& v : vertices) v.weight = log_uniform(rng, o.min_weight, o.max_weight);

  std::vector<Arc> arcs;
  auto add = [&](std::size_t t, std::size_t h) {
    arcs.push_back({"a" + std::to_string(arcs.size() + 1), t, h, log_uniform(rng, o.min_weight, o.max_weight)});
  };
  for (std::size_t t = 0; t < n; ++t) {
    if (coin(rng, o.loop_probability)) add(t, t);
    for (std::size_t h = 0; h < n; ++h) {
      if (h == t || !coin(rng, density)) continue;
      add(t, h);
      if (coin(rng, o.parallel_probability)) add(t, h);
    }
  }
  return WeightedDigraph(std::move(vertices), std::move(arcs));
}

WeightedDigraph random_dag(std::mt19937_64& rng, std::size_t max_order, double max_density,
                           double parallel_probability) {
  const std::size_t n = pick_order(rng, 1, max_order);
  const double density = std::uniform_real_distribution<double>(0.0, max_density)(rng);
  std::vector<std::size_t> rank(n);
  std::iota(rank.begin(), rank.end(), 0);
  std::shuffle(rank.begin(), rank.end(), rng);
  std::vector<Arc> arcs;
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t h = 0; h < n; ++h) {
      if (rank[t] >= rank[h] || !coin(rng, density)) continue;
      arcs.push_back({"a" + std::to_string(arcs.size() + 1), t, h, 1.0});
      if (coin(rng, parallel_probability)) arcs.push_back({"a" + std::to_string(arcs.size() + 1), t, h, 1.0});
    }
  }
  return WeightedDigraph(numbered_vertices(n), std::move(arcs));
}

CapacityNetwork random_network(std::mt19937_64& rng, const NetworkOptions& o) {
  const std::size_t interior = pick_order(rng, 1, std::max<std::size_t>(1, o.max_order - 2));
  const double density = std::uniform_real_distribution<double>(0.0, o.max_density)(rng);
  std::vector<Vertex> vertices{{"x", 1.0}};
  for (const Vertex& v : numbered_vertices(interior)) vertices.push_back(v);
  vertices.push_back({"y", 1.0});
  const std::size_t x = 0;
  const std::size_t y = interior + 1;

  std::vector<Arc> arcs;
  auto add = [&](std::size_t t, std::size_t h) { arcs.push_back({"a" + std::to_string(arcs.size() + 1), t, h, 1.0}); };
  const std::size_t forced_in = std::uniform_int_distribution<std::size_t>(1, interior)(rng);
  const std::size_t forced_out = std::uniform_int_distribution<std::size_t>(1, interior)(rng);
  for (std::size_t v = 1; v <= interior; ++v)
    if (v == forced_in || coin(rng, 0.5)) add(x, v);
  for (std::size_t t = 1; t <= interior; ++t)
    for (std::size_t h = 1; h <= interior; ++h)
      if (t != h && coin(rng, density)) add(t, h);
  for (std::size_t v = 1; v <= interior; ++v)
    if (v == forced_out || coin(rng, 0.5)) add(v, y);

  std::vector<double> capacity;
  std::uniform_real_distribution<double> cap(o.min_capacity, o.max_capacity);
  for (std::size_t a = 0; a < arcs.size(); ++a) capacity.push_back(cap(rng));
  return make_network(WeightedDigraph(std::move(vertices), std::move(arcs)), std::move(capacity), {"x"}, {"y"});
}

}  // namespace dirlap::random
