#pragma once

#include <cmath>
#include <complex>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include "dirlap/graph.hpp"
#include "dirlap/matrix.hpp"

namespace testing {

inline std::string fixture_path(const std::string& name) { return std::string(DIRLAP_FIXTURE_DIR) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline dirlap::WeightedDigraph load(const std::string& name) {
  return dirlap::parse_digraph(read_file(fixture_path(name)));
}

inline dirlap::WeightedDigraph digraph(std::vector<std::string> vertex_ids,
                                       const std::vector<std::pair<std::string, std::string>>& arcs) {
  std::vector<dirlap::Vertex> vs;
  for (auto& id : vertex_ids) vs.push_back({id, 1.0});
  std::vector<dirlap::WeightedDigraph::ArcSpec> as;
  for (std::size_t k = 0; k < arcs.size(); ++k)
    as.push_back({"a" + std::to_string(k + 1), arcs[k].first, arcs[k].second, 1.0});
  return dirlap::WeightedDigraph::from_ids(std::move(vs), as);
}

inline std::vector<std::string> ids(int n, const std::string& prefix = "v") {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

inline std::vector<std::complex<double>> random_complex(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> d;
  std::vector<std::complex<double>> out(n);
  for (auto& z : out) z = {d(rng), d(rng)};
  return out;
}

/// In/out Laplacian in the orthonormal basis, by applying the pointwise
/// formula (L phi)(v) = rel(v) phi(v) - (1/m(v)) sum_a phi(v_a) m(a) to the
/// vectors delta_w and reading off coordinates.
inline dirlap::Matrix pointwise_laplacian(const dirlap::WeightedDigraph& g, bool in) {
  const std::size_t n = g.order();
  dirlap::Matrix out(n, n);
  for (std::size_t w = 0; w < n; ++w) {
    std::vector<double> phi(n, 0.0);
    phi[w] = 1.0 / std::sqrt(g.vertex(w).weight);
    for (std::size_t v = 0; v < n; ++v) {
      double rel = 0.0, mean = 0.0;
      for (const auto& a : g.arcs()) {
        const std::size_t at = in ? a.head : a.tail;
        const std::size_t other = in ? a.tail : a.head;
        if (at != v) continue;
        rel += a.weight;
        mean += phi[other] * a.weight;
      }
      const double value = (rel * phi[v] - mean) / g.vertex(v).weight;
      out(v, w) = value * std::sqrt(g.vertex(v).weight);
    }
  }
  return out;
}

/// Transitive closure by repeated relaxation; reach[i][j] means i reaches j.
inline std::vector<std::vector<bool>> closure(const dirlap::WeightedDigraph& g) {
  const std::size_t n = g.order();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = true;
  for (const auto& a : g.arcs()) r[a.tail][a.head] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (r[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (r[k][j]) r[i][j] = true;
  return r;
}

}  // namespace testing
