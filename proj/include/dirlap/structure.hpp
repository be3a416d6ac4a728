#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "dirlap/functions.hpp"
#include "dirlap/graph.hpp"
#include "dirlap/operators.hpp"

namespace dirlap {

/// SCCs of g, ordered by smallest vertex index, members ascending.
std::vector<std::vector<std::size_t>> strongly_connected_components(const WeightedDigraph& g);

struct Condensation {
  std::vector<std::vector<std::size_t>> components;
  std::vector<std::size_t> component_of;  ///< vertex -> component index
  std::vector<std::vector<std::size_t>> successors;    ///< sorted, no duplicates
  std::vector<std::vector<std::size_t>> predecessors;  ///< sorted, no duplicates
  std::vector<std::size_t> topological_order;
  /// reachable[i][j]: j reachable from i (reflexive).
  std::vector<std::vector<bool>> reachable;

  std::size_t size() const noexcept { return components.size(); }
};

Condensation condense(const WeightedDigraph& g);

enum class SccClass { source, sink, source_and_sink, stream };
std::string_view to_string(SccClass c);

struct StructureReport {
  Condensation condensation;
  std::vector<SccClass> classification;
  bool strongly_connected = false;
  bool d_connected = false;
  bool acyclic = false;

  /// Component indices counted as sources (resp. sinks); source-and-sink
  /// components appear in both.
  std::vector<std::size_t> sources() const;
  std::vector<std::size_t> sinks() const;
  std::vector<std::size_t> stream() const;  ///< vertex indices
};

StructureReport classify(const WeightedDigraph& g);

bool is_d_connected(const WeightedDigraph& g);

struct ChainReport {
  std::vector<std::vector<std::size_t>> chains;  ///< vertex indices, ascending
  bool truncated = false;
};

inline constexpr std::size_t kDefaultChainLimit = 10000;

/// Maximal paths of the Hasse diagram of the condensation, each expanded to
/// the union of its components.
ChainReport maximal_chains(const WeightedDigraph& g, std::size_t limit = kDefaultChainLimit);

/// Number of (source, sink) pairs with the sink reachable from the source.
std::size_t directed_component_count(const WeightedDigraph& g);

/// Induced subgraph on reach(f) intersected with coreach(s). f must be a
/// source component and s a sink component of g.
WeightedDigraph directed_component(const WeightedDigraph& g, const VertexSubset& f, const VertexSubset& s);

OperatorMatrix compress(const OperatorMatrix& m, const VertexSubset& s);

struct SpectrumBlock {
  std::vector<std::size_t> vertices;
  SccClass role = SccClass::stream;  ///< source/sink for the blocks, stream for the rest
  std::vector<Complex> eigenvalues;
};

struct DecompositionReport {
  Orientation orientation = Orientation::out;
  std::vector<Complex> spectrum;
  std::vector<SpectrumBlock> blocks;
  std::vector<Complex> block_union;
  double distance = 0.0;
  double threshold = 0.0;
  bool ok = false;
};

/// Compares the spectrum of L+ (L-) with the union of its compressions to the
/// sources (sinks) and to the remaining vertices.
DecompositionReport spectrum_decomposition_check(const WeightedDigraph& g, Orientation orientation);

struct AcyclicLabeling {
  bool acyclic = false;
  std::vector<std::size_t> order;  ///< topological, ties by input order
  std::vector<std::size_t> cycle;  ///< v0 -> v1 -> ... -> v0 when cyclic
};

/// A loop counts as a directed cycle.
AcyclicLabeling acyclic_labeling(const WeightedDigraph& g);

bool kernel_mean_check(const WeightedDigraph& g, const VertexFunction& phi, Orientation orientation, double tol);

struct TheoremReport {
  std::size_t sources = 0;
  std::size_t sinks = 0;
  std::size_t mult0_in_algebraic = 0;
  std::size_t mult0_in_geometric = 0;
  std::size_t mult0_out_algebraic = 0;
  std::size_t mult0_out_geometric = 0;
  std::optional<std::size_t> exact_in_algebraic, exact_in_geometric, exact_out_algebraic, exact_out_geometric;
  double tolerance_in = 0.0;
  double tolerance_out = 0.0;
  bool rank_stable = true;
  bool agree = false;
  /// algebraic and geometric counts differ somewhere (a finding, not a failure)
  bool modes_differ = false;
  std::size_t directed_components = 0;
  bool zero_simple_for_both = false;
  bool corollary_holds = false;
};

TheoremReport verify_source_sink_theorem(const WeightedDigraph& g, std::optional<double> tol = std::nullopt,
                                         bool exact = false);

}  // namespace dirlap
