#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dirlap/functions.hpp"
#include "dirlap/graph.hpp"
#include "dirlap/operators.hpp"

namespace dirlap {

/// Which arc weight plays the role of m in l2(A, m) and in the conservation
/// law: the stored graph weight, or the capacity.
enum class ArcMeasure { weight, capacity };

struct CapacityNetwork {
  WeightedDigraph graph;          ///< vertex weights 1
  std::vector<double> capacity;   ///< per arc, in arc order
  VertexSubset sources;           ///< V0
  VertexSubset sinks;             ///< V1

  /// Same digraph with the capacities as arc weights.
  WeightedDigraph capacity_graph() const;
  /// W = V0 u V1
  VertexSubset boundary() const;
  WeightedDigraph measured(ArcMeasure measure) const;
};

/// Validates a network. Vertex weights other than 1 are reset to 1 with a
/// warning appended to `warnings`.
CapacityNetwork make_network(const WeightedDigraph& g, std::vector<double> capacity,
                             const std::vector<std::string>& sources, const std::vector<std::string>& sinks,
                             std::vector<std::string>* warnings = nullptr);

/// Graph format plus optional per-arc "capacity" (default: the arc weight)
/// and top-level "sources" / "sinks" id arrays.
CapacityNetwork parse_network(std::string_view text, std::vector<std::string>* warnings = nullptr);

/// Orthonormal basis of ker d* in l2(A, m).
std::vector<ArcFunction> circulation_space(const WeightedDigraph& g);

/// Orthonormal basis of ker d0* (Dirichlet conditions on V0 u V1), as arc
/// functions on net.measured(measure).
std::vector<ArcFunction> flow_space(const CapacityNetwork& net, ArcMeasure measure = ArcMeasure::weight);

bool is_circulation(const WeightedDigraph& g, const ArcFunction& eta, double tol);
bool is_flow(const CapacityNetwork& net, const ArcFunction& eta, double tol, ArcMeasure measure = ArcMeasure::weight);

/// |<eta, d phi>| in l2(A, m)
double orthogonality_check(const WeightedDigraph& g, const ArcFunction& eta, const VertexFunction& phi);
/// |<eta, d0 phi0>| in l2(A, m) of net.measured(measure)
double orthogonality_check(const CapacityNetwork& net, const ArcFunction& eta, const InteriorFunction& phi0,
                           ArcMeasure measure = ArcMeasure::weight);

struct CutCapacity {
  double value = 0.0;
  double by_sum = 0.0;
  double by_quadratic_form = 0.0;
};

/// Capacity of the out-cut A(X, X^c), directly and as <1_X, L- 1_X> with
/// capacities as arc weights. Requires V0 in X and V1 outside X.
CutCapacity cut_capacity(const CapacityNetwork& net, const VertexSubset& x);

struct FlowValue {
  double value = 0.0;
  double by_sum = 0.0;
  double by_inner_product = 0.0;
};

/// Net flow out of x, as a sum over the arcs leaving x and as
/// -<d 1_x, eta / c> in l2(A, c). eta must be a flow (graph-weight
/// conservation) and x a member of V0 without entering arcs.
FlowValue flow_value(const CapacityNetwork& net, const ArcFunction& eta, std::string_view x);

/// Flow across the cut: sum over A(X, X^c) minus sum over A(X^c, X).
double cut_flow(const CapacityNetwork& net, const ArcFunction& eta, const VertexSubset& x);

/// 0 <= eta(a) <= c(a) for every arc, with real eta.
bool is_feasible(const CapacityNetwork& net, const ArcFunction& eta);

/// Single-terminal reduction: new vertex `x_id` with an arc to every member of
/// V0 and new vertex `y_id` with an arc from every member of V1. Each new arc
/// has weight 1 and capacity equal to the total capacity leaving (entering)
/// the terminal it connects, or 1 when that total is zero.
CapacityNetwork add_super_terminals(const CapacityNetwork& net, const std::string& x_id = "x*",
                                    const std::string& y_id = "y*");

}  // namespace dirlap
