#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dirlap/functions.hpp"
#include "dirlap/graph.hpp"
#include "dirlap/matrix.hpp"

namespace dirlap {

/// Sign convention: "+" is the in component (terminal vertex), "-" the out
/// component (initial vertex).
enum class OperatorKind { B_in, B_out, B, D_in, D_out, D, A_in, A_out, A, L_in, L_out, L };

inline constexpr std::array<OperatorKind, 12> kAllOperatorKinds = {
    OperatorKind::B_in, OperatorKind::B_out, OperatorKind::B,     OperatorKind::D_in,
    OperatorKind::D_out, OperatorKind::D,    OperatorKind::A_in,  OperatorKind::A_out,
    OperatorKind::A,    OperatorKind::L_in,  OperatorKind::L_out, OperatorKind::L};

std::string_view to_string(OperatorKind kind);  ///< "B+", "L-", ...
OperatorKind parse_operator_kind(std::string_view text);
/// Incidence kinds map vertex functions to arc functions; all others act on l2(V).
bool is_incidence(OperatorKind kind);

enum class FirstOrder { d_in, d_out, d };

/// Matrix of an operator in the basis {delta_v} (and {delta_a} for the rows of
/// incidence kinds), together with the basis orderings.
struct OperatorMatrix {
  OperatorKind kind = OperatorKind::L;
  Matrix entries;
  std::vector<std::string> row_ids;
  std::vector<std::string> col_ids;
  std::uint64_t graph = 0;

  bool vertex_type() const { return !is_incidence(kind); }
};

ArcFunction evaluate_first_order(const WeightedDigraph& g, FirstOrder kind, const VertexFunction& phi);
VertexFunction adjoint_first_order(const WeightedDigraph& g, FirstOrder kind, const ArcFunction& eta);

/// Entries from the closed forms: incidence entries +-sqrt(m(a)/m(w)),
/// adjacency entries m(A^+-(w,v))/sqrt(m(v)m(w)) with loops on the diagonal,
/// Laplacian diagonals with loops removed. Parallel arcs are aggregated.
OperatorMatrix assemble(const WeightedDigraph& g, OperatorKind kind);

/// Second assembly route through products of incidence matrices
/// (D = B^T B, A = -B^T B, L = B^T B with the matching signs).
OperatorMatrix assemble_by_composition(const WeightedDigraph& g, OperatorKind kind);

/// Function on V \ W for Dirichlet conditions on W.
struct InteriorFunction {
  VertexSubset domain;  ///< V \ W
  std::vector<Complex> values;
};

InteriorFunction interior_function(const WeightedDigraph& g, const VertexSubset& w,
                                   std::vector<Complex> values);

/// d_0 = d o iota: zero-extend phi0 from V \ W to V, then take the gradient.
ArcFunction dirichlet_gradient(const WeightedDigraph& g, const VertexSubset& w, const InteriorFunction& phi0);
/// d_0^* = iota^* o d^*: divergence restricted to V \ W.
InteriorFunction dirichlet_divergence(const WeightedDigraph& g, const VertexSubset& w, const ArcFunction& eta);
/// <phi, psi> in l2(V \ W, m)
Complex inner(const WeightedDigraph& g, const InteriorFunction& phi, const InteriorFunction& psi);

/// Matrix of d^* (|V| x |A|) in the orthonormal bases, i.e. B transposed.
Matrix divergence_matrix(const WeightedDigraph& g);
/// d^* matrix with the rows of W removed.
Matrix dirichlet_divergence_matrix(const WeightedDigraph& g, const VertexSubset& w);

/// {"kind":..., "rows":[...], "cols":[...], "re":[[...]], "im":[[...]]}
std::string matrix_to_json(const OperatorMatrix& m);
/// Long form "row,col,re,im" in basis order.
std::string matrix_to_csv(const OperatorMatrix& m);

}  // namespace dirlap
