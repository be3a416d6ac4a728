#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dirlap {

struct Vertex {
  std::string id;
  double weight = 1.0;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// An arc runs from `tail` (initial vertex) to `head` (terminal vertex).
/// Endpoints are indices into the vertex sequence.
struct Arc {
  std::string id;
  std::size_t tail = 0;
  std::size_t head = 0;
  double weight = 1.0;

  bool is_loop() const noexcept { return tail == head; }
  friend bool operator==(const Arc&, const Arc&) = default;
};

enum class Orientation { in, out, both };

std::string_view to_string(Orientation o);
Orientation parse_orientation(std::string_view text);

/// Finite weighted multidigraph (loops and parallel arcs allowed) with positive
/// vertex and arc weights. Immutable after construction. The stored vertex and
/// arc orders are the basis orders of every matrix built from the graph.
class WeightedDigraph {
 public:
  WeightedDigraph() : WeightedDigraph(std::vector<Vertex>{}, std::vector<Arc>{}) {}

  /// Validates ids, endpoints and weights; throws ValidationError naming the
  /// offending id.
  WeightedDigraph(std::vector<Vertex> vertices, std::vector<Arc> arcs);

  /// Convenience builder that resolves endpoints by vertex id.
  struct ArcSpec {
    std::string id;
    std::string tail;
    std::string head;
    double weight = 1.0;
  };
  static WeightedDigraph from_ids(std::vector<Vertex> vertices, const std::vector<ArcSpec>& arcs);

  std::size_t order() const noexcept { return vertices_.size(); }
  std::size_t size() const noexcept { return arcs_.size(); }

  std::span<const Vertex> vertices() const noexcept { return vertices_; }
  std::span<const Arc> arcs() const noexcept { return arcs_; }
  const Vertex& vertex(std::size_t i) const { return vertices_.at(i); }
  const Arc& arc(std::size_t i) const { return arcs_.at(i); }

  std::optional<std::size_t> find_vertex(std::string_view id) const;
  std::optional<std::size_t> find_arc(std::string_view id) const;
  /// Like find_vertex but throws ValidationError naming `id`.
  std::size_t vertex_index(std::string_view id) const;
  std::size_t arc_index(std::string_view id) const;

  /// Arc indices of A^+_v (arcs ending at v) or A^-_v (arcs starting at v),
  /// in arc order. A loop at v belongs to both.
  std::span<const std::size_t> in_arcs(std::size_t v) const { return in_arcs_.at(v); }
  std::span<const std::size_t> out_arcs(std::size_t v) const { return out_arcs_.at(v); }

  /// Content hash; two graphs with equal data share an identity.
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

  std::vector<std::string> vertex_ids() const;
  std::vector<std::string> arc_ids() const;

  friend bool operator==(const WeightedDigraph& a, const WeightedDigraph& b) {
    return a.vertices_ == b.vertices_ && a.arcs_ == b.arcs_;
  }

 private:
  std::vector<Vertex> vertices_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> in_arcs_;
  std::vector<std::vector<std::size_t>> out_arcs_;
  std::unordered_map<std::string, std::size_t> vertex_lookup_;
  std::unordered_map<std::string, std::size_t> arc_lookup_;
  std::uint64_t fingerprint_ = 0;
};

/// A set of vertices of a specific graph, kept sorted by basis index.
class VertexSubset {
 public:
  VertexSubset() = default;
  VertexSubset(const WeightedDigraph& g, std::vector<std::size_t> members);

  static VertexSubset of_ids(const WeightedDigraph& g, const std::vector<std::string>& ids);
  static VertexSubset all(const WeightedDigraph& g);
  static VertexSubset none(const WeightedDigraph& g);

  std::span<const std::size_t> members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(std::size_t v) const;
  std::uint64_t parent() const noexcept { return parent_; }

  /// Throws ValidationError unless this subset was built for `g`.
  void require_parent(const WeightedDigraph& g) const;

  VertexSubset complement(const WeightedDigraph& g) const;
  std::vector<std::string> ids(const WeightedDigraph& g) const;

  friend bool operator==(const VertexSubset&, const VertexSubset&) = default;

 private:
  std::vector<std::size_t> members_;
  std::uint64_t parent_ = 0;
};

struct ArcSetResult {
  std::vector<std::size_t> arcs;
  double measure = 0.0;
};

/// out: A^+(b,c), arcs with tail in b and head in c. in: A^-(b,c), arcs from c
/// to b. both: their union (each arc once).
ArcSetResult arc_set(const WeightedDigraph& g, const VertexSubset& b, const VertexSubset& c,
                     Orientation orientation);

/// rel^+(v) = m(A^+_v)/m(v) and rel^-(v) = m(A^-_v)/m(v); both is the sum.
/// A vertex with no arcs of the requested kind gets 0.
double relative_weight(const WeightedDigraph& g, std::size_t v, Orientation orientation);
double relative_weight(const WeightedDigraph& g, std::string_view vertex_id, Orientation orientation);

/// m(A^+_v) or m(A^-_v), loops included.
double arc_measure_at(const WeightedDigraph& g, std::size_t v, Orientation orientation);

/// Vertex set s with every arc whose endpoints are both in s; orders inherited.
WeightedDigraph induced_subdigraph(const WeightedDigraph& g, const VertexSubset& s);

struct InOutVertices {
  std::vector<std::size_t> in_vertices;   ///< heads of arcs, V_+
  std::vector<std::size_t> out_vertices;  ///< tails of arcs, V_-
};
InOutVertices in_out_vertices(const WeightedDigraph& g);

/// Reads the JSON graph format:
///   {"vertices":[{"id":"v1","weight":1.0},...],
///    "arcs":[{"id":"a1","tail":"v1","head":"v2","weight":2.0},...]}
/// Weights default to 1.
WeightedDigraph parse_digraph(std::string_view text);
std::string serialize_digraph(const WeightedDigraph& g);

/// Same graph with every arc weight replaced (positional).
WeightedDigraph with_arc_weights(const WeightedDigraph& g, std::span<const double> weights);
/// Same graph with every vertex weight set to `w`.
WeightedDigraph with_vertex_weights(const WeightedDigraph& g, double w);

bool has_combinatorial_weights(const WeightedDigraph& g);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace dirlap
