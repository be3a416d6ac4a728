#include "dirlap/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <json.hpp>

#include "dirlap/errors.hpp"

namespace dirlap {

namespace {

using nlohmann::json;

void hash_bytes(std::uint64_t& h, std::string_view bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
}

void hash_u64(std::uint64_t& h, std::uint64_t x) {
  for (int i = 0; i < 8; ++i) {
    h ^= (x >> (8 * i)) & 0xffU;
    h *= 1099511628211ULL;
  }
}

void require_weight(double w, const std::string& what) {
  if (!std::isfinite(w) || !(w > 0.0)) {
    throw ValidationError("non-positive or non-finite weight on " + what);
  }
}

double read_weight(const json& node, const std::string& what) {
  auto it = node.find("weight");
  if (it == node.end()) return 1.0;
  if (!it->is_number()) throw ValidationError("weight of " + what + " is not a number");
  return it->get<double>();
}

std::string read_string(const json& node, const char* key, const std::string& context) {
  auto it = node.find(key);
  if (it == node.end() || !it->is_string()) {
    throw ValidationError(context + ": missing string field \"" + key + "\"");
  }
  return it->get<std::string>();
}

}  // namespace

std::string_view to_string(Orientation o) {
  switch (o) {
    case Orientation::in: return "in";
    case Orientation::out: return "out";
    case Orientation::both: return "both";
  }
  return "both";
}

Orientation parse_orientation(std::string_view text) {
  if (text == "in" || text == "+") return Orientation::in;
  if (text == "out" || text == "-") return Orientation::out;
  if (text == "both") return Orientation::both;
  throw ValidationError("unknown orientation '" + std::string(text) + "'");
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  hash_bytes(h, bytes);
  return h;
}

WeightedDigraph::WeightedDigraph(std::vector<Vertex> vertices, std::vector<Arc> arcs)
    : vertices_(std::move(vertices)), arcs_(std::move(arcs)) {
  const std::size_t n = vertices_.size();
  vertex_lookup_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vertex& v = vertices_[i];
    if (v.id.empty()) throw ValidationError("vertex at position " + std::to_string(i) + " has an empty id");
    if (!vertex_lookup_.emplace(v.id, i).second) throw ValidationError("duplicate vertex id \"" + v.id + "\"");
    require_weight(v.weight, "vertex \"" + v.id + "\"");
  }
  in_arcs_.assign(n, {});
  out_arcs_.assign(n, {});
  arc_lookup_.reserve(arcs_.size());
  for (std::size_t k = 0; k < arcs_.size(); ++k) {
    const Arc& a = arcs_[k];
    if (a.id.empty()) throw ValidationError("arc at position " + std::to_string(k) + " has an empty id");
    if (!arc_lookup_.emplace(a.id, k).second) throw ValidationError("duplicate arc id \"" + a.id + "\"");
    if (a.tail >= n || a.head >= n) throw ValidationError("arc \"" + a.id + "\" has a dangling endpoint");
    require_weight(a.weight, "arc \"" + a.id + "\"");
    in_arcs_[a.head].push_back(k);
    out_arcs_[a.tail].push_back(k);
  }

  std::uint64_t h = 14695981039346656037ULL;
  hash_u64(h, n);
  for (const Vertex& v : vertices_) {
    hash_bytes(h, v.id);
    hash_u64(h, std::bit_cast<std::uint64_t>(v.weight));
  }
  hash_u64(h, arcs_.size());
  for (const Arc& a : arcs_) {
    hash_bytes(h, a.id);
    hash_u64(h, a.tail);
    hash_u64(h, a.head);
    hash_u64(h, std::bit_cast<std::uint64_t>(a.weight));
  }
  fingerprint_ = h;
}

WeightedDigraph WeightedDigraph::from_ids(std::vector<Vertex> vertices, const std::vector<ArcSpec>& arcs) {
  std::unordered_map<std::string, std::size_t> lookup;
  for (std::size_t i = 0; i < vertices.size(); ++i) lookup.emplace(vertices[i].id, i);
  std::vector<Arc> resolved;
  resolved.reserve(arcs.size());
  for (const ArcSpec& spec : arcs) {
    auto t = lookup.find(spec.tail);
    if (t == lookup.end()) throw ValidationError("arc \"" + spec.id + "\" references unknown vertex \"" + spec.tail + "\"");
    auto h = lookup.find(spec.head);
    if (h == lookup.end()) throw ValidationError("arc \"" + spec.id + "\" references unknown vertex \"" + spec.head + "\"");
    resolved.push_back(Arc{spec.id, t->second, h->second, spec.weight});
  }
  return WeightedDigraph(std::move(vertices), std::move(resolved));
}

std::optional<std::size_t> WeightedDigraph::find_vertex(std::string_view id) const {
  auto it = vertex_lookup_.find(std::string(id));
  if (it == vertex_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> WeightedDigraph::find_arc(std::string_view id) const {
  auto it = arc_lookup_.find(std::string(id));
  if (it == arc_lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t WeightedDigraph::vertex_index(std::string_view id) const {
  if (auto v = find_vertex(id)) return *v;
  throw ValidationError("unknown vertex \"" + std::string(id) + "\"");
}

std::size_t WeightedDigraph::arc_index(std::string_view id) const {
  if (auto a = find_arc(id)) return *a;
  throw ValidationError("unknown arc \"" + std::string(id) + "\"");
}

std::vector<std::string> WeightedDigraph::vertex_ids() const {
  std::vector<std::string> ids;
  ids.reserve(vertices_.size());
  for (const Vertex& v : vertices_) ids.push_back(v.id);
  return ids;
}

std::vector<std::string> WeightedDigraph::arc_ids() const {
  std::vector<std::string> ids;
  ids.reserve(arcs_.size());
  for (const Arc& a : arcs_) ids.push_back(a.id);
  return ids;
}

// ---------------------------------------------------------------------------

VertexSubset::VertexSubset(const WeightedDigraph& g, std::vector<std::size_t> members)
    : members_(std::move(members)), parent_(g.fingerprint()) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && members_.back() >= g.order()) {
    throw ValidationError("vertex subset member out of range");
  }
}

VertexSubset VertexSubset::of_ids(const WeightedDigraph& g, const std::vector<std::string>& ids) {
  std::vector<std::size_t> idx;
  idx.reserve(ids.size());
  for (const std::string& id : ids) idx.push_back(g.vertex_index(id));
  return VertexSubset(g, std::move(idx));
}

VertexSubset VertexSubset::all(const WeightedDigraph& g) {
  std::vector<std::size_t> idx(g.order());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return VertexSubset(g, std::move(idx));
}

VertexSubset VertexSubset::none(const WeightedDigraph& g) { return VertexSubset(g, {}); }

bool VertexSubset::contains(std::size_t v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

void VertexSubset::require_parent(const WeightedDigraph& g) const {
  if (parent_ != g.fingerprint()) throw ValidationError("vertex subset does not belong to this graph");
}

VertexSubset VertexSubset::complement(const WeightedDigraph& g) const {
  require_parent(g);
  std::vector<std::size_t> rest;
  for (std::size_t v = 0; v < g.order(); ++v)
    if (!contains(v)) rest.push_back(v);
  return VertexSubset(g, std::move(rest));
}

std::vector<std::string> VertexSubset::ids(const WeightedDigraph& g) const {
  require_parent(g);
  std::vector<std::string> out;
  out.reserve(members_.size());
  for (std::size_t v : members_) out.push_back(g.vertex(v).id);
  return out;
}

// ---------------------------------------------------------------------------

ArcSetResult arc_set(const WeightedDigraph& g, const VertexSubset& b, const VertexSubset& c,
                     Orientation orientation) {
  b.require_parent(g);
  c.require_parent(g);
  ArcSetResult result;
  const auto arcs = g.arcs();
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    const Arc& a = arcs[k];
    const bool forward = b.contains(a.tail) && c.contains(a.head);
    const bool backward = c.contains(a.tail) && b.contains(a.head);
    bool take = false;
    switch (orientation) {
      case Orientation::out: take = forward; break;
      case Orientation::in: take = backward; break;
      case Orientation::both: take = forward || backward; break;
    }
    if (take) {
      result.arcs.push_back(k);
      result.measure += a.weight;
    }
  }
  return result;
}

double arc_measure_at(const WeightedDigraph& g, std::size_t v, Orientation orientation) {
  if (v >= g.order()) throw ValidationError("unknown vertex index " + std::to_string(v));
  double s = 0.0;
  if (orientation != Orientation::out)
    for (std::size_t k : g.in_arcs(v)) s += g.arc(k).weight;
  if (orientation != Orientation::in)
    for (std::size_t k : g.out_arcs(v)) s += g.arc(k).weight;
  return s;
}

double relative_weight(const WeightedDigraph& g, std::size_t v, Orientation orientation) {
  return arc_measure_at(g, v, orientation) / g.vertex(v).weight;
}

double relative_weight(const WeightedDigraph& g, std::string_view vertex_id, Orientation orientation) {
  return relative_weight(g, g.vertex_index(vertex_id), orientation);
}

WeightedDigraph induced_subdigraph(const WeightedDigraph& g, const VertexSubset& s) {
  s.require_parent(g);
  if (s.empty()) throw ValidationError("induced subdigraph of an empty vertex set");
  std::vector<std::size_t> remap(g.order(), g.order());
  std::vector<Vertex> vertices;
  vertices.reserve(s.size());
  for (std::size_t v : s.members()) {
    remap[v] = vertices.size();
    vertices.push_back(g.vertex(v));
  }
  std::vector<Arc> arcs;
  for (const Arc& a : g.arcs()) {
    if (remap[a.tail] < g.order() && remap[a.head] < g.order()) {
      arcs.push_back(Arc{a.id, remap[a.tail], remap[a.head], a.weight});
    }
  }
  return WeightedDigraph(std::move(vertices), std::move(arcs));
}

InOutVertices in_out_vertices(const WeightedDigraph& g) {
  InOutVertices r;
  for (std::size_t v = 0; v < g.order(); ++v) {
    if (!g.in_arcs(v).empty()) r.in_vertices.push_back(v);
    if (!g.out_arcs(v).empty()) r.out_vertices.push_back(v);
  }
  return r;
}

WeightedDigraph parse_digraph(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed graph document: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("malformed graph document: top level must be an object");
  auto vit = doc.find("vertices");
  if (vit == doc.end() || !vit->is_array()) throw ValidationError("malformed graph document: missing \"vertices\" array");

  std::vector<Vertex> vertices;
  for (std::size_t i = 0; i < vit->size(); ++i) {
    const json& node = (*vit)[i];
    if (!node.is_object()) throw ValidationError("vertex entry " + std::to_string(i) + " is not an object");
    Vertex v;
    v.id = read_string(node, "id", "vertex entry " + std::to_string(i));
    v.weight = read_weight(node, "vertex \"" + v.id + "\"");
    vertices.push_back(std::move(v));
  }

  std::vector<WeightedDigraph::ArcSpec> arcs;
  if (auto ait = doc.find("arcs"); ait != doc.end()) {
    if (!ait->is_array()) throw ValidationError("malformed graph document: \"arcs\" must be an array");
    for (std::size_t k = 0; k < ait->size(); ++k) {
      const json& node = (*ait)[k];
      if (!node.is_object()) throw ValidationError("arc entry " + std::to_string(k) + " is not an object");
      WeightedDigraph::ArcSpec spec;
      spec.id = read_string(node, "id", "arc entry " + std::to_string(k));
      spec.tail = read_string(node, "tail", "arc \"" + spec.id + "\"");
      spec.head = read_string(node, "head", "arc \"" + spec.id + "\"");
      spec.weight = read_weight(node, "arc \"" + spec.id + "\"");
      arcs.push_back(std::move(spec));
    }
  }
  return WeightedDigraph::from_ids(std::move(vertices), arcs);
}

std::string serialize_digraph(const WeightedDigraph& g) {
  json doc;
  doc["vertices"] = json::array();
  for (const Vertex& v : g.vertices()) doc["vertices"].push_back({{"id", v.id}, {"weight", v.weight}});
  doc["arcs"] = json::array();
  for (const Arc& a : g.arcs()) {
    doc["arcs"].push_back({{"id", a.id},
                           {"tail", g.vertex(a.tail).id},
                           {"head", g.vertex(a.head).id},
                           {"weight", a.weight}});
  }
  return doc.dump();
}

WeightedDigraph with_arc_weights(const WeightedDigraph& g, std::span<const double> weights) {
  if (weights.size() != g.size()) throw ValidationError("arc weight vector has the wrong length");
  std::vector<Arc> arcs(g.arcs().begin(), g.arcs().end());
  for (std::size_t k = 0; k < arcs.size(); ++k) arcs[k].weight = weights[k];
  return WeightedDigraph(std::vector<Vertex>(g.vertices().begin(), g.vertices().end()), std::move(arcs));
}

WeightedDigraph with_vertex_weights(const WeightedDigraph& g, double w) {
  std::vector<Vertex> vertices(g.vertices().begin(), g.vertices().end());
  for (Vertex& v : vertices) v.weight = w;
  return WeightedDigraph(std::move(vertices), std::vector<Arc>(g.arcs().begin(), g.arcs().end()));
}

bool has_combinatorial_weights(const WeightedDigraph& g) {
  return std::all_of(g.vertices().begin(), g.vertices().end(), [](const Vertex& v) { return v.weight == 1.0; }) &&
         std::all_of(g.arcs().begin(), g.arcs().end(), [](const Arc& a) { return a.weight == 1.0; });
}

}  // namespace dirlap
