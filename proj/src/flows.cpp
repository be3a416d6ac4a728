#include "dirlap/flows.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

#include "dirlap/errors.hpp"
#include "dirlap/numerics.hpp"
#include "dirlap/structure.hpp"

namespace dirlap {

using json = nlohmann::json;

WeightedDigraph CapacityNetwork::capacity_graph() const { return with_arc_weights(graph, capacity); }

VertexSubset CapacityNetwork::boundary() const {
  std::vector<std::size_t> w(sources.members().begin(), sources.members().end());
  w.insert(w.end(), sinks.members().begin(), sinks.members().end());
  return VertexSubset(graph, w);
}

WeightedDigraph CapacityNetwork::measured(ArcMeasure measure) const {
  return measure == ArcMeasure::weight ? graph : capacity_graph();
}

CapacityNetwork make_network(const WeightedDigraph& g, std::vector<double> capacity,
                             const std::vector<std::string>& sources, const std::vector<std::string>& sinks,
                             std::vector<std::string>* warnings) {
  if (capacity.size() != g.size()) throw ValidationError("capacity vector has the wrong length");
  for (std::size_t a = 0; a < capacity.size(); ++a)
    if (!(capacity[a] > 0.0) || !std::isfinite(capacity[a]))
      throw ValidationError("arc \"" + g.arc(a).id + "\": capacity must be positive and finite");

  CapacityNetwork net;
  bool reset = false;
  for (const Vertex& v : g.vertices()) reset = reset || v.weight != 1.0;
  if (reset && warnings) warnings->push_back("vertex weights reset to 1 for the network");
  net.graph = with_vertex_weights(g, 1.0);
  net.capacity = std::move(capacity);
  net.sources = VertexSubset::of_ids(net.graph, sources);
  net.sinks = VertexSubset::of_ids(net.graph, sinks);

  for (std::size_t v : net.sources.members())
    if (net.sinks.contains(v))
      throw ValidationError("vertex \"" + net.graph.vertex(v).id + "\" is both a source and a sink terminal");

  const StructureReport r = classify(net.graph);
  auto component_class = [&](std::size_t v) { return r.classification[r.condensation.component_of[v]]; };
  for (std::size_t v : net.sources.members()) {
    const SccClass c = component_class(v);
    if (c != SccClass::source && c != SccClass::source_and_sink)
      throw ValidationError("source terminal \"" + net.graph.vertex(v).id + "\" does not lie in a source component");
  }
  for (std::size_t v : net.sinks.members()) {
    const SccClass c = component_class(v);
    if (c != SccClass::sink && c != SccClass::source_and_sink)
      throw ValidationError("sink terminal \"" + net.graph.vertex(v).id + "\" does not lie in a sink component");
  }
  return net;
}

namespace {

std::vector<std::string> read_id_list(const json& doc, const char* key) {
  std::vector<std::string> out;
  auto it = doc.find(key);
  if (it == doc.end()) return out;
  if (!it->is_array()) throw ValidationError(std::string("network \"") + key + "\" must be an array of ids");
  for (const json& id : *it) {
    if (!id.is_string()) throw ValidationError(std::string("network \"") + key + "\" must be an array of ids");
    out.push_back(id.get<std::string>());
  }
  return out;
}

const WeightedDigraph* owner(const CapacityNetwork& net, const ArcFunction& eta, const WeightedDigraph& cap) {
  if (eta.parent() == net.graph.fingerprint()) return &net.graph;
  if (eta.parent() == cap.fingerprint()) return &cap;
  return nullptr;
}

ArcFunction on_graph(const CapacityNetwork& net, const ArcFunction& eta, const WeightedDigraph& target) {
  if (eta.parent() == target.fingerprint()) return eta;
  const WeightedDigraph cap = net.capacity_graph();
  if (!owner(net, eta, cap)) throw ValidationError("arc function does not belong to this network");
  return eta.rebind(target);
}

std::vector<ArcFunction> kernel_functions(const WeightedDigraph& g, const Matrix& m) {
  const KernelResult k = kernel_and_rank(m);
  std::vector<ArcFunction> out;
  for (const auto& v : k.basis) out.push_back(ArcFunction::from_coordinates(g, v));
  return out;
}

}  // namespace

CapacityNetwork parse_network(std::string_view text, std::vector<std::string>* warnings) {
  const WeightedDigraph g = parse_digraph(text);
  const json doc = json::parse(text.begin(), text.end());
  std::vector<double> capacity(g.size());
  const json& arcs = doc.contains("arcs") ? doc.at("arcs") : json::array();
  for (std::size_t a = 0; a < g.size(); ++a) {
    const json& node = arcs.at(a);
    auto it = node.find("capacity");
    if (it == node.end()) {
      capacity[a] = g.arc(a).weight;
      continue;
    }
    if (!it->is_number()) throw ValidationError("arc \"" + g.arc(a).id + "\": capacity must be a number");
    capacity[a] = it->get<double>();
  }
  return make_network(g, std::move(capacity), read_id_list(doc, "sources"), read_id_list(doc, "sinks"), warnings);
}

std::vector<ArcFunction> circulation_space(const WeightedDigraph& g) {
  return kernel_functions(g, divergence_matrix(g));
}

std::vector<ArcFunction> flow_space(const CapacityNetwork& net, ArcMeasure measure) {
  const VertexSubset w = net.boundary();
  if (w.size() == net.graph.order()) throw ValidationError("flow space needs at least one vertex outside V0 and V1");
  const WeightedDigraph g = net.measured(measure);
  return kernel_functions(g, dirichlet_divergence_matrix(g, VertexSubset(g, {w.members().begin(), w.members().end()})));
}

bool is_circulation(const WeightedDigraph& g, const ArcFunction& eta, double tol) {
  return norm(g, adjoint_first_order(g, FirstOrder::d, eta)) <= tol;
}

bool is_flow(const CapacityNetwork& net, const ArcFunction& eta, double tol, ArcMeasure measure) {
  const WeightedDigraph g = net.measured(measure);
  const ArcFunction local = on_graph(net, eta, g);
  const VertexSubset boundary = net.boundary();
  const VertexSubset w(g, {boundary.members().begin(), boundary.members().end()});
  const InteriorFunction div = dirichlet_divergence(g, w, local);
  return std::sqrt(inner(g, div, div).real()) <= tol;
}

double orthogonality_check(const WeightedDigraph& g, const ArcFunction& eta, const VertexFunction& phi) {
  return std::abs(inner(g, eta, evaluate_first_order(g, FirstOrder::d, phi)));
}

double orthogonality_check(const CapacityNetwork& net, const ArcFunction& eta, const InteriorFunction& phi0,
                           ArcMeasure measure) {
  const WeightedDigraph g = net.measured(measure);
  const ArcFunction local = on_graph(net, eta, g);
  const VertexSubset boundary = net.boundary();
  const VertexSubset w(g, {boundary.members().begin(), boundary.members().end()});
  const InteriorFunction moved{VertexSubset(g, {phi0.domain.members().begin(), phi0.domain.members().end()}),
                               phi0.values};
  return std::abs(inner(g, local, dirichlet_gradient(g, w, moved)));
}

CutCapacity cut_capacity(const CapacityNetwork& net, const VertexSubset& x) {
  x.require_parent(net.graph);
  for (std::size_t v : net.sources.members())
    if (!x.contains(v))
      throw ValidationError("cut set must contain source terminal \"" + net.graph.vertex(v).id + "\"");
  for (std::size_t v : net.sinks.members())
    if (x.contains(v))
      throw ValidationError("cut set must not contain sink terminal \"" + net.graph.vertex(v).id + "\"");

  CutCapacity out;
  const ArcSetResult cut = arc_set(net.graph, x, x.complement(net.graph), Orientation::out);
  for (std::size_t a : cut.arcs) out.by_sum += net.capacity[a];

  const WeightedDigraph cap = net.capacity_graph();
  const Matrix lout = assemble(cap, OperatorKind::L_out).entries;
  std::vector<double> indicator(cap.order(), 0.0);
  for (std::size_t v : x.members()) indicator[v] = 1.0;  // coordinates of 1_X with unit vertex weights
  const std::vector<double> image = lout.apply(indicator);
  for (std::size_t v = 0; v < cap.order(); ++v) out.by_quadratic_form += indicator[v] * image[v];
  out.value = out.by_sum;
  return out;
}

FlowValue flow_value(const CapacityNetwork& net, const ArcFunction& eta, std::string_view x) {
  const ArcFunction local = on_graph(net, eta, net.graph);
  if (!local.is_real()) throw ValidationError("flow must be real valued");
  double scale = 1.0;
  for (const Complex& z : local.values()) scale = std::max(scale, std::abs(z));
  if (!is_flow(net, local, 1e-9 * scale)) throw ValidationError("arc function violates the conservation law");
  const std::size_t xv = net.graph.vertex_index(x);
  if (!net.sources.contains(xv)) throw ValidationError("\"" + std::string(x) + "\" is not a source vertex");
  if (!net.graph.in_arcs(xv).empty())
    throw ValidationError("\"" + std::string(x) + "\" is not a source vertex: it has entering arcs");

  FlowValue out;
  for (std::size_t a : net.graph.out_arcs(xv)) out.by_sum += local[a].real();

  const WeightedDigraph cap = net.capacity_graph();
  const VertexFunction one_x = VertexFunction::indicator(cap, VertexSubset(cap, {xv}));
  const ArcFunction grad = evaluate_first_order(cap, FirstOrder::d, one_x);
  std::vector<Complex> ratio(cap.size());
  for (std::size_t a = 0; a < cap.size(); ++a) ratio[a] = local[a] / net.capacity[a];
  out.by_inner_product = -inner(cap, grad, ArcFunction(cap, std::move(ratio))).real();
  out.value = out.by_sum;
  return out;
}

double cut_flow(const CapacityNetwork& net, const ArcFunction& eta, const VertexSubset& x) {
  const ArcFunction local = on_graph(net, eta, net.graph);
  x.require_parent(net.graph);
  const VertexSubset rest = x.complement(net.graph);
  double total = 0.0;
  for (std::size_t a : arc_set(net.graph, x, rest, Orientation::out).arcs) total += local[a].real();
  for (std::size_t a : arc_set(net.graph, rest, x, Orientation::out).arcs) total -= local[a].real();
  return total;
}

bool is_feasible(const CapacityNetwork& net, const ArcFunction& eta) {
  const ArcFunction local = on_graph(net, eta, net.graph);
  for (std::size_t a = 0; a < local.size(); ++a) {
    const Complex z = local[a];
    if (z.imag() != 0.0 || z.real() < 0.0 || z.real() > net.capacity[a]) return false;
  }
  return true;
}

CapacityNetwork add_super_terminals(const CapacityNetwork& net, const std::string& x_id, const std::string& y_id) {
  const WeightedDigraph& g = net.graph;
  if (g.find_vertex(x_id) || g.find_vertex(y_id)) throw ValidationError("super terminal id already in use");
  std::vector<Vertex> vertices(g.vertices().begin(), g.vertices().end());
  vertices.push_back({x_id, 1.0});
  vertices.push_back({y_id, 1.0});
  std::vector<WeightedDigraph::ArcSpec> arcs;
  std::vector<double> capacity = net.capacity;
  std::set<std::string> used;
  for (const Arc& a : g.arcs()) {
    arcs.push_back({a.id, g.vertex(a.tail).id, g.vertex(a.head).id, a.weight});
    used.insert(a.id);
  }
  auto fresh = [&](std::string base) {
    std::string id = base;
    for (int k = 1; used.count(id); ++k) id = base + "#" + std::to_string(k);
    used.insert(id);
    return id;
  };
  for (std::size_t v : net.sources.members()) {
    double total = 0.0;
    for (std::size_t a : g.out_arcs(v)) total += net.capacity[a];
    arcs.push_back({fresh(x_id + "->" + g.vertex(v).id), x_id, g.vertex(v).id, 1.0});
    capacity.push_back(total > 0.0 ? total : 1.0);
  }
  for (std::size_t v : net.sinks.members()) {
    double total = 0.0;
    for (std::size_t a : g.in_arcs(v)) total += net.capacity[a];
    arcs.push_back({fresh(g.vertex(v).id + "->" + y_id), g.vertex(v).id, y_id, 1.0});
    capacity.push_back(total > 0.0 ? total : 1.0);
  }
  return make_network(WeightedDigraph::from_ids(std::move(vertices), arcs), std::move(capacity), {x_id}, {y_id});
}

}  // namespace dirlap
