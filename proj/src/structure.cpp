#include "dirlap/structure.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <string>

#include "dirlap/detail/tarjan.hpp"
#include "dirlap/errors.hpp"
#include "dirlap/exact.hpp"
#include "dirlap/numerics.hpp"

namespace dirlap {

namespace {

std::vector<std::vector<std::size_t>> successor_lists(const WeightedDigraph& g) {
  std::vector<std::vector<std::size_t>> succ(g.order());
  for (const Arc& a : g.arcs()) succ[a.tail].push_back(a.head);
  for (auto& s : succ) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return succ;
}

}  // namespace

std::vector<std::vector<std::size_t>> strongly_connected_components(const WeightedDigraph& g) {
  return detail::tarjan_scc(successor_lists(g));
}

Condensation condense(const WeightedDigraph& g) {
  Condensation c;
  c.components = strongly_connected_components(g);
  const std::size_t k = c.components.size();
  c.component_of.assign(g.order(), 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t v : c.components[i]) c.component_of[v] = i;

  c.successors.assign(k, {});
  c.predecessors.assign(k, {});
  for (const Arc& a : g.arcs()) {
    const std::size_t from = c.component_of[a.tail];
    const std::size_t to = c.component_of[a.head];
    if (from == to) continue;
    c.successors[from].push_back(to);
    c.predecessors[to].push_back(from);
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (auto* list : {&c.successors[i], &c.predecessors[i]}) {
      std::sort(list->begin(), list->end());
      list->erase(std::unique(list->begin(), list->end()), list->end());
    }
  }

  std::vector<std::size_t> indegree(k);
  for (std::size_t i = 0; i < k; ++i) indegree[i] = c.predecessors[i].size();
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < k; ++i)
    if (indegree[i] == 0) ready.push(i);
  while (!ready.empty()) {
    const std::size_t i = ready.top();
    ready.pop();
    c.topological_order.push_back(i);
    for (std::size_t j : c.successors[i])
      if (--indegree[j] == 0) ready.push(j);
  }

  c.reachable.assign(k, std::vector<bool>(k, false));
  for (auto it = c.topological_order.rbegin(); it != c.topological_order.rend(); ++it) {
    const std::size_t i = *it;
    c.reachable[i][i] = true;
    for (std::size_t j : c.successors[i])
      for (std::size_t l = 0; l < k; ++l)
        if (c.reachable[j][l]) c.reachable[i][l] = true;
  }
  return c;
}

std::string_view to_string(SccClass c) {
  switch (c) {
    case SccClass::source: return "source";
    case SccClass::sink: return "sink";
    case SccClass::source_and_sink: return "source-and-sink";
    case SccClass::stream: return "stream";
  }
  return "stream";
}

std::vector<std::size_t> StructureReport::sources() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < classification.size(); ++i)
    if (classification[i] == SccClass::source || classification[i] == SccClass::source_and_sink) out.push_back(i);
  return out;
}

std::vector<std::size_t> StructureReport::sinks() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < classification.size(); ++i)
    if (classification[i] == SccClass::sink || classification[i] == SccClass::source_and_sink) out.push_back(i);
  return out;
}

std::vector<std::size_t> StructureReport::stream() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < classification.size(); ++i)
    if (classification[i] == SccClass::stream)
      out.insert(out.end(), condensation.components[i].begin(), condensation.components[i].end());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool pairwise_comparable(const Condensation& c) {
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j)
      if (!c.reachable[i][j] && !c.reachable[j][i]) return false;
  return true;
}

}  // namespace

StructureReport classify(const WeightedDigraph& g) {
  StructureReport r;
  r.condensation = condense(g);
  const Condensation& c = r.condensation;
  r.classification.resize(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const bool no_entering = c.predecessors[i].empty();
    const bool no_leaving = c.successors[i].empty();
    if (no_entering && no_leaving) r.classification[i] = SccClass::source_and_sink;
    else if (no_entering) r.classification[i] = SccClass::source;
    else if (no_leaving) r.classification[i] = SccClass::sink;
    else r.classification[i] = SccClass::stream;
  }
  r.strongly_connected = c.size() == 1;
  r.d_connected = pairwise_comparable(c);
  r.acyclic = acyclic_labeling(g).acyclic;
  return r;
}

bool is_d_connected(const WeightedDigraph& g) { return pairwise_comparable(condense(g)); }

ChainReport maximal_chains(const WeightedDigraph& g, std::size_t limit) {
  if (limit < 1) throw ValidationError("chain limit must be at least 1");
  const Condensation c = condense(g);
  const std::size_t k = c.size();
  ChainReport report;
  if (k == 0) return report;

  // Hasse diagram: drop i -> j whenever j is reachable through another successor.
  std::vector<std::vector<std::size_t>> cover(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j : c.successors[i]) {
      bool shortcut = false;
      for (std::size_t l : c.successors[i])
        if (l != j && c.reachable[l][j]) {
          shortcut = true;
          break;
        }
      if (!shortcut) cover[i].push_back(j);
    }
  }

  std::vector<std::vector<std::size_t>> paths;
  std::vector<std::size_t> path;
  std::vector<std::pair<std::size_t, std::size_t>> stack;  // (component, next cover position)
  for (std::size_t root = 0; root < k && !report.truncated; ++root) {
    if (!c.predecessors[root].empty()) continue;
    stack.emplace_back(root, 0);
    path.push_back(root);
    while (!stack.empty()) {
      auto& [node, pos] = stack.back();
      if (cover[node].empty()) {
        if (paths.size() == limit) {
          report.truncated = true;
          break;
        }
        paths.push_back(path);
      }
      if (pos < cover[node].size()) {
        const std::size_t next = cover[node][pos++];
        stack.emplace_back(next, 0);
        path.push_back(next);
        continue;
      }
      stack.pop_back();
      path.pop_back();
    }
    stack.clear();
    path.clear();
  }

  for (const auto& p : paths) {
    std::vector<std::size_t> vertices;
    for (std::size_t comp : p) vertices.insert(vertices.end(), c.components[comp].begin(), c.components[comp].end());
    std::sort(vertices.begin(), vertices.end());
    report.chains.push_back(std::move(vertices));
  }
  std::sort(report.chains.begin(), report.chains.end());
  return report;
}

std::size_t directed_component_count(const WeightedDigraph& g) {
  const StructureReport r = classify(g);
  std::size_t count = 0;
  for (std::size_t f : r.sources())
    for (std::size_t s : r.sinks())
      if (r.condensation.reachable[f][s]) ++count;
  return count;
}

namespace {

std::size_t matching_component(const StructureReport& r, const VertexSubset& subset, bool want_source,
                               std::string_view what) {
  const Condensation& c = r.condensation;
  if (subset.empty()) throw ValidationError(std::string(what) + " is empty");
  const std::size_t comp = c.component_of[subset.members().front()];
  const auto& members = c.components[comp];
  if (!std::equal(members.begin(), members.end(), subset.members().begin(), subset.members().end()))
    throw ValidationError(std::string(what) + " is not a strongly connected component");
  const SccClass cls = r.classification[comp];
  const bool ok = cls == SccClass::source_and_sink || cls == (want_source ? SccClass::source : SccClass::sink);
  if (!ok) throw ValidationError(std::string(what) + (want_source ? " is not a source" : " is not a sink"));
  return comp;
}

}  // namespace

WeightedDigraph directed_component(const WeightedDigraph& g, const VertexSubset& f, const VertexSubset& s) {
  f.require_parent(g);
  s.require_parent(g);
  const StructureReport r = classify(g);
  const std::size_t cf = matching_component(r, f, true, "f");
  const std::size_t cs = matching_component(r, s, false, "s");
  const Condensation& c = r.condensation;
  if (!c.reachable[cf][cs]) throw ValidationError("sink is not reachable from source");
  std::vector<std::size_t> members;
  for (std::size_t v = 0; v < g.order(); ++v) {
    const std::size_t cv = c.component_of[v];
    if (c.reachable[cf][cv] && c.reachable[cv][cs]) members.push_back(v);
  }
  return induced_subdigraph(g, VertexSubset(g, members));
}

OperatorMatrix compress(const OperatorMatrix& m, const VertexSubset& s) {
  if (!m.vertex_type()) throw ValidationError("compression needs a vertex-indexed operator");
  if (s.empty()) throw ValidationError("compression to an empty vertex set");
  if (s.parent() != m.graph) throw ValidationError("vertex subset belongs to a different graph");
  OperatorMatrix out;
  out.kind = m.kind;
  out.graph = m.graph;
  out.entries = m.entries.select(s.members(), s.members());
  for (std::size_t v : s.members()) {
    out.row_ids.push_back(m.row_ids.at(v));
    out.col_ids.push_back(m.col_ids.at(v));
  }
  return out;
}

DecompositionReport spectrum_decomposition_check(const WeightedDigraph& g, Orientation orientation) {
  if (orientation == Orientation::both) throw ValidationError("decomposition needs orientation in or out");
  DecompositionReport report;
  report.orientation = orientation;
  const OperatorMatrix lap = assemble(g, orientation == Orientation::in ? OperatorKind::L_in : OperatorKind::L_out);
  report.spectrum = eigenvalues(lap.entries);
  report.threshold = 1e-8 * std::max(1.0, lap.entries.frobenius_norm());

  const StructureReport r = classify(g);
  const auto block_components = orientation == Orientation::in ? r.sources() : r.sinks();
  std::vector<bool> covered(g.order(), false);
  for (std::size_t comp : block_components) {
    SpectrumBlock block;
    block.vertices = r.condensation.components[comp];
    block.role = orientation == Orientation::in ? SccClass::source : SccClass::sink;
    for (std::size_t v : block.vertices) covered[v] = true;
    block.eigenvalues = eigenvalues(compress(lap, VertexSubset(g, block.vertices)).entries);
    report.blocks.push_back(std::move(block));
  }
  std::vector<std::size_t> rest;
  for (std::size_t v = 0; v < g.order(); ++v)
    if (!covered[v]) rest.push_back(v);
  if (!rest.empty()) {
    SpectrumBlock block;
    block.vertices = rest;
    block.eigenvalues = eigenvalues(compress(lap, VertexSubset(g, rest)).entries);
    report.blocks.push_back(std::move(block));
  }
  for (const auto& b : report.blocks)
    report.block_union.insert(report.block_union.end(), b.eigenvalues.begin(), b.eigenvalues.end());
  std::sort(report.block_union.begin(), report.block_union.end(), [](const Complex& a, const Complex& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  report.distance = multiset_distance(report.spectrum, report.block_union);
  report.ok = report.distance <= report.threshold;
  return report;
}

AcyclicLabeling acyclic_labeling(const WeightedDigraph& g) {
  const std::size_t n = g.order();
  AcyclicLabeling out;
  std::vector<std::size_t> indegree(n, 0);
  for (const Arc& a : g.arcs()) ++indegree[a.head];
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t v = 0; v < n; ++v)
    if (indegree[v] == 0) ready.push(v);
  std::vector<bool> placed(n, false);
  while (!ready.empty()) {
    const std::size_t v = ready.top();
    ready.pop();
    placed[v] = true;
    out.order.push_back(v);
    for (std::size_t a : g.out_arcs(v))
      if (--indegree[g.arc(a).head] == 0) ready.push(g.arc(a).head);
  }
  out.acyclic = out.order.size() == n;
  if (out.acyclic) return out;

  // Every unplaced vertex has an unplaced predecessor; walk back until a repeat.
  std::size_t v = 0;
  while (placed[v]) ++v;
  std::vector<std::size_t> position(n, n);
  std::vector<std::size_t> walk;
  while (position[v] == n) {
    position[v] = walk.size();
    walk.push_back(v);
    for (std::size_t a : g.in_arcs(v)) {
      const std::size_t u = g.arc(a).tail;
      if (!placed[u]) {
        v = u;
        break;
      }
    }
  }
  std::vector<std::size_t> backwards(walk.begin() + static_cast<std::ptrdiff_t>(position[v]), walk.end());
  out.cycle.assign(backwards.rbegin(), backwards.rend());
  out.cycle.push_back(out.cycle.front());
  out.order.clear();
  return out;
}

bool kernel_mean_check(const WeightedDigraph& g, const VertexFunction& phi, Orientation orientation, double tol) {
  phi.require_parent(g);
  if (orientation == Orientation::both) throw ValidationError("kernel mean check needs orientation in or out");
  for (std::size_t v = 0; v < g.order(); ++v) {
    const auto arcs = orientation == Orientation::in ? g.in_arcs(v) : g.out_arcs(v);
    if (arcs.empty()) continue;
    Complex sum = 0.0;
    double total = 0.0;
    for (std::size_t ai : arcs) {
      const Arc& a = g.arc(ai);
      const std::size_t other = orientation == Orientation::in ? a.tail : a.head;
      sum += a.weight * phi[other];
      total += a.weight;
    }
    if (std::abs(phi[v] - sum / total) > tol) return false;
  }
  return true;
}

TheoremReport verify_source_sink_theorem(const WeightedDigraph& g, std::optional<double> tol, bool exact) {
  TheoremReport t;
  const StructureReport r = classify(g);
  t.sources = r.sources().size();
  t.sinks = r.sinks().size();

  const Matrix lin = assemble(g, OperatorKind::L_in).entries;
  const Matrix lout = assemble(g, OperatorKind::L_out).entries;
  const SpectralReport sin = spectral_report(lin, tol);
  const SpectralReport sout = spectral_report(lout, tol);
  t.mult0_in_algebraic = sin.zero_multiplicity_algebraic;
  t.mult0_in_geometric = sin.zero_multiplicity_geometric;
  t.mult0_out_algebraic = sout.zero_multiplicity_algebraic;
  t.mult0_out_geometric = sout.zero_multiplicity_geometric;
  t.tolerance_in = sin.tolerance;
  t.tolerance_out = sout.tolerance;
  t.rank_stable = kernel_and_rank(lin, sin.tolerance).stable && kernel_and_rank(lout, sout.tolerance).stable;

  t.agree = t.sources == t.mult0_in_algebraic && t.sources == t.mult0_in_geometric &&
            t.sinks == t.mult0_out_algebraic && t.sinks == t.mult0_out_geometric;
  t.modes_differ = t.mult0_in_algebraic != t.mult0_in_geometric || t.mult0_out_algebraic != t.mult0_out_geometric;

  if (exact) {
    const auto ein = exact::laplacian(g, Orientation::in);
    const auto eout = exact::laplacian(g, Orientation::out);
    t.exact_in_algebraic = exact::zero_multiplicity_algebraic(ein);
    t.exact_in_geometric = exact::zero_multiplicity_geometric(ein);
    t.exact_out_algebraic = exact::zero_multiplicity_algebraic(eout);
    t.exact_out_geometric = exact::zero_multiplicity_geometric(eout);
    t.agree = t.agree && t.sources == *t.exact_in_algebraic && t.sources == *t.exact_in_geometric &&
              t.sinks == *t.exact_out_algebraic && t.sinks == *t.exact_out_geometric;
    t.modes_differ = t.modes_differ || *t.exact_in_algebraic != *t.exact_in_geometric ||
                     *t.exact_out_algebraic != *t.exact_out_geometric;
  }

  std::size_t pairs = 0;
  for (std::size_t f : r.sources())
    for (std::size_t s : r.sinks())
      if (r.condensation.reachable[f][s]) ++pairs;
  t.directed_components = pairs;
  t.zero_simple_for_both = t.mult0_in_algebraic == 1 && t.mult0_out_algebraic == 1;
  t.corollary_holds = t.zero_simple_for_both == (pairs == 1);
  return t;
}

}  // namespace dirlap
