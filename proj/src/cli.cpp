#include "dirlap/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dirlap/errors.hpp"
#include "dirlap/exact.hpp"
#include "dirlap/flows.hpp"
#include "dirlap/graph.hpp"
#include "dirlap/numerics.hpp"
#include "dirlap/operators.hpp"
#include "dirlap/random_graphs.hpp"
#include "dirlap/structure.hpp"

namespace dirlap::cli {

namespace {

using json = nlohmann::json;

/// Thrown after a report is emitted when a verification does not hold.
struct Mismatch {};

struct Globals {
  std::optional<double> tol;
  bool exact = false;
  std::string format = "json";
  std::uint64_t seed = 0;
};

struct Input {
  std::string path;
  std::string bytes;
};

Input read_input(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot read input file \"" + path + "\"");
  std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return {path, std::move(bytes)};
}

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

double clean(double x) {
  const double r = std::round(x * 1e12) / 1e12;
  return r == 0.0 ? 0.0 : r;
}

json complex_list(const std::vector<Complex>& values) {
  json out = json::array();
  for (const Complex& z : values) out.push_back({clean(z.real()), clean(z.imag())});
  return out;
}

json id_list(const WeightedDigraph& g, const std::vector<std::size_t>& idx) {
  json out = json::array();
  for (std::size_t v : idx) out.push_back(g.vertex(v).id);
  return out;
}

json rational_json(const exact::Rational& q) {
  if (denominator(q) == 1 && numerator(q) >= -(exact::Integer(1) << 53) && numerator(q) <= (exact::Integer(1) << 53))
    return json(numerator(q).convert_to<long long>());
  return json(exact::to_string(q));
}

json rational_list(const std::vector<exact::Rational>& values) {
  json out = json::array();
  for (const auto& q : values) out.push_back(rational_json(q));
  return out;
}

class Reporter {
 public:
  Reporter(std::ostream& out, const Globals& globals) : out_(out), globals_(globals) {}

  std::string command;
  std::string digest_source;
  json payload = json::object();
  json tolerances = json::object();
  std::vector<std::string> warnings;

  void emit() const {
    json report;
    report["command"] = command;
    report["input_digest"] = hex64(fnv1a64(digest_source));
    report["payload"] = payload;
    report["tolerances"] = tolerances;
    report["warnings"] = warnings;
    out_ << report.dump(2) << '\n';
  }

  bool csv() const { return globals_.format == "csv"; }
  std::ostream& stream() const { return out_; }

 private:
  std::ostream& out_;
  const Globals& globals_;
};

void reject_csv(const Reporter& r, const std::string& command) {
  if (r.csv()) throw ValidationError("--format csv is not available for " + command);
}

json basis_payload(const WeightedDigraph& g, const std::vector<ArcFunction>& basis) {
  json p;
  p["arcs"] = g.arc_ids();
  p["dimension"] = basis.size();
  json vectors = json::array();
  for (const auto& eta : basis) {
    json v = json::array();
    for (const Complex& z : eta.values()) v.push_back(clean(z.real()));
    vectors.push_back(v);
  }
  p["basis"] = vectors;
  return p;
}

void basis_csv(std::ostream& out, const WeightedDigraph& g, const std::vector<ArcFunction>& basis) {
  out << "vector,arc,value\n";
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (std::size_t a = 0; a < g.size(); ++a) out << k << ',' << g.arc(a).id << ',' << clean(basis[k][a].real()) << '\n';
}

// ---------------------------------------------------------------- commands

void cmd_matrices(Reporter& r, const Globals&, const std::string& file, const std::string& op, const std::string& route) {
  const Input in = read_input(file);
  r.digest_source = in.bytes;
  const WeightedDigraph g = parse_digraph(in.bytes);
  const OperatorKind kind = parse_operator_kind(op);
  OperatorMatrix m;
  if (route == "closed") m = assemble(g, kind);
  else if (route == "composition") m = assemble_by_composition(g, kind);
  else throw ValidationError("--route must be closed or composition, got \"" + route + "\"");
  if (r.csv()) {
    r.stream() << matrix_to_csv(m);
    return;
  }
  r.payload = json::parse(matrix_to_json(m));
  r.payload["route"] = route;
  r.emit();
}

json exact_spectrum(const WeightedDigraph& g, OperatorKind kind) {
  const Orientation o = kind == OperatorKind::L_in ? Orientation::in : Orientation::out;
  const auto lap = exact::laplacian(g, o);
  const auto poly = exact::characteristic_polynomial(lap);
  json e;
  e["characteristic_polynomial"] = rational_list(poly);
  std::size_t k = 0;
  while (k + 1 < poly.size() && poly[k] == 0) ++k;
  e["zero_multiplicity_algebraic"] = k;
  e["zero_multiplicity_geometric"] = lap.size() - exact::rank(lap);
  const AcyclicLabeling lab = acyclic_labeling(g);
  e["acyclic"] = lab.acyclic;
  if (lab.acyclic) {
    std::vector<exact::Rational> diag;
    for (std::size_t v = 0; v < lap.size(); ++v) diag.push_back(lap[v][v]);
    std::sort(diag.begin(), diag.end());
    e["eigenvalues"] = rational_list(diag);
    e["eigenvalues_verified"] = exact::polynomial_from_roots(diag) == poly;
  }
  return e;
}

void cmd_spectrum(Reporter& r, const Globals& gl, const std::string& file, const std::string& op) {
  const Input in = read_input(file);
  r.digest_source = in.bytes;
  const WeightedDigraph g = parse_digraph(in.bytes);
  const OperatorKind kind = parse_operator_kind(op);
  if (is_incidence(kind)) throw ValidationError("spectrum needs a vertex operator, got \"" + op + "\"");
  if (gl.exact && kind != OperatorKind::L_in && kind != OperatorKind::L_out)
    throw ValidationError("--exact is available for L+ and L- only");
  const OperatorMatrix m = assemble(g, kind);
  const SpectralReport s = spectral_report(m.entries, gl.tol);
  const Tolerances t = default_tolerances(m.entries);
  if (r.csv()) {
    r.stream() << "index,re,im\n";
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
      r.stream() << i << ',' << clean(s.eigenvalues[i].real()) << ',' << clean(s.eigenvalues[i].imag()) << '\n';
    return;
  }
  r.payload["operator"] = op;
  r.payload["eigenvalues"] = complex_list(s.eigenvalues);
  r.payload["zero_multiplicity_algebraic"] = s.zero_multiplicity_algebraic;
  r.payload["zero_multiplicity_geometric"] = s.zero_multiplicity_geometric;
  json kb = json::array();
  for (const auto& v : s.kernel_basis) {
    json row = json::array();
    for (double x : v) row.push_back(clean(x));
    kb.push_back(row);
  }
  r.payload["kernel_basis"] = kb;
  r.payload["basis"] = m.row_ids;
  if (gl.exact) r.payload["exact"] = exact_spectrum(g, kind);
  r.tolerances = {{"rank", t.rank}, {"zero", s.tolerance}, {"relative", gl.tol ? json(*gl.tol) : json(nullptr)}};
  r.emit();
}

json structure_payload(const WeightedDigraph& g, std::size_t chain_limit) {
  const StructureReport s = classify(g);
  const Condensation& c = s.condensation;
  json p;
  p["scc_count"] = c.size();
  json sccs = json::array(), classes = json::array(), edges = json::array();
  for (std::size_t i = 0; i < c.size(); ++i) {
    sccs.push_back(id_list(g, c.components[i]));
    classes.push_back(std::string(to_string(s.classification[i])));
    for (std::size_t j : c.successors[i]) edges.push_back({i, j});
  }
  p["sccs"] = sccs;
  p["classification"] = classes;
  p["condensation_edges"] = edges;
  p["strongly_connected"] = s.strongly_connected;
  p["d_connected"] = s.d_connected;
  p["acyclic"] = s.acyclic;
  json sources = json::array(), sinks = json::array();
  for (std::size_t i : s.sources()) sources.push_back(id_list(g, c.components[i]));
  for (std::size_t i : s.sinks()) sinks.push_back(id_list(g, c.components[i]));
  p["sources"] = sources;
  p["sinks"] = sinks;
  p["stream"] = id_list(g, s.stream());
  std::size_t pairs = 0;
  for (std::size_t f : s.sources())
    for (std::size_t t : s.sinks())
      if (c.reachable[f][t]) ++pairs;
  p["directed_components"] = pairs;
  const ChainReport chains = maximal_chains(g, chain_limit);
  json list = json::array();
  for (const auto& ch : chains.chains) list.push_back(id_list(g, ch));
  p["chains"] = {{"maximal_chains", list}, {"count", chains.chains.size()}, {"truncated", chains.truncated}};
  return p;
}

void cmd_structure(Reporter& r, const Globals&, const std::string& file, std::size_t chain_limit) {
  reject_csv(r, "structure");
  const Input in = read_input(file);
  r.digest_source = in.bytes;
  const WeightedDigraph g = parse_digraph(in.bytes);
  r.payload = structure_payload(g, chain_limit);
  r.payload["chain_limit"] = chain_limit;
  r.emit();
}

json theorem_payload(const TheoremReport& t) {
  json p;
  p["sources"] = t.sources;
  p["sinks"] = t.sinks;
  p["mult0_Lplus"] = t.mult0_in_algebraic;
  p["mult0_Lminus"] = t.mult0_out_algebraic;
  p["mult0_Lplus_algebraic"] = t.mult0_in_algebraic;
  p["mult0_Lplus_geometric"] = t.mult0_in_geometric;
  p["mult0_Lminus_algebraic"] = t.mult0_out_algebraic;
  p["mult0_Lminus_geometric"] = t.mult0_out_geometric;
  if (t.exact_in_algebraic) {
    p["exact"] = {{"mult0_Lplus_algebraic", *t.exact_in_algebraic},
                  {"mult0_Lplus_geometric", *t.exact_in_geometric},
                  {"mult0_Lminus_algebraic", *t.exact_out_algebraic},
                  {"mult0_Lminus_geometric", *t.exact_out_geometric}};
  }
  p["agree"] = t.agree;
  p["modes_differ"] = t.modes_differ;
  p["rank_stable"] = t.rank_stable;
  p["directed_components"] = t.directed_components;
  p["zero_simple_for_both"] = t.zero_simple_for_both;
  p["corollary_holds"] = t.corollary_holds;
  return p;
}

void cmd_verify_theorem(Reporter& r, const Globals& gl, const std::string& file) {
  reject_csv(r, "verify theorem");
  const Input in = read_input(file);
  r.digest_source = in.bytes;
  const WeightedDigraph g = parse_digraph(in.bytes);
  const TheoremReport t = verify_source_sink_theorem(g, gl.tol, gl.exact);
  r.payload = theorem_payload(t);
  r.tolerances = {{"Lplus_zero", t.tolerance_in}, {"Lminus_zero", t.tolerance_out},
                  {"relative", gl.tol ? json(*gl.tol) : json(nullptr)}};
  if (t.modes_differ) r.warnings.push_back("algebraic and geometric zero multiplicities differ");
  if (!t.rank_stable) r.warnings.push_back("nullity changes under a factor 10 tolerance perturbation");
  r.emit();
  if (!t.agree || !t.corollary_holds) throw Mismatch{};
}

void cmd_verify_decomposition(Reporter& r, const Globals&, const std::string& file, const std::string& orientation) {
  reject_csv(r, "verify decomposition");
  const Input in = read_input(file);
  r.digest_source = in.bytes;
  const WeightedDigraph g = parse_digraph(in.bytes);
  std::vector<Orientation> which;
  if (orientation == "both") which = {Orientation::in, Orientation::out};
  else which = {parse_orientation(orientation)};
  bool ok = true;
  for (Orientation o : which) {
    const DecompositionReport d = spectrum_decomposition_check(g, o);
    json blocks = json::array();
    for (const auto& b : d.blocks)
      blocks.push_back({{"vertices", id_list(g, b.vertices)},
                        {"role", std::string(to_string(b.role))},
                        {"eigenvalues", complex_list(b.eigenvalues)}});
    const std::string key = o == Orientation::in ? "L+" : "L-";
    r.payload[key] = {{"spectrum", complex_list(d.spectrum)},
                      {"blocks", blocks},
                      {"distance", d.distance},
                      {"ok", d.ok}};
    r.tolerances[key] = d.threshold;
    ok = ok && d.ok;
  }
  r.payload["ok"] = ok;
  r.emit();
  if (!ok) throw Mismatch{};
}

json acyclic_side(const WeightedDigraph& g, const AcyclicLabeling& lab, Orientation o, bool use_exact, bool& ok) {
  const OperatorKind kind = o == Orientation::in ? OperatorKind::L_in : OperatorKind::L_out;
  const Matrix m = assemble(g, kind).entries.select(lab.order, lab.order);
  const std::size_t n = m.rows();
  bool triangular = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const bool upper_part = j > i;
      const bool must_vanish = o == Orientation::in ? upper_part : (j < i);
      if (must_vanish && m(i, j) != 0.0) triangular = false;
    }
  std::vector<Complex> rel;
  bool diagonal_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = relative_weight(g, lab.order[i], o);
    double loops = 0.0;
    for (std::size_t a : (o == Orientation::in ? g.in_arcs(lab.order[i]) : g.out_arcs(lab.order[i])))
      if (g.arc(a).is_loop()) loops += g.arc(a).weight;
    const double expected = r - loops / g.vertex(lab.order[i]).weight;
    if (std::abs(m(i, i) - expected) > 1e-12 * std::max(1.0, expected)) diagonal_ok = false;
    rel.push_back(Complex(expected, 0.0));
  }
  std::sort(rel.begin(), rel.end(), [](const Complex& a, const Complex& b) { return a.real() < b.real(); });
  const std::vector<Complex> ev = eigenvalues(m);
  const double dist = multiset_distance(ev, rel);
  const double threshold = 1e-9 * std::max(1.0, m.frobenius_norm());
  bool integer_ok = true;
  const bool combinatorial = has_combinatorial_weights(g);
  if (combinatorial)
    for (const Complex& z : ev)
      if (std::abs(z.imag()) > 1e-9 || std::abs(z.real() - std::round(z.real())) > 1e-9 || z.real() < -1e-9)
        integer_ok = false;

  json side;
  side["lower_triangular"] = o == Orientation::in ? triangular : false;
  side["upper_triangular"] = o == Orientation::out ? triangular : false;
  side["diagonal_is_relative_weight"] = diagonal_ok;
  side["eigenvalues"] = complex_list(ev);
  side["distance_to_diagonal"] = dist;
  side["combinatorial"] = combinatorial;
  if (combinatorial) side["nonnegative_integers"] = integer_ok;
  bool side_ok = triangular && diagonal_ok && dist <= threshold && integer_ok;
  if (use_exact) {
    const auto lap = exact::laplacian(g, o);
    std::vector<exact::Rational> diag;
    for (std::size_t v = 0; v < lap.size(); ++v) diag.push_back(lap[v][v]);
    std::sort(diag.begin(), diag.end());
    const bool exact_ok = exact::polynomial_from_roots(diag) == exact::characteristic_polynomial(lap);
    side["exact"] = {{"eigenvalues", rational_list(diag)}, {"characteristic_polynomial_matches", exact_ok}};
    side_ok = side_ok && exact_ok;
  }
  side["ok"] = side_ok;
  ok = ok && side_ok;
  return side;
}

void cmd_verify_acyclic(Reporter& r, const Globals& gl, const std::string& file) {
  reject_csv(r, "verify acyclic");
  const Input in = read_input(file);
  r.digest_source = in.bytes;
  const WeightedDigraph g = parse_digraph(in.bytes);
  const AcyclicLabeling lab = acyclic_labeling(g);
  r.payload["acyclic"] = lab.acyclic;
  if (!lab.acyclic) {
    r.payload["cycle"] = id_list(g, lab.cycle);
    r.emit();
    return;
  }
  r.payload["labeling"] = id_list(g, lab.order);
  bool ok = true;
  r.payload["L+"] = acyclic_side(g, lab, Orientation::in, gl.exact, ok);
  r.payload["L-"] = acyclic_side(g, lab, Orientation::out, gl.exact, ok);
  r.payload["ok"] = ok;
  r.tolerances = {{"spectrum", 1e-9}, {"integer", 1e-9}};
  r.emit();
  if (!ok) throw Mismatch{};
}

void cmd_verify_matrices(Reporter& r, const Globals& gl, const std::string& file, const std::string& expected_path) {
  reject_csv(r, "verify matrices");
  const Input in = read_input(file);
  r.digest_source = in.bytes;
  const WeightedDigraph g = parse_digraph(in.bytes);
  json expected;
  if (!expected_path.empty()) {
    const Input ex = read_input(expected_path);
    r.digest_source += ex.bytes;
    try {
      expected = json::parse(ex.bytes);
    } catch (const json::parse_error& e) {
      throw ValidationError("malformed expected file \"" + expected_path + "\": " + e.what());
    }
    if (expected.contains("expected")) expected = expected["expected"];
  } else {
    const json doc = json::parse(in.bytes);
    if (!doc.contains("expected")) throw ValidationError("no expected values in \"" + file + "\"; pass --expected");
    expected = doc["expected"];
  }

  constexpr double entry_tol = 1e-9;
  json differences = json::array();
  std::size_t checked = 0;
  if (expected.contains("matrices")) {
    for (const auto& [name, rows] : expected["matrices"].items()) {
      const OperatorMatrix m = assemble(g, parse_operator_kind(name));
      if (!rows.is_array() || rows.size() != m.entries.rows())
        throw ValidationError("expected matrix " + name + " has the wrong number of rows");
      for (std::size_t i = 0; i < m.entries.rows(); ++i) {
        if (!rows[i].is_array() || rows[i].size() != m.entries.cols())
          throw ValidationError("expected matrix " + name + " has the wrong number of columns");
        for (std::size_t j = 0; j < m.entries.cols(); ++j) {
          const double want = rows[i][j].get<double>();
          const double got = m.entries(i, j);
          ++checked;
          if (std::abs(want - got) > entry_tol * std::max(1.0, std::abs(want)))
            differences.push_back({{"operator", name},
                                   {"row", m.row_ids[i]},
                                   {"col", m.col_ids[j]},
                                   {"expected", clean(want)},
                                   {"actual", clean(got)}});
        }
      }
    }
  }
  json spectra = json::object();
  bool spectra_ok = true;
  if (expected.contains("spectra")) {
    for (const auto& [name, spec] : expected["spectra"].items()) {
      const OperatorMatrix m = assemble(g, parse_operator_kind(name));
      std::vector<Complex> want;
      for (const auto& z : spec.at("values")) want.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
      const double tol = spec.value("tolerance", 1e-9);
      const auto got = eigenvalues(m.entries);
      const double dist = multiset_distance(want, got);
      const bool ok = dist <= tol;
      spectra_ok = spectra_ok && ok;
      spectra[name] = {{"expected", complex_list(want)}, {"actual", complex_list(got)},
                       {"distance", dist}, {"tolerance", tol}, {"ok", ok}};
    }
  }
  const TheoremReport t = verify_source_sink_theorem(g, gl.tol);
  r.payload["entries_checked"] = checked;
  r.payload["differences"] = differences;
  r.payload["spectra"] = spectra;
  r.payload["structural"] = theorem_payload(t);
  const bool ok = differences.empty() && spectra_ok;
  r.payload["ok"] = ok;
  r.tolerances = {{"entry", entry_tol}};
  if (!differences.empty())
    r.warnings.push_back(std::to_string(differences.size()) + " entries differ from the closed-form assembly");
  r.emit();
  if (!ok) throw Mismatch{};
}

void cmd_verify_random(Reporter& r, const Globals& gl, std::size_t count) {
  reject_csv(r, "verify --random");
  r.digest_source = "random:" + std::to_string(count) + ":" + std::to_string(gl.seed);
  json failures = json::array();
  std::size_t modes_differ = 0;
  for (std::size_t i = 0; i < count; ++i) {
    std::mt19937_64 rng(random::split_seed(gl.seed, i));
    const WeightedDigraph g = random::random_digraph(rng);
    const TheoremReport t = verify_source_sink_theorem(g, gl.tol, gl.exact);
    if (t.modes_differ) ++modes_differ;
    if (!t.agree) failures.push_back({{"index", i}, {"graph", json::parse(serialize_digraph(g))}, {"report", theorem_payload(t)}});
  }
  r.payload = {{"graphs", count}, {"seed", gl.seed}, {"failures", failures}, {"modes_differ", modes_differ},
               {"agree", failures.empty()}};
  r.emit();
  if (!failures.empty()) throw Mismatch{};
}

void cmd_circulations(Reporter& r, const Globals&, const std::string& file) {
  const Input in = read_input(file);
  r.digest_source = in.bytes;
  const WeightedDigraph g = parse_digraph(in.bytes);
  const auto basis = circulation_space(g);
  if (r.csv()) {
    basis_csv(r.stream(), g, basis);
    return;
  }
  r.payload = basis_payload(g, basis);
  r.tolerances = {{"rank", default_tolerances(divergence_matrix(g)).rank}};
  r.emit();
}

ArcMeasure parse_measure(const std::string& s) {
  if (s == "weight") return ArcMeasure::weight;
  if (s == "capacity") return ArcMeasure::capacity;
  throw ValidationError("--measure must be weight or capacity, got \"" + s + "\"");
}

void cmd_flows(Reporter& r, const Globals&, const std::string& file, const std::string& measure) {
  const Input in = read_input(file);
  r.digest_source = in.bytes;
  const CapacityNetwork net = parse_network(in.bytes, &r.warnings);
  const ArcMeasure m = parse_measure(measure);
  const auto basis = flow_space(net, m);
  if (r.csv()) {
    basis_csv(r.stream(), net.graph, basis);
    return;
  }
  r.payload = basis_payload(net.graph, basis);
  r.payload["measure"] = measure;
  r.payload["sources"] = net.sources.ids(net.graph);
  r.payload["sinks"] = net.sinks.ids(net.graph);
  r.emit();
}

std::vector<std::string> split_ids(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

void cmd_cut(Reporter& r, const Globals&, const std::string& file, const std::string& members) {
  reject_csv(r, "cut");
  const Input in = read_input(file);
  r.digest_source = in.bytes;
  const CapacityNetwork net = parse_network(in.bytes, &r.warnings);
  const VertexSubset x = VertexSubset::of_ids(net.graph, split_ids(members));
  const CutCapacity c = cut_capacity(net, x);
  const double tol = 1e-10 * std::max(1.0, std::abs(c.by_sum));
  const bool agree = std::abs(c.by_sum - c.by_quadratic_form) <= tol;
  r.payload = {{"members", x.ids(net.graph)}, {"value", c.value}, {"by_sum", c.by_sum},
               {"by_quadratic_form", c.by_quadratic_form}, {"agree", agree}};
  r.tolerances = {{"agreement", tol}};
  r.emit();
  if (!agree) throw Mismatch{};
}

ArcFunction read_flow(const CapacityNetwork& net, const std::string& text, const std::string& path) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("malformed flow file \"" + path + "\": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("values") || !doc["values"].is_object())
    throw ValidationError("flow file \"" + path + "\" needs a \"values\" object");
  std::vector<double> values(net.graph.size(), 0.0);
  std::vector<bool> seen(net.graph.size(), false);
  for (const auto& [id, v] : doc["values"].items()) {
    const auto a = net.graph.find_arc(id);
    if (!a) throw ValidationError("flow names unknown arc \"" + id + "\"");
    if (!v.is_number()) throw ValidationError("flow value for arc \"" + id + "\" is not a number");
    values[*a] = v.get<double>();
    seen[*a] = true;
  }
  for (std::size_t a = 0; a < seen.size(); ++a)
    if (!seen[a]) throw ValidationError("flow has no value for arc \"" + net.graph.arc(a).id + "\"");
  return ArcFunction::from_real(net.graph, values);
}

void cmd_value(Reporter& r, const Globals&, const std::string& file, const std::string& flow_path, const std::string& at) {
  reject_csv(r, "value");
  const Input in = read_input(file);
  const Input fl = read_input(flow_path);
  r.digest_source = in.bytes + fl.bytes;
  const CapacityNetwork net = parse_network(in.bytes, &r.warnings);
  const ArcFunction eta = read_flow(net, fl.bytes, flow_path);
  const FlowValue v = flow_value(net, eta, at);
  const double tol = 1e-10 * std::max(1.0, std::abs(v.by_sum));
  const bool agree = std::abs(v.by_sum - v.by_inner_product) <= tol;
  r.payload = {{"at", at}, {"value", v.value}, {"by_sum", v.by_sum}, {"by_inner_product", v.by_inner_product},
               {"agree", agree}, {"feasible", is_feasible(net, eta)}};
  r.tolerances = {{"agreement", tol}};
  r.emit();
  if (!agree) throw Mismatch{};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted in/out Laplacians of multidigraphs: spectra, structure and flows", "dirlap"};
  app.fallthrough();
  app.require_subcommand(1);

  Globals gl;
  app.add_option("--tol", gl.tol, "Relative zero tolerance (threshold tol * max(1, ||M||_F))")
      ->check(CLI::PositiveNumber);
  app.add_flag("--exact", gl.exact, "Also run the exact rational path");
  app.add_option("--format", gl.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", gl.seed, "Seed for randomized verification");

  std::string file, op, route = "closed", orientation = "both", expected, measure = "weight", members, flow, at;
  std::size_t chain_limit = kDefaultChainLimit;
  std::size_t random_count = 0;

  auto* matrices = app.add_subcommand("matrices", "Emit an operator matrix");
  matrices->add_option("--operator", op, "B+, B-, B, D+, D-, D, A+, A-, A, L+, L-, L")->required();
  matrices->add_option("--route", route, "closed or composition");
  matrices->add_option("file", file, "Graph file")->required();

  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues and zero multiplicities");
  spectrum->add_option("--operator", op, "Vertex operator")->required();
  spectrum->add_option("file", file, "Graph file")->required();

  auto* structure = app.add_subcommand("structure", "SCCs, classification and maximal chains");
  structure->add_option("--chain-limit", chain_limit, "Maximum number of chains")->check(CLI::PositiveNumber);
  structure->add_option("file", file, "Graph file")->required();

  auto* verify = app.add_subcommand("verify", "Run a verification");
  verify->add_option("--random", random_count, "Check the source/sink theorem on N random digraphs");
  verify->require_subcommand(0, 1);
  auto* v_theorem = verify->add_subcommand("theorem", "Zero multiplicities against sources and sinks");
  v_theorem->add_option("file", file, "Graph file")->required();
  auto* v_decomp = verify->add_subcommand("decomposition", "Spectrum against compressed blocks");
  v_decomp->add_option("--orientation", orientation, "in, out or both");
  v_decomp->add_option("file", file, "Graph file")->required();
  auto* v_acyclic = verify->add_subcommand("acyclic", "Triangular form and spectrum of acyclic digraphs");
  v_acyclic->add_option("file", file, "Graph file")->required();
  auto* v_matrices = verify->add_subcommand("matrices", "Compare with expected matrices and spectra");
  v_matrices->add_option("--expected", expected, "File with an \"expected\" block");
  v_matrices->add_option("file", file, "Graph file")->required();

  auto* circulations = app.add_subcommand("circulations", "Basis of ker d*");
  circulations->add_option("file", file, "Graph file")->required();

  auto* flows = app.add_subcommand("flows", "Basis of ker d0* for a network");
  flows->add_option("--network,file", file, "Network file")->required();
  flows->add_option("--measure", measure, "weight or capacity");

  auto* cut = app.add_subcommand("cut", "Capacity of the out-cut of X");
  cut->add_option("--members", members, "Comma separated vertex ids of X")->required();
  cut->add_option("--network,file", file, "Network file")->required();

  auto* value = app.add_subcommand("value", "Value of a flow at a source vertex");
  value->add_option("--flow", flow, "Flow file")->required();
  value->add_option("--at", at, "Source vertex id")->required();
  value->add_option("--network,file", file, "Network file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  Reporter r(out, gl);
  try {
    if (*matrices) {
      r.command = "matrices";
      cmd_matrices(r, gl, file, op, route);
    } else if (*spectrum) {
      r.command = "spectrum";
      cmd_spectrum(r, gl, file, op);
    } else if (*structure) {
      r.command = "structure";
      cmd_structure(r, gl, file, chain_limit);
    } else if (*verify) {
      if (*v_theorem) {
        r.command = "verify theorem";
        cmd_verify_theorem(r, gl, file);
      } else if (*v_decomp) {
        r.command = "verify decomposition";
        cmd_verify_decomposition(r, gl, file, orientation);
      } else if (*v_acyclic) {
        r.command = "verify acyclic";
        cmd_verify_acyclic(r, gl, file);
      } else if (*v_matrices) {
        r.command = "verify matrices";
        cmd_verify_matrices(r, gl, file, expected);
      } else if (random_count > 0) {
        r.command = "verify random";
        cmd_verify_random(r, gl, random_count);
      } else {
        throw ValidationError("verify needs theorem, decomposition, acyclic, matrices or --random N");
      }
    } else if (*circulations) {
      r.command = "circulations";
      cmd_circulations(r, gl, file);
    } else if (*flows) {
      r.command = "flows";
      cmd_flows(r, gl, file, measure);
    } else if (*cut) {
      r.command = "cut";
      cmd_cut(r, gl, file, members);
    } else if (*value) {
      r.command = "value";
      cmd_value(r, gl, file, flow, at);
    }
  } catch (const Mismatch&) {
    return kExitMismatch;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    if (!r.digest_source.empty()) {
      r.payload = {{"error", e.what()}};
      r.emit();
    }
    return kExitConvergence;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    if (!r.digest_source.empty()) {
      r.payload = {{"error", e.what()}};
      r.emit();
    }
    return kExitValidation;
  } catch (const std::exception& e) {
    // malformed JSON members (type errors, missing keys)
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  for (const auto& w : r.warnings) err << "warning: " << w << '\n';
  return kExitOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"dirlap"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace dirlap::cli
