#include "dirlap/operators.hpp"

#include <cmath>
#include <json.hpp>
#include <sstream>

#include "dirlap/errors.hpp"

namespace dirlap {

namespace {

constexpr std::array<std::string_view, 12> kKindNames = {"B+", "B-", "B", "D+", "D-", "D",
                                                         "A+", "A-", "A", "L+", "L-", "L"};

/// W(v, w) = m(A^+(w, v)): total weight of arcs from w to v, summed in arc order.
Matrix arc_weight_sums(const WeightedDigraph& g) {
  Matrix w(g.order(), g.order());
  for (const Arc& a : g.arcs()) w(a.head, a.tail) += a.weight;
  return w;
}

double nonloop_measure(const WeightedDigraph& g, std::size_t v, Orientation o) {
  double s = 0.0;
  if (o != Orientation::out)
    for (std::size_t k : g.in_arcs(v))
      if (!g.arc(k).is_loop()) s += g.arc(k).weight;
  if (o != Orientation::in)
    for (std::size_t k : g.out_arcs(v))
      if (!g.arc(k).is_loop()) s += g.arc(k).weight;
  return s;
}

Matrix incidence_closed_form(const WeightedDigraph& g, OperatorKind kind) {
  Matrix b(g.size(), g.order());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Arc& a = g.arc(k);
    const double in_entry = std::sqrt(a.weight / g.vertex(a.head).weight);
    const double out_entry = -std::sqrt(a.weight / g.vertex(a.tail).weight);
    switch (kind) {
      case OperatorKind::B_in: b(k, a.head) = in_entry; break;
      case OperatorKind::B_out: b(k, a.tail) = out_entry; break;
      default:
        // loops cancel in the gradient
        if (!a.is_loop()) {
          b(k, a.head) = in_entry;
          b(k, a.tail) = out_entry;
        }
        break;
    }
  }
  return b;
}

Matrix vertex_closed_form(const WeightedDigraph& g, OperatorKind kind) {
  const std::size_t n = g.order();
  Matrix m(n, n);
  const Matrix sums = arc_weight_sums(g);
  auto mass = [&](std::size_t v) { return g.vertex(v).weight; };
  auto loops = [&](std::size_t v) { return sums(v, v); };

  switch (kind) {
    case OperatorKind::D_in:
    case OperatorKind::D_out:
    case OperatorKind::D: {
      const Orientation o = kind == OperatorKind::D_in    ? Orientation::in
                            : kind == OperatorKind::D_out ? Orientation::out
                                                          : Orientation::both;
      for (std::size_t v = 0; v < n; ++v) m(v, v) = relative_weight(g, v, o);
      return m;
    }
    default: break;
  }

  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w = 0; w < n; ++w) {
      if (v == w) continue;
      const double scale = std::sqrt(mass(v) * mass(w));
      double adjacency = 0.0;
      switch (kind) {
        case OperatorKind::A_in:
        case OperatorKind::L_in: adjacency = sums(v, w) / scale; break;
        case OperatorKind::A_out:
        case OperatorKind::L_out: adjacency = sums(w, v) / scale; break;
        default: adjacency = (sums(v, w) + sums(w, v)) / scale; break;
      }
      const bool laplacian = kind == OperatorKind::L_in || kind == OperatorKind::L_out || kind == OperatorKind::L;
      m(v, w) = laplacian ? -adjacency : adjacency;
    }
    switch (kind) {
      case OperatorKind::A_in:
      case OperatorKind::A_out: m(v, v) = loops(v) / mass(v); break;
      case OperatorKind::A: m(v, v) = 2.0 * loops(v) / mass(v); break;
      case OperatorKind::L_in: m(v, v) = nonloop_measure(g, v, Orientation::in) / mass(v); break;
      case OperatorKind::L_out: m(v, v) = nonloop_measure(g, v, Orientation::out) / mass(v); break;
      case OperatorKind::L: m(v, v) = nonloop_measure(g, v, Orientation::both) / mass(v); break;
      default: break;
    }
  }
  return m;
}

/// Column w holds the orthonormal coordinates of d^{kind} delta_w.
Matrix incidence_by_evaluation(const WeightedDigraph& g, FirstOrder kind) {
  Matrix b(g.size(), g.order());
  for (std::size_t w = 0; w < g.order(); ++w) {
    std::vector<Complex> delta(g.order(), 0.0);
    delta[w] = 1.0 / std::sqrt(g.vertex(w).weight);
    const ArcFunction image = evaluate_first_order(g, kind, VertexFunction(g, std::move(delta)));
    const std::vector<Complex> coords = image.coordinates(g);
    for (std::size_t k = 0; k < g.size(); ++k) b(k, w) = coords[k].real();
  }
  return b;
}

OperatorMatrix wrap(const WeightedDigraph& g, OperatorKind kind, Matrix entries) {
  OperatorMatrix om;
  om.kind = kind;
  om.entries = std::move(entries);
  om.row_ids = is_incidence(kind) ? g.arc_ids() : g.vertex_ids();
  om.col_ids = g.vertex_ids();
  om.graph = g.fingerprint();
  return om;
}

}  // namespace

std::string_view to_string(OperatorKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

OperatorKind parse_operator_kind(std::string_view text) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i)
    if (kKindNames[i] == text) return kAllOperatorKinds[i];
  throw ValidationError("unknown operator kind '" + std::string(text) + "'");
}

bool is_incidence(OperatorKind kind) {
  return kind == OperatorKind::B_in || kind == OperatorKind::B_out || kind == OperatorKind::B;
}

ArcFunction evaluate_first_order(const WeightedDigraph& g, FirstOrder kind, const VertexFunction& phi) {
  phi.require_parent(g);
  std::vector<Complex> out(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Arc& a = g.arc(k);
    switch (kind) {
      case FirstOrder::d_in: out[k] = phi[a.head]; break;
      case FirstOrder::d_out: out[k] = -phi[a.tail]; break;
      case FirstOrder::d: out[k] = phi[a.head] - phi[a.tail]; break;
    }
  }
  return ArcFunction(g, std::move(out));
}

VertexFunction adjoint_first_order(const WeightedDigraph& g, FirstOrder kind, const ArcFunction& eta) {
  eta.require_parent(g);
  std::vector<Complex> acc(g.order(), 0.0);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Arc& a = g.arc(k);
    const Complex flux = a.weight * eta[k];
    if (kind != FirstOrder::d_out) acc[a.head] += flux;
    if (kind != FirstOrder::d_in) acc[a.tail] -= flux;
  }
  for (std::size_t v = 0; v < g.order(); ++v) acc[v] /= g.vertex(v).weight;
  return VertexFunction(g, std::move(acc));
}

OperatorMatrix assemble(const WeightedDigraph& g, OperatorKind kind) {
  if (is_incidence(kind)) return wrap(g, kind, incidence_closed_form(g, kind));
  return wrap(g, kind, vertex_closed_form(g, kind));
}

OperatorMatrix assemble_by_composition(const WeightedDigraph& g, OperatorKind kind) {
  const Matrix b_in = incidence_by_evaluation(g, FirstOrder::d_in);
  const Matrix b_out = incidence_by_evaluation(g, FirstOrder::d_out);
  const Matrix b = incidence_by_evaluation(g, FirstOrder::d);
  const Matrix b_in_t = b_in.transposed();
  const Matrix b_out_t = b_out.transposed();
  Matrix m;
  switch (kind) {
    case OperatorKind::B_in: m = b_in; break;
    case OperatorKind::B_out: m = b_out; break;
    case OperatorKind::B: m = b; break;
    case OperatorKind::D_in: m = b_in_t * b_in; break;
    case OperatorKind::D_out: m = b_out_t * b_out; break;
    case OperatorKind::D: m = b_in_t * b_in + b_out_t * b_out; break;
    case OperatorKind::A_in: m = -1.0 * (b_in_t * b_out); break;
    case OperatorKind::A_out: m = -1.0 * (b_out_t * b_in); break;
    case OperatorKind::A: m = -1.0 * (b_in_t * b_out + b_out_t * b_in); break;
    case OperatorKind::L_in: m = b_in_t * b; break;
    case OperatorKind::L_out: m = b_out_t * b; break;
    case OperatorKind::L: m = b.transposed() * b; break;
  }
  return wrap(g, kind, std::move(m));
}

InteriorFunction interior_function(const WeightedDigraph& g, const VertexSubset& w, std::vector<Complex> values) {
  VertexSubset domain = w.complement(g);
  if (values.size() != domain.size()) {
    throw ValidationError("interior function must have one value per vertex outside the Dirichlet set");
  }
  return InteriorFunction{std::move(domain), std::move(values)};
}

ArcFunction dirichlet_gradient(const WeightedDigraph& g, const VertexSubset& w, const InteriorFunction& phi0) {
  const VertexSubset domain = w.complement(g);
  if (phi0.domain != domain || phi0.values.size() != domain.size()) {
    throw ValidationError("interior function domain does not match V \\ W");
  }
  std::vector<Complex> extended(g.order(), 0.0);
  for (std::size_t i = 0; i < domain.size(); ++i) extended[domain.members()[i]] = phi0.values[i];
  return evaluate_first_order(g, FirstOrder::d, VertexFunction(g, std::move(extended)));
}

InteriorFunction dirichlet_divergence(const WeightedDigraph& g, const VertexSubset& w, const ArcFunction& eta) {
  const VertexFunction div = adjoint_first_order(g, FirstOrder::d, eta);
  VertexSubset domain = w.complement(g);
  std::vector<Complex> restricted;
  restricted.reserve(domain.size());
  for (std::size_t v : domain.members()) restricted.push_back(div[v]);
  return InteriorFunction{std::move(domain), std::move(restricted)};
}

Complex inner(const WeightedDigraph& g, const InteriorFunction& phi, const InteriorFunction& psi) {
  phi.domain.require_parent(g);
  if (phi.domain != psi.domain) throw ValidationError("interior functions on different domains");
  Complex s = 0.0;
  for (std::size_t i = 0; i < phi.values.size(); ++i) {
    s += phi.values[i] * std::conj(psi.values[i]) * g.vertex(phi.domain.members()[i]).weight;
  }
  return s;
}

Matrix divergence_matrix(const WeightedDigraph& g) {
  return incidence_closed_form(g, OperatorKind::B).transposed();
}

Matrix dirichlet_divergence_matrix(const WeightedDigraph& g, const VertexSubset& w) {
  const VertexSubset domain = w.complement(g);
  std::vector<std::size_t> cols(g.size());
  for (std::size_t k = 0; k < cols.size(); ++k) cols[k] = k;
  return divergence_matrix(g).select(domain.members(), cols);
}

std::string matrix_to_json(const OperatorMatrix& m) {
  nlohmann::json doc;
  doc["kind"] = std::string(to_string(m.kind));
  doc["rows"] = m.row_ids;
  doc["cols"] = m.col_ids;
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (std::size_t i = 0; i < m.entries.rows(); ++i) {
    nlohmann::json r = nlohmann::json::array();
    nlohmann::json z = nlohmann::json::array();
    for (std::size_t j = 0; j < m.entries.cols(); ++j) {
      r.push_back(m.entries(i, j) == 0.0 ? 0.0 : m.entries(i, j));
      z.push_back(0.0);
    }
    re.push_back(std::move(r));
    im.push_back(std::move(z));
  }
  doc["re"] = std::move(re);
  doc["im"] = std::move(im);
  return doc.dump();
}

std::string matrix_to_csv(const OperatorMatrix& m) {
  std::ostringstream out;
  out.precision(17);
  out << "row,col,re,im\n";
  for (std::size_t i = 0; i < m.entries.rows(); ++i)
    for (std::size_t j = 0; j < m.entries.cols(); ++j) {
      const double x = m.entries(i, j) == 0.0 ? 0.0 : m.entries(i, j);
      out << m.row_ids[i] << ',' << m.col_ids[j] << ',' << x << ",0\n";
    }
  return out.str();
}

}  // namespace dirlap
