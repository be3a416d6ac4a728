#include "dirlap/functions.hpp"

#include <cmath>

#include "dirlap/errors.hpp"

namespace dirlap {

VertexFunction::VertexFunction(const WeightedDigraph& g, std::vector<Complex> values)
    : values_(std::move(values)), parent_(g.fingerprint()) {
  if (values_.size() != g.order()) throw ValidationError("vertex function must be defined on every vertex");
}

VertexFunction VertexFunction::zero(const WeightedDigraph& g) { return constant(g, 0.0); }

VertexFunction VertexFunction::constant(const WeightedDigraph& g, Complex c) {
  return VertexFunction(g, std::vector<Complex>(g.order(), c));
}

VertexFunction VertexFunction::indicator(const WeightedDigraph& g, const VertexSubset& s) {
  s.require_parent(g);
  std::vector<Complex> v(g.order(), 0.0);
  for (std::size_t i : s.members()) v[i] = 1.0;
  return VertexFunction(g, std::move(v));
}

VertexFunction VertexFunction::from_real(const WeightedDigraph& g, std::span<const double> values) {
  return VertexFunction(g, std::vector<Complex>(values.begin(), values.end()));
}

VertexFunction VertexFunction::from_coordinates(const WeightedDigraph& g, std::span<const double> coords) {
  if (coords.size() != g.order()) throw ValidationError("coordinate vector has the wrong length");
  std::vector<Complex> v(g.order());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = coords[i] / std::sqrt(g.vertex(i).weight);
  return VertexFunction(g, std::move(v));
}

void VertexFunction::require_parent(const WeightedDigraph& g) const {
  if (parent_ != g.fingerprint() || values_.size() != g.order()) {
    throw ValidationError("vertex function lives on a different graph");
  }
}

std::vector<Complex> VertexFunction::coordinates(const WeightedDigraph& g) const {
  require_parent(g);
  std::vector<Complex> c(values_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = values_[i] * std::sqrt(g.vertex(i).weight);
  return c;
}

ArcFunction::ArcFunction(const WeightedDigraph& g, std::vector<Complex> values)
    : values_(std::move(values)), parent_(g.fingerprint()) {
  if (values_.size() != g.size()) throw ValidationError("arc function must be defined on every arc");
}

ArcFunction ArcFunction::zero(const WeightedDigraph& g) {
  return ArcFunction(g, std::vector<Complex>(g.size(), 0.0));
}

ArcFunction ArcFunction::from_real(const WeightedDigraph& g, std::span<const double> values) {
  return ArcFunction(g, std::vector<Complex>(values.begin(), values.end()));
}

ArcFunction ArcFunction::from_coordinates(const WeightedDigraph& g, std::span<const double> coords) {
  if (coords.size() != g.size()) throw ValidationError("coordinate vector has the wrong length");
  std::vector<Complex> v(g.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = coords[k] / std::sqrt(g.arc(k).weight);
  return ArcFunction(g, std::move(v));
}

void ArcFunction::require_parent(const WeightedDigraph& g) const {
  if (parent_ != g.fingerprint() || values_.size() != g.size()) {
    throw ValidationError("arc function lives on a different graph");
  }
}

std::vector<Complex> ArcFunction::coordinates(const WeightedDigraph& g) const {
  require_parent(g);
  std::vector<Complex> c(values_.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = values_[k] * std::sqrt(g.arc(k).weight);
  return c;
}

bool ArcFunction::is_real() const {
  for (const Complex& z : values_)
    if (z.imag() != 0.0) return false;
  return true;
}

std::vector<double> ArcFunction::real_values() const {
  std::vector<double> r(values_.size());
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = values_[k].real();
  return r;
}

ArcFunction ArcFunction::rebind(const WeightedDigraph& g) const { return ArcFunction(g, values_); }

Complex inner(const WeightedDigraph& g, const VertexFunction& phi, const VertexFunction& psi) {
  phi.require_parent(g);
  psi.require_parent(g);
  Complex s = 0.0;
  for (std::size_t v = 0; v < g.order(); ++v) s += phi[v] * std::conj(psi[v]) * g.vertex(v).weight;
  return s;
}

Complex inner(const WeightedDigraph& g, const ArcFunction& eta, const ArcFunction& alpha) {
  eta.require_parent(g);
  alpha.require_parent(g);
  Complex s = 0.0;
  for (std::size_t a = 0; a < g.size(); ++a) s += eta[a] * std::conj(alpha[a]) * g.arc(a).weight;
  return s;
}

double norm(const WeightedDigraph& g, const VertexFunction& phi) { return std::sqrt(inner(g, phi, phi).real()); }
double norm(const WeightedDigraph& g, const ArcFunction& eta) { return std::sqrt(inner(g, eta, eta).real()); }

}  // namespace dirlap
