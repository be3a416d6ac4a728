#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "dirlap/graph.hpp"

namespace dirlap {

using Complex = std::complex<double>;

/// Complex function on the vertices, an element of l2(V, m).
class VertexFunction {
 public:
  VertexFunction() = default;
  VertexFunction(const WeightedDigraph& g, std::vector<Complex> values);

  static VertexFunction zero(const WeightedDigraph& g);
  static VertexFunction constant(const WeightedDigraph& g, Complex c);
  static VertexFunction indicator(const WeightedDigraph& g, const VertexSubset& s);
  static VertexFunction from_real(const WeightedDigraph& g, std::span<const double> values);
  /// Inverse of coordinates(): phi(v) = c_v / sqrt(m(v)).
  static VertexFunction from_coordinates(const WeightedDigraph& g, std::span<const double> coords);

  std::span<const Complex> values() const noexcept { return values_; }
  Complex operator[](std::size_t v) const { return values_[v]; }
  std::size_t size() const noexcept { return values_.size(); }
  std::uint64_t parent() const noexcept { return parent_; }
  void require_parent(const WeightedDigraph& g) const;

  /// Coefficients in the orthonormal basis delta_v = 1_v / sqrt(m(v)):
  /// c_v = phi(v) sqrt(m(v)). Complex in general.
  std::vector<Complex> coordinates(const WeightedDigraph& g) const;

 private:
  std::vector<Complex> values_;
  std::uint64_t parent_ = 0;
};

/// Complex function on the arcs, an element of l2(A, m).
class ArcFunction {
 public:
  ArcFunction() = default;
  ArcFunction(const WeightedDigraph& g, std::vector<Complex> values);

  static ArcFunction zero(const WeightedDigraph& g);
  static ArcFunction from_real(const WeightedDigraph& g, std::span<const double> values);
  static ArcFunction from_coordinates(const WeightedDigraph& g, std::span<const double> coords);

  std::span<const Complex> values() const noexcept { return values_; }
  Complex operator[](std::size_t a) const { return values_[a]; }
  std::size_t size() const noexcept { return values_.size(); }
  std::uint64_t parent() const noexcept { return parent_; }
  void require_parent(const WeightedDigraph& g) const;

  std::vector<Complex> coordinates(const WeightedDigraph& g) const;
  bool is_real() const;
  std::vector<double> real_values() const;

  /// Re-labels the function onto another graph with the same arc set; used when
  /// one arc function is measured against two different arc weightings.
  ArcFunction rebind(const WeightedDigraph& g) const;

 private:
  std::vector<Complex> values_;
  std::uint64_t parent_ = 0;
};

/// <phi, psi> = sum_v phi(v) conj(psi(v)) m(v)
Complex inner(const WeightedDigraph& g, const VertexFunction& phi, const VertexFunction& psi);
/// <eta, alpha> = sum_a eta(a) conj(alpha(a)) m(a)
Complex inner(const WeightedDigraph& g, const ArcFunction& eta, const ArcFunction& alpha);
double norm(const WeightedDigraph& g, const VertexFunction& phi);
double norm(const WeightedDigraph& g, const ArcFunction& eta);

}  // namespace dirlap
