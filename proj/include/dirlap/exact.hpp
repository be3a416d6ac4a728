#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dirlap/graph.hpp"

namespace dirlap::exact {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using RationalMatrix = std::vector<std::vector<Rational>>;

/// Exact value of a finite binary64 number.
Rational to_rational(double x);
std::string to_string(const Rational& q);

/// L+ or L- in the indicator basis {1_v}. Similar to the orthonormal-basis
/// matrix through diag(sqrt m), so rank and characteristic polynomial agree,
/// but every entry is rational for any binary64 weights.
RationalMatrix laplacian(const WeightedDigraph& g, Orientation orientation);

/// Fraction-free (Bareiss) elimination on integer-scaled rows.
std::size_t rank(const RationalMatrix& m);
Rational determinant(const RationalMatrix& m);

/// Coefficients c_0..c_n of det(lambda I - M), c_n = 1.
std::vector<Rational> characteristic_polynomial(const RationalMatrix& m);

/// Coefficients of prod (lambda - r_i).
std::vector<Rational> polynomial_from_roots(const std::vector<Rational>& roots);

std::size_t zero_multiplicity_algebraic(const RationalMatrix& m);
std::size_t zero_multiplicity_geometric(const RationalMatrix& m);

}  // namespace dirlap::exact
