#include "dirlap/exact.hpp"

#include <cmath>
#include <cstdint>
#include <utility>

#include "dirlap/errors.hpp"

namespace dirlap::exact {

Rational to_rational(double x) {
  if (!std::isfinite(x)) throw ValidationError("non-finite value has no rational form");
  if (x == 0.0) return Rational(0);
  int exponent = 0;
  const double mantissa = std::frexp(x, &exponent);
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Integer numerator = scaled;
  Integer denominator = 1;
  if (exponent >= 0) numerator <<= exponent;
  else denominator <<= -exponent;
  return Rational(numerator, denominator);
}

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

RationalMatrix laplacian(const WeightedDigraph& g, Orientation orientation) {
  if (orientation == Orientation::both) throw ValidationError("exact Laplacian needs orientation in or out");
  const std::size_t n = g.order();
  RationalMatrix m(n, std::vector<Rational>(n, Rational(0)));
  for (const Arc& a : g.arcs()) {
    if (a.is_loop()) continue;
    const std::size_t row = orientation == Orientation::in ? a.head : a.tail;
    const std::size_t other = orientation == Orientation::in ? a.tail : a.head;
    const Rational w = to_rational(a.weight);
    m[row][row] += w;
    m[row][other] -= w;
  }
  for (std::size_t v = 0; v < n; ++v) {
    const Rational mv = to_rational(g.vertex(v).weight);
    for (auto& x : m[v]) x /= mv;
  }
  return m;
}

namespace {

std::vector<std::vector<Integer>> integer_rows(const RationalMatrix& m) {
  std::vector<std::vector<Integer>> out;
  out.reserve(m.size());
  for (const auto& row : m) {
    Integer scale = 1;
    for (const auto& q : row) scale = boost::multiprecision::lcm(scale, Integer(denominator(q)));
    std::vector<Integer> r;
    r.reserve(row.size());
    for (const auto& q : row) r.push_back(numerator(q) * (scale / denominator(q)));
    out.push_back(std::move(r));
  }
  return out;
}

struct BareissResult {
  std::size_t rank = 0;
  Integer last_pivot = 1;
  int sign = 1;
};

BareissResult bareiss(std::vector<std::vector<Integer>> a, std::size_t cols) {
  const std::size_t rows = a.size();
  BareissResult result;
  Integer previous = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r) {
      std::swap(a[pivot], a[r]);
      result.sign = -result.sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / previous;
      a[i][c] = 0;
    }
    previous = a[r][c];
    ++r;
  }
  result.rank = r;
  result.last_pivot = previous;
  return result;
}

}  // namespace

std::size_t rank(const RationalMatrix& m) {
  if (m.empty()) return 0;
  return bareiss(integer_rows(m), m.front().size()).rank;
}

Rational determinant(const RationalMatrix& m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw ValidationError("determinant of a non-square matrix");
  if (n == 0) return Rational(1);
  Integer scale = 1;
  std::vector<std::vector<Integer>> rows;
  for (const auto& row : m) {
    Integer s = 1;
    for (const auto& q : row) s = boost::multiprecision::lcm(s, Integer(denominator(q)));
    scale *= s;
    std::vector<Integer> r;
    for (const auto& q : row) r.push_back(numerator(q) * (s / denominator(q)));
    rows.push_back(std::move(r));
  }
  const BareissResult b = bareiss(std::move(rows), n);
  if (b.rank < n) return Rational(0);
  return Rational(b.last_pivot * b.sign, scale);
}

std::vector<Rational> characteristic_polynomial(const RationalMatrix& a) {
  const std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw ValidationError("characteristic polynomial of a non-square matrix");
  // Faddeev-LeVerrier recursion
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  RationalMatrix m(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t k = 1; k <= n; ++k) {
    RationalMatrix next(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Rational s = 0;
        for (std::size_t l = 0; l < n; ++l)
          if (a[i][l] != 0 && m[l][j] != 0) s += a[i][l] * m[l][j];
        next[i][j] = s;
      }
      next[i][i] += c[n - k + 1];
    }
    m = std::move(next);
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l)
        if (a[i][l] != 0 && m[l][i] != 0) tr += a[i][l] * m[l][i];
    c[n - k] = -tr / Rational(static_cast<long long>(k));
  }
  return c;
}

std::vector<Rational> polynomial_from_roots(const std::vector<Rational>& roots) {
  std::vector<Rational> p{Rational(1)};
  for (const auto& r : roots) {
    std::vector<Rational> next(p.size() + 1, Rational(0));
    for (std::size_t i = 0; i < p.size(); ++i) {
      next[i + 1] += p[i];
      next[i] -= r * p[i];
    }
    p = std::move(next);
  }
  return p;
}

std::size_t zero_multiplicity_algebraic(const RationalMatrix& m) {
  const auto c = characteristic_polynomial(m);
  std::size_t k = 0;
  while (k + 1 < c.size() && c[k] == 0) ++k;
  return k;
}

std::size_t zero_multiplicity_geometric(const RationalMatrix& m) { return m.size() - rank(m); }

}  // namespace dirlap::exact
