#include <doctest.h>

#include <cmath>
#include <random>

#include "dirlap/exact.hpp"
#include "dirlap/numerics.hpp"
#include "dirlap/operators.hpp"
#include "dirlap/random_graphs.hpp"
#include "dirlap/structure.hpp"
#include "support.hpp"

using namespace dirlap;
using exact::Rational;

TEST_CASE("binary64 to rational is exact") {
  CHECK(exact::to_rational(0.5) == Rational(1, 2));
  CHECK(exact::to_rational(-3.0) == Rational(-3));
  CHECK(exact::to_rational(0.0) == Rational(0));
  const Rational tenth = exact::to_rational(0.1);
  CHECK(tenth != Rational(1, 10));
  CHECK(static_cast<double>(tenth) == 0.1);
  CHECK(exact::to_string(Rational(-7, 3)) == "-7/3");
}

TEST_CASE("rank, determinant, characteristic polynomial") {
  const exact::RationalMatrix m{{2, 1}, {4, 2}};
  CHECK(exact::rank(m) == 1);
  CHECK(exact::determinant(m) == 0);
  const exact::RationalMatrix n{{Rational(1, 2), 3}, {1, 4}};
  CHECK(exact::determinant(n) == Rational(-1));
  // det(l I - n) = l^2 - 4.5 l - 1
  CHECK(exact::characteristic_polynomial(n) == std::vector<Rational>{-1, Rational(-9, 2), 1});
  CHECK(exact::polynomial_from_roots({1, 2}) == std::vector<Rational>{2, -3, 1});
  CHECK(exact::rank({}) == 0);
  CHECK(exact::characteristic_polynomial({}) == std::vector<Rational>{1});
}

TEST_CASE("exact zero multiplicities of the example Laplacians") {
  const WeightedDigraph g1 = testing::load("g1.json");
  const auto lm = exact::laplacian(g1, Orientation::out);
  CHECK(exact::zero_multiplicity_algebraic(lm) == 2);
  CHECK(exact::zero_multiplicity_geometric(lm) == 2);
  // charpoly of L- on G1 is l^2 (l - 2)^3
  CHECK(exact::characteristic_polynomial(lm) == exact::polynomial_from_roots({0, 0, 2, 2, 2}));

  const WeightedDigraph ef = testing::load("ef_l_d_est.json");
  CHECK(exact::zero_multiplicity_algebraic(exact::laplacian(ef, Orientation::in)) == 1);
  CHECK(exact::zero_multiplicity_algebraic(exact::laplacian(ef, Orientation::out)) == 3);
}

TEST_CASE("property: exact path agrees with the floating-point path") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    random::DigraphOptions o;
    o.max_order = 8;
    const WeightedDigraph g = random::random_digraph(rng, o);
    for (Orientation orient : {Orientation::in, Orientation::out}) {
      const auto q = exact::laplacian(g, orient);
      const Matrix m = assemble(g, orient == Orientation::in ? OperatorKind::L_in : OperatorKind::L_out).entries;
      // the indicator basis matrix is similar through diag(sqrt m): equal trace
      Rational tr = 0;
      for (std::size_t i = 0; i < q.size(); ++i) tr += q[i][i];
      CHECK(static_cast<double>(tr) == doctest::Approx(m.trace()).epsilon(1e-12));
      CHECK(exact::zero_multiplicity_geometric(q) == zero_multiplicity(m, Multiplicity::geometric));
      CHECK(exact::zero_multiplicity_algebraic(q) == zero_multiplicity(m, Multiplicity::algebraic));
    }
  }
}

TEST_CASE("property: acyclic charpoly is the product over the diagonal") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const WeightedDigraph g = random::random_dag(rng, 9);
    for (Orientation orient : {Orientation::in, Orientation::out}) {
      const auto q = exact::laplacian(g, orient);
      std::vector<Rational> diag;
      for (std::size_t i = 0; i < q.size(); ++i) diag.push_back(q[i][i]);
      CHECK(exact::characteristic_polynomial(q) == exact::polynomial_from_roots(diag));
      for (std::size_t v = 0; v < g.order(); ++v) CHECK(diag[v] == exact::to_rational(relative_weight(g, v, orient)));
    }
  }
}
