#include <doctest.h>

#include <cmath>
#include <random>

#include "dirlap/errors.hpp"
#include "dirlap/flows.hpp"
#include "dirlap/numerics.hpp"
#include "dirlap/operators.hpp"
#include "dirlap/random_graphs.hpp"
#include "support.hpp"

using namespace dirlap;

namespace {

CapacityNetwork example() { return parse_network(testing::read_file(testing::fixture_path("flow_network.json"))); }

ArcFunction example_eta(const CapacityNetwork& net) {
  return ArcFunction::from_real(net.graph, std::vector<double>{1, 2, 1, 2, 1});
}

/// Random combination of the flow space basis.
ArcFunction random_flow(std::mt19937_64& rng, const CapacityNetwork& net) {
  std::normal_distribution<double> d;
  std::vector<double> values(net.graph.size(), 0.0);
  for (const ArcFunction& b : flow_space(net)) {
    const double c = d(rng);
    for (std::size_t a = 0; a < values.size(); ++a) values[a] += c * b[a].real();
  }
  return ArcFunction::from_real(net.graph, values);
}

/// Direct cut capacity: sum of c(a) over arcs leaving X.
double cut_oracle(const CapacityNetwork& net, const VertexSubset& x) {
  double s = 0.0;
  for (std::size_t a = 0; a < net.graph.size(); ++a) {
    const Arc& arc = net.graph.arc(a);
    if (x.contains(arc.tail) && !x.contains(arc.head)) s += net.capacity[a];
  }
  return s;
}

}  // namespace

TEST_CASE("circulations") {
  const WeightedDigraph tree = testing::digraph(testing::ids(4), {{"v1", "v2"}, {"v1", "v3"}, {"v3", "v4"}});
  CHECK(circulation_space(tree).empty());

  const WeightedDigraph c5 = testing::load("cycle5.json");
  const auto basis = circulation_space(c5);
  REQUIRE(basis.size() == 1);
  for (std::size_t a = 1; a < c5.size(); ++a) CHECK(std::abs(basis[0][a] - basis[0][0]) < 1e-12);
  CHECK(is_circulation(c5, ArcFunction::from_real(c5, std::vector<double>(5, 3.0)), 1e-12));
  CHECK_FALSE(is_circulation(c5, ArcFunction::from_real(c5, std::vector<double>{1, 0, 0, 0, 0}), 1e-12));

  const WeightedDigraph loopy = testing::load("chains.json");
  std::vector<double> loop(loopy.size(), 0.0);
  loop[loopy.arc_index("a8")] = 1.0;
  CHECK(is_circulation(loopy, ArcFunction::from_real(loopy, loop), 1e-12));
}

TEST_CASE("flow space of the example network") {
  const CapacityNetwork net = example();
  const auto basis = flow_space(net);
  CHECK(basis.size() == 3);
  CHECK(is_flow(net, example_eta(net), 1e-12));
  CHECK_FALSE(is_flow(net, ArcFunction::from_real(net.graph, std::vector<double>{1, 0, 0, 0, 0}), 1e-12));
  for (const ArcFunction& b : basis) CHECK(is_flow(net, b, 1e-10));

  // an interior vertex with only entering arcs forces zero on them
  const WeightedDigraph g = testing::digraph({"x", "v", "t", "y"}, {{"x", "v"}, {"x", "t"}, {"t", "y"}});
  const CapacityNetwork dead = make_network(g, {1, 1, 1}, {"x"}, {"y"});
  const auto fs = flow_space(dead);
  REQUIRE(fs.size() == 1);
  CHECK(std::abs(fs[0][0]) < 1e-12);
  CHECK(std::abs(fs[0][1] - fs[0][2]) < 1e-12);

  const WeightedDigraph path = testing::load("path5.json");
  const CapacityNetwork p = make_network(path, {1, 1, 1, 1}, {"v1"}, {"v5"});
  const auto pf = flow_space(p);
  REQUIRE(pf.size() == 1);
  for (std::size_t a = 1; a < 4; ++a) CHECK(std::abs(pf[0][a] - pf[0][0]) < 1e-12);
}

TEST_CASE("network validation") {
  const WeightedDigraph g = testing::load("flow_network.json");
  CHECK_THROWS_AS(make_network(g, {1, 2, 3, 4}, {"x"}, {"y"}), ValidationError);
  CHECK_THROWS_AS(make_network(g, {1, 2, 0, 4, 5}, {"x"}, {"y"}), ValidationError);
  CHECK_THROWS_AS(make_network(g, {1, 2, 3, 4, 5}, {"x"}, {"x"}), ValidationError);
  CHECK_THROWS_AS(make_network(g, {1, 2, 3, 4, 5}, {"v2"}, {"y"}), ValidationError);
  CHECK_THROWS_AS(make_network(g, {1, 2, 3, 4, 5}, {"x"}, {"v3"}), ValidationError);

  std::vector<std::string> warnings;
  make_network(testing::load("w_digrph.json"), {1, 1, 1, 1, 1}, {}, {}, &warnings);
  CHECK_FALSE(warnings.empty());

  const CapacityNetwork all = make_network(testing::digraph({"a", "b"}, {{"a", "b"}}), {1}, {"a"}, {"b"});
  CHECK_THROWS_AS(flow_space(all), ValidationError);
}

TEST_CASE("orthogonality of flows and Dirichlet gradients") {
  const CapacityNetwork net = example();
  const VertexSubset w = net.boundary();
  std::mt19937_64 rng(6);
  for (int t = 0; t < 20; ++t) {
    const InteriorFunction phi = interior_function(net.graph, w, testing::random_complex(rng, 2));
    CHECK(orthogonality_check(net, example_eta(net), phi) < 1e-12);
  }
  const WeightedDigraph c5 = testing::load("cycle5.json");
  const auto circ = circulation_space(c5);
  const VertexFunction phi(c5, testing::random_complex(rng, 5));
  CHECK(orthogonality_check(c5, circ[0], phi) < 1e-12);
}

TEST_CASE("cut capacity of the example") {
  const CapacityNetwork net = example();
  const CutCapacity c = cut_capacity(net, VertexSubset::of_ids(net.graph, {"x", "v2", "v3"}));
  CHECK(c.value == 9.0);
  CHECK(c.by_sum == 9.0);
  CHECK(c.by_quadratic_form == doctest::Approx(9.0).epsilon(1e-12));

  const CutCapacity c1 = cut_capacity(net, VertexSubset::of_ids(net.graph, {"x"}));
  CHECK(c1.by_sum == 3.0);
  CHECK_THROWS_AS(cut_capacity(net, VertexSubset::of_ids(net.graph, {"v2"})), ValidationError);
  CHECK_THROWS_AS(cut_capacity(net, VertexSubset::of_ids(net.graph, {"x", "y"})), ValidationError);

  // the printed L- of the capacity graph
  const Matrix printed = Matrix::from_rows({{3, -1, -2, 0}, {0, 4, 0, -4}, {0, -3, 8, -5}, {0, 0, 0, 0}});
  CHECK(assemble(net.capacity_graph(), OperatorKind::L_out).entries == printed);
}

TEST_CASE("flow value of the example") {
  const CapacityNetwork net = example();
  const ArcFunction eta = example_eta(net);
  const FlowValue v = flow_value(net, eta, "x");
  CHECK(v.value == 3.0);
  CHECK(v.by_sum == 3.0);
  CHECK(v.by_inner_product == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(is_feasible(net, eta));
  CHECK_FALSE(is_feasible(net, ArcFunction::from_real(net.graph, std::vector<double>{2, 0, 0, 2, 0})));
  CHECK_THROWS_AS(flow_value(net, eta, "y"), ValidationError);
  CHECK_THROWS_AS(flow_value(net, ArcFunction::from_real(net.graph, std::vector<double>{1, 0, 0, 0, 0}), "x"),
                  ValidationError);

  for (double lambda : {-1.0, 0.5, 7.0}) {
    std::vector<double> scaled{1, 2, 1, 2, 1};
    for (double& x : scaled) x *= lambda;
    const FlowValue s = flow_value(net, ArcFunction::from_real(net.graph, scaled), "x");
    CHECK(s.by_sum == doctest::Approx(3.0 * lambda));
    CHECK(s.by_inner_product == doctest::Approx(3.0 * lambda));
  }

  // every cut separating x from y carries the same flow
  for (const auto& ids : std::vector<std::vector<std::string>>{{"x"}, {"x", "v2"}, {"x", "v3"}, {"x", "v2", "v3"}})
    CHECK(cut_flow(net, eta, VertexSubset::of_ids(net.graph, ids)) == doctest::Approx(3.0));
}

TEST_CASE("property: random networks") {
  std::mt19937_64 rng(101);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const CapacityNetwork net = random::random_network(rng);
    const std::size_t n = net.graph.order();
    const std::size_t x = net.sources.members()[0];
    const std::size_t y = net.sinks.members()[0];

    // cut capacity by both routes on random separating sets
    std::bernoulli_distribution coin(0.5);
    std::vector<std::size_t> members{x};
    for (std::size_t v = 0; v < n; ++v)
      if (v != x && v != y && coin(rng)) members.push_back(v);
    const VertexSubset cut(net.graph, members);
    const CutCapacity c = cut_capacity(net, cut);
    CHECK(c.by_sum == doctest::Approx(cut_oracle(net, cut)));
    CHECK(std::abs(c.by_sum - c.by_quadratic_form) <= 1e-9 * std::max(1.0, c.by_sum));

    if (net.boundary().size() == n) continue;
    const ArcFunction eta = random_flow(rng, net);
    CHECK(is_flow(net, eta, 1e-9));
    if (!net.graph.in_arcs(x).empty()) continue;
    const FlowValue v = flow_value(net, eta, net.graph.vertex(x).id);
    const double scale = std::max(1.0, std::abs(v.by_sum));
    CHECK(std::abs(v.by_sum - v.by_inner_product) <= 1e-9 * scale);
    // net flow is the same across every separating cut
    CHECK(std::abs(cut_flow(net, eta, cut) - v.by_sum) <= 1e-9 * scale);
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("super terminals") {
  const WeightedDigraph g = testing::digraph({"s1", "s2", "m", "t1", "t2"},
                                             {{"s1", "m"}, {"s2", "m"}, {"m", "t1"}, {"m", "t2"}});
  const CapacityNetwork net = make_network(g, {1, 2, 2, 1}, {"s1", "s2"}, {"t1", "t2"});
  const CapacityNetwork single = add_super_terminals(net);
  CHECK(single.graph.order() == 7);
  CHECK(single.sources.ids(single.graph) == std::vector<std::string>{"x*"});
  CHECK(single.sinks.ids(single.graph) == std::vector<std::string>{"y*"});
  const auto x = VertexSubset::of_ids(single.graph, {"x*", "s1", "s2"});
  CHECK(cut_capacity(single, x).by_sum == 3.0);
  CHECK(flow_space(single).size() >= 1);
}
