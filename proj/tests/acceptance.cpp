#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "dirlap/cli.hpp"
#include "dirlap/exact.hpp"
#include "dirlap/flows.hpp"
#include "dirlap/numerics.hpp"
#include "dirlap/operators.hpp"
#include "dirlap/random_graphs.hpp"
#include "dirlap/structure.hpp"
#include "support.hpp"

using namespace dirlap;

namespace {

constexpr std::uint64_t kSeed = 20240611;

// Criteria the implementation cannot meet because the printed reference
// values are inconsistent with the operator they describe.
const std::set<std::string> kKnownUnattainable{"3c"};

struct Outcome {
  bool pass = false;
  std::string measured;
};

int failures_outside_known = 0;

void report(const std::string& id, const std::string& description, const std::function<Outcome()>& check) {
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  std::printf("%s %s %s (%s)\n", o.pass ? "PASS" : "FAIL", id.c_str(), description.c_str(), o.measured.c_str());
  if (!o.pass && !kKnownUnattainable.count(id)) ++failures_outside_known;
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::vector<Complex> reals(std::initializer_list<double> xs) {
  std::vector<Complex> out;
  for (double x : xs) out.emplace_back(x, 0.0);
  return out;
}

std::vector<Complex> nonzero(const std::vector<Complex>& ev, double tol) {
  std::vector<Complex> out;
  for (const auto& z : ev)
    if (std::abs(z) > tol) out.push_back(z);
  return out;
}

std::mt19937_64 stream(std::uint64_t index) { return std::mt19937_64(random::split_seed(kSeed, index)); }

}  // namespace

int main() {
  report("1", "G1 spectrum of L- within 1e-9 in under 50 ms", [] {
    const WeightedDigraph g = testing::load("g1.json");
    const auto start = std::chrono::steady_clock::now();
    const auto ev = eigenvalues(assemble(g, OperatorKind::L_out).entries);
    const double ms = elapsed_ms(start);
    const double dist = multiset_distance(ev, reals({0, 0, 2, 2, 2}));
    return Outcome{dist <= 1e-9 && ms < 50.0, "deviation " + fmt(dist) + ", " + fmt(ms) + " ms"};
  });

  report("2", "G2 spectrum of L- within 1e-9 and block union within 1e-8", [] {
    const WeightedDigraph g = testing::load("g2.json");
    const double s5 = std::sqrt(5.0), s3 = std::sqrt(3.0);
    std::vector<Complex> expected = reals({0, 0, 2, 3, (5 - s5) / 2, (5 + s5) / 2});
    expected.emplace_back(1.5, s3 / 2);
    expected.emplace_back(1.5, -s3 / 2);
    const auto ev = eigenvalues(assemble(g, OperatorKind::L_out).entries);
    const double dist = multiset_distance(ev, expected);
    const DecompositionReport d = spectrum_decomposition_check(g, Orientation::out);
    const double union_dist = multiset_distance(d.spectrum, d.block_union);
    return Outcome{dist <= 1e-9 && union_dist <= 1e-8 && d.blocks.size() == 3,
                   "deviation " + fmt(dist) + ", union " + fmt(union_dist) + ", blocks " +
                       std::to_string(d.blocks.size())};
  });

  const WeightedDigraph ef = testing::load("ef_l_d_est.json");
  const TheoremReport ef_t = verify_source_sink_theorem(ef);
  report("3a", "ef_l_d_est: mult0(L+) = 1 = #sources in both modes", [&] {
    const bool ok = ef_t.sources == 1 && ef_t.mult0_in_algebraic == 1 && ef_t.mult0_in_geometric == 1;
    return Outcome{ok, "sources " + std::to_string(ef_t.sources) + ", algebraic " +
                           std::to_string(ef_t.mult0_in_algebraic) + ", geometric " +
                           std::to_string(ef_t.mult0_in_geometric)};
  });
  report("3b", "ef_l_d_est: mult0(L-) = 3 = #sinks in both modes", [&] {
    const bool ok = ef_t.sinks == 3 && ef_t.mult0_out_algebraic == 3 && ef_t.mult0_out_geometric == 3;
    return Outcome{ok, "sinks " + std::to_string(ef_t.sinks) + ", algebraic " +
                           std::to_string(ef_t.mult0_out_algebraic) + ", geometric " +
                           std::to_string(ef_t.mult0_out_geometric)};
  });
  report("3c", "ef_l_d_est: nonzero L+ eigenvalues match the printed {-1, 0.38, 0.38, 1, 2.62, 2.62} within 5e-3", [&] {
    const auto ev = eigenvalues(assemble(ef, OperatorKind::L_in).entries);
    const auto got = nonzero(ev, 1e-8);
    const auto printed = reals({-1, 0.38, 0.38, 1, 2.62, 2.62});
    const double dist = multiset_distance(got, printed);
    std::ostringstream s;
    s << "max deviation " << fmt(dist) << ", computed nonzero {";
    for (std::size_t i = 0; i < got.size(); ++i) s << (i ? ", " : "") << fmt(got[i].real());
    s << "}";
    return Outcome{dist <= 5e-3, s.str()};
  });

  report("4", "1000 random digraphs: #sources = mult0(L+), #sinks = mult0(L-), both modes, under 60 s", [] {
    const auto start = std::chrono::steady_clock::now();
    int failures = 0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
      auto rng = stream(i);
      const TheoremReport t = verify_source_sink_theorem(random::random_digraph(rng));
      if (!t.agree) ++failures;
    }
    const double s = elapsed_ms(start) / 1000.0;
    return Outcome{failures == 0 && s < 60.0, std::to_string(failures) + " failures, " + fmt(s) + " s"};
  });

  report("5", "500 random DAGs: spectra are the degree multisets within 1e-9 and exactly", [] {
    int failures = 0;
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 500; ++i) {
      auto rng = stream(10000 + i);
      const WeightedDigraph g = random::random_dag(rng);
      for (Orientation o : {Orientation::in, Orientation::out}) {
        const auto ev = eigenvalues(assemble(g, o == Orientation::in ? OperatorKind::L_in : OperatorKind::L_out).entries);
        std::vector<Complex> degrees;
        std::vector<exact::Rational> exact_degrees;
        for (std::size_t v = 0; v < g.order(); ++v) {
          double deg = 0.0;
          for (const Arc& a : g.arcs()) deg += ((o == Orientation::in ? a.head : a.tail) == v) ? a.weight : 0.0;
          degrees.emplace_back(deg, 0.0);
          exact_degrees.push_back(exact::to_rational(deg));
        }
        const double dist = multiset_distance(ev, degrees);
        worst = std::max(worst, dist);
        bool integral = true;
        for (const auto& z : ev)
          integral = integral && std::abs(z.real() - std::round(z.real())) <= 1e-9 && z.real() > -1e-9 &&
                     std::abs(z.imag()) <= 1e-9;
        const auto q = exact::laplacian(g, o);
        const bool exact_ok = exact::characteristic_polynomial(q) == exact::polynomial_from_roots(exact_degrees);
        if (!(dist <= 1e-9 && integral && exact_ok)) ++failures;
      }
    }
    return Outcome{failures == 0, std::to_string(failures) + " failures, worst deviation " + fmt(worst)};
  });

  report("6", "flow fixture: ker d0* of dimension 3, cut 9, value 3, feasible", [] {
    const CapacityNetwork net = parse_network(testing::read_file(testing::fixture_path("flow_network.json")));
    const auto basis = flow_space(net);
    std::vector<std::vector<double>> computed;
    for (const auto& b : basis) computed.push_back(b.real_values());
    const auto printed = orthonormalize({{0, 1, 1, 1, 0}, {1, 0, 0, 1, 0}, {0, 1, 0, 0, 1}});
    const double dist = subspace_distance(computed, printed);
    const CutCapacity c = cut_capacity(net, VertexSubset::of_ids(net.graph, {"x", "v2", "v3"}));
    const ArcFunction eta = ArcFunction::from_real(net.graph, std::vector<double>{1, 2, 1, 2, 1});
    const FlowValue v = flow_value(net, eta, "x");
    const bool ok = basis.size() == 3 && dist <= 1e-10 && std::abs(c.by_sum - 9) <= 1e-10 &&
                    std::abs(c.by_quadratic_form - 9) <= 1e-10 && std::abs(v.by_sum - 3) <= 1e-10 &&
                    std::abs(v.by_inner_product - 3) <= 1e-10 && is_feasible(net, eta);
    return Outcome{ok, "dimension " + std::to_string(basis.size()) + ", distance " + fmt(dist) + ", cut " +
                           fmt(c.by_sum) + "/" + fmt(c.by_quadratic_form) + ", value " + fmt(v.by_sum) + "/" +
                           fmt(v.by_inner_product)};
  });

  report("7", "200 random digraphs: circulations orthogonal to gradients, adjointness of (d, d*) and (d0, d0*)", [] {
    double worst_orth = 0.0, worst_adj = 0.0;
    for (std::uint64_t i = 0; i < 200; ++i) {
      auto rng = stream(20000 + i);
      const WeightedDigraph g = random::random_digraph(rng);
      const auto circ = circulation_space(g);
      for (int k = 0; k < 50; ++k) {
        const VertexFunction phi(g, testing::random_complex(rng, g.order()));
        const ArcFunction dphi = evaluate_first_order(g, FirstOrder::d, phi);
        for (const auto& eta : circ) {
          const double scale = norm(g, eta) * norm(g, dphi);
          if (scale > 0) worst_orth = std::max(worst_orth, std::abs(inner(g, eta, dphi)) / scale);
        }
      }
      const VertexFunction phi(g, testing::random_complex(rng, g.order()));
      const ArcFunction eta(g, testing::random_complex(rng, g.size()));
      const ArcFunction dphi = evaluate_first_order(g, FirstOrder::d, phi);
      const VertexFunction deta = adjoint_first_order(g, FirstOrder::d, eta);
      const double s1 = std::max({1e-300, norm(g, dphi) * norm(g, eta), norm(g, phi) * norm(g, deta)});
      worst_adj = std::max(worst_adj, std::abs(inner(g, dphi, eta) - inner(g, phi, deta)) / s1);

      std::bernoulli_distribution coin(0.3);
      std::vector<std::size_t> w;
      for (std::size_t v = 0; v < g.order(); ++v)
        if (coin(rng)) w.push_back(v);
      const VertexSubset ws(g, w);
      const InteriorFunction psi = interior_function(g, ws, testing::random_complex(rng, g.order() - ws.size()));
      const ArcFunction d0psi = dirichlet_gradient(g, ws, psi);
      const InteriorFunction d0eta = dirichlet_divergence(g, ws, eta);
      const double s2 = std::max({1e-300, norm(g, d0psi) * norm(g, eta),
                                  std::sqrt(inner(g, psi, psi).real() * inner(g, d0eta, d0eta).real())});
      worst_adj = std::max(worst_adj, std::abs(inner(g, d0psi, eta) - inner(g, psi, d0eta)) / s2);
    }
    return Outcome{worst_orth <= 1e-10 && worst_adj <= 1e-10,
                   "worst orthogonality " + fmt(worst_orth) + ", worst adjointness " + fmt(worst_adj)};
  });

  report("8", "200 random digraphs: compressions to sources and sinks equal induced Laplacians exactly", [] {
    int mismatches = 0, blocks = 0;
    for (std::uint64_t i = 0; i < 200; ++i) {
      auto rng = stream(30000 + i);
      const WeightedDigraph g = random::random_digraph(rng);
      const StructureReport r = classify(g);
      for (Orientation o : {Orientation::in, Orientation::out}) {
        const OperatorKind kind = o == Orientation::in ? OperatorKind::L_in : OperatorKind::L_out;
        const OperatorMatrix lap = assemble(g, kind);
        for (std::size_t comp : o == Orientation::in ? r.sources() : r.sinks()) {
          const VertexSubset s(g, r.condensation.components[comp]);
          ++blocks;
          if (!(compress(lap, s).entries == assemble(induced_subdigraph(g, s), kind).entries)) ++mismatches;
        }
      }
    }
    return Outcome{mismatches == 0, std::to_string(mismatches) + " mismatches in " + std::to_string(blocks) + " blocks"};
  });

  report("9", "w_digrph: mult0(L-) = 2 = #sinks while the printed entries are flagged", [] {
    const WeightedDigraph g = testing::load("w_digrph.json");
    const TheoremReport t = verify_source_sink_theorem(g);
    std::ostringstream out, err;
    const int code = cli::run({"verify", "matrices", testing::fixture_path("discrepancies/w_digrph_printed.json")}, out, err);
    const auto j = nlohmann::json::parse(out.str());
    const std::size_t flagged = j["payload"]["differences"].size();
    const bool ok = t.sinks == 2 && t.mult0_out_algebraic == 2 && t.mult0_out_geometric == 2 && code == cli::kExitMismatch &&
                    flagged > 0;
    return Outcome{ok, "sinks " + std::to_string(t.sinks) + ", mult0 " + std::to_string(t.mult0_out_algebraic) + "/" +
                           std::to_string(t.mult0_out_geometric) + ", flagged entries " + std::to_string(flagged) +
                           ", exit " + std::to_string(code)};
  });

  return failures_outside_known == 0 ? 0 : 1;
}
