#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "dirlap/cli.hpp"
#include "support.hpp"

using json = nlohmann::json;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = dirlap::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string fx(const std::string& name) { return testing::fixture_path(name); }

}  // namespace

TEST_CASE("spectrum report") {
  const Result r = run({"spectrum", "--operator", "L-", fx("g1.json")});
  REQUIRE(r.code == 0);
  const json j = r.report();
  CHECK(j["command"] == "spectrum");
  CHECK(j["input_digest"].get<std::string>().size() == 16);
  CHECK(j["payload"]["zero_multiplicity_algebraic"] == 2);
  CHECK(j["payload"]["zero_multiplicity_geometric"] == 2);
  CHECK(j["payload"]["eigenvalues"].size() == 5);
  CHECK(j["payload"]["basis"] == json({"v1", "v2", "v3", "v4", "v5"}));
}

TEST_CASE("output is deterministic") {
  for (const std::vector<std::string>& args : std::vector<std::vector<std::string>>{
           {"spectrum", "--operator", "L+", fx("g2.json")},
           {"structure", fx("chains.json")},
           {"verify", "theorem", fx("ef_l_d_est.json")},
           {"--seed", "5", "verify", "--random", "50"},
           {"flows", "--network", fx("flow_network.json")}}) {
    const Result a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("exit codes") {
  CHECK(run({"spectrum", "--operator", "L-", fx("does_not_exist.json")}).code == 2);
  CHECK(run({"spectrum", "--operator", "Q", fx("g1.json")}).code == 2);
  CHECK(run({"spectrum", "--operator", "B", fx("g1.json")}).code == 2);
  CHECK(run({"--tol", "-1", "spectrum", "--operator", "L", fx("g1.json")}).code == 2);
  CHECK(run({"--format", "csv", "structure", fx("g1.json")}).code == 2);
  CHECK(run({"cut", "--members", "v2", "--network", fx("flow_network.json")}).code == 2);
  CHECK(run({"verify", "matrices", fx("discrepancies/w_digrph_printed.json")}).code == 4);
  CHECK(run({"verify", "matrices", fx("discrepancies/ef_l_d_est_printed_spectrum.json")}).code == 4);
  CHECK(run({"verify", "matrices", fx("sss_iii.json")}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("every fixture verifies") {
  for (const char* name : {"g1.json", "g2.json", "ef_l_d_est.json", "w_digrph.json", "sss_iii.json", "chains.json",
                           "counter_1s1f.json", "path5.json", "cycle5.json", "single_vertex.json"}) {
    CAPTURE(name);
    CHECK(run({"verify", "theorem", fx(name)}).code == 0);
    CHECK(run({"verify", "decomposition", fx(name)}).code == 0);
  }
  for (const char* name : {"g1.json", "g2.json", "ef_l_d_est.json", "w_digrph.json"})
    CHECK(run({"verify", "matrices", fx(name)}).code == 0);
  const Result cyclic = run({"verify", "acyclic", fx("cycle5.json")});
  CHECK(cyclic.code == 0);
  CHECK(cyclic.report()["payload"]["acyclic"] == false);
  CHECK(cyclic.report()["payload"]["cycle"].size() == 6);
  CHECK(run({"--exact", "verify", "acyclic", fx("path5.json")}).code == 0);
  CHECK(run({"verify", "acyclic", fx("counter_1s1f.json")}).code == 0);
}

TEST_CASE("theorem payload of the estimation example") {
  const json p = run({"--exact", "verify", "theorem", fx("ef_l_d_est.json")}).report()["payload"];
  CHECK(p["sources"] == 1);
  CHECK(p["sinks"] == 3);
  CHECK(p["mult0_Lplus"] == 1);
  CHECK(p["mult0_Lminus"] == 3);
  CHECK(p["agree"] == true);
  CHECK(p["exact"]["mult0_Lminus_algebraic"] == 3);
}

TEST_CASE("structure payload") {
  const json c5 = run({"structure", fx("cycle5.json")}).report()["payload"];
  CHECK(c5["scc_count"] == 1);
  CHECK(c5["strongly_connected"] == true);
  CHECK(c5["stream"].empty());
  const json ch = run({"structure", fx("chains.json")}).report()["payload"];
  CHECK(ch["chains"]["count"] == 4);
}

TEST_CASE("acyclic exact eigenvalues are integers") {
  const json p = run({"--exact", "verify", "acyclic", fx("path5.json")}).report()["payload"];
  CHECK(p["ok"] == true);
  CHECK(p["L-"]["exact"]["characteristic_polynomial_matches"] == true);
}

TEST_CASE("flow commands") {
  const json f = run({"flows", "--network", fx("flow_network.json")}).report()["payload"];
  CHECK(f["dimension"] == 3);
  const json c = run({"cut", "--members", "x,v2,v3", "--network", fx("flow_network.json")}).report()["payload"];
  CHECK(c["by_sum"] == 9.0);
  CHECK(c["agree"] == true);
  const Result v = run({"value", "--flow", fx("flow_eta.json"), "--at", "x", "--network", fx("flow_network.json")});
  REQUIRE(v.code == 0);
  CHECK(v.report()["payload"]["by_sum"] == 3.0);
  CHECK(v.report()["payload"]["feasible"] == true);
}

TEST_CASE("csv output") {
  const Result m = run({"--format", "csv", "matrices", "--operator", "L-", fx("g1.json")});
  REQUIRE(m.code == 0);
  CHECK(m.out.rfind("row,col,re,im", 0) == 0);
  const Result s = run({"--format", "csv", "spectrum", "--operator", "L-", fx("g1.json")});
  CHECK(s.code == 0);
}
