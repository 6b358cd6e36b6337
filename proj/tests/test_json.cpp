#include <doctest.h>

#include "sgk/json_io.hpp"
#include "support.hpp"
#include "support_atomic.hpp"
#include "support_coloring.hpp"

using namespace sgk;
using namespace sgk::testing;
namespace sj = sgk::json;
using Json = nlohmann::json;

TEST_CASE("graph round trip") {
  Rng rng = rng_for(60);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = uniform(rng, 1, 8);
    Graph g = random_graph(rng, n, uniform(rng, 0, 3 * n));
    Json j = sj::to_json(g);
    CHECK(sj::graph_from_json(j) == g);
    CHECK(sj::graph_from_json(Json::parse(j.dump())) == g);
  }
  CHECK(sj::to_json(figure1())["vertices"] == Json::parse(R"(["l","r","t"])"));
}

TEST_CASE("malformed graphs") {
  CHECK_THROWS_AS(sj::graph_from_json(Json::parse(R"({"edges": []})")), Error);
  CHECK_THROWS_AS(sj::graph_from_json(Json::parse(R"({"vertices": [1], "edges": []})")), Error);
  try {
    sj::graph_from_json(Json::parse(R"({"vertices": ["v"], "edges": [{"id": "e", "src": "v", "dst": "w"}]})"));
    FAIL("expected InvalidGraph");
  } catch (const Error& e) {
    CHECK(e.kind() == "InvalidGraph");
    Json err = sj::to_json(e);
    CHECK(err["error"] == "InvalidGraph");
    CHECK(err["findings"][0]["clause"] == "dangling-endpoint");
  }
}

TEST_CASE("paths and phases") {
  Graph g = figure1();
  Path mu = sj::path_from_string(g, "f c b1");
  CHECK(sj::path_from_json(g, sj::to_json(g, mu)) == mu);
  CHECK(sj::to_json(g, mu)["base"] == "t");
  Path v = sj::path_from_string(g, "l");
  CHECK(v.is_vertex());
  CHECK(sj::path_from_json(g, sj::to_json(g, v)) == v);
  CHECK_THROWS_AS(sj::path_from_json(g, Json::parse(R"({"base": "l", "edges": ["a"]})")), Error);
  CHECK_THROWS_AS(sj::path_from_string(g, "a c"), Error);

  for (Phase p : {Phase{}, Phase::turn(3, 8), Phase::approx({0.6, 0.8})}) {
    CHECK(sj::phase_from_json(sj::to_json(p)).identical(p));
  }
  CHECK(sj::phase_from_json(Json::parse(R"({"num": 2, "den": 8})")).identical(Phase::turn(1, 4)));
  CHECK_THROWS_AS(sj::phase_from_json(Json::parse(R"({"re": 2, "im": 0})")), Error);
}

TEST_CASE("series round trip") {
  Rng rng = rng_for(61);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = uniform(rng, 1, 4);
    Graph g = random_graph(rng, n, uniform(rng, n, 3 * n));
    FormalElement a = random_poly(rng, g, 4, uniform(rng, 0, 6));
    CHECK(sj::formal_from_json(g, Json::parse(sj::to_json(g, a).dump())) == a);
  }
}

TEST_CASE("colouring round trip") {
  Rng rng = rng_for(62);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = uniform(rng, 1, 5);
    unsigned d = static_cast<unsigned>(uniform(rng, 1, 3));
    Graph g = random_regular(rng, n, d);
    Coloring c = random_strong_coloring(rng, g, d);
    CHECK(sj::coloring_from_json(g, Json::parse(sj::to_json(g, c).dump())) == c);
  }
  Graph f = figure1();
  CHECK_THROWS_AS(sj::coloring_from_json(f, Json::parse(R"({"d": 2, "color": {"zz": 1}})")), Error);
}

TEST_CASE("atomic presentations round trip") {
  Rng rng = rng_for(63);
  for (int trial = 0; trial < 100; ++trial) {
    auto spec = random_cycle_sink_graph(rng);
    CanonicalFamily f = random_canonical(rng, spec);
    ExplicitAtomic a = scramble(rng, materialize(f, kMaterializeDepth));
    Json j = sj::to_json(a.to_data());
    ExplicitAtomic b = ExplicitAtomic::from_data(sj::atomic_data_from_json(Json::parse(j.dump())));
    CHECK(sj::to_json(b.to_data()) == j);
    CHECK(are_unitarily_equivalent(a, b).equivalent);

    Json c = sj::to_json(f);
    CanonicalFamily g = sj::canonical_from_json(Json::parse(c.dump()));
    CHECK(sj::to_json(g) == c);
    CHECK(are_unitarily_equivalent(f, g).equivalent);
  }
}

TEST_CASE("atomic input dispatch") {
  Json explicit_j = Json::parse(R"({
    "graph": {"vertices": ["v"], "edges": [{"id": "a", "src": "v", "dst": "v"}]},
    "lambda": {"v": ["x"]},
    "pi": [{"edge": "a", "from": "x", "to": "x"}],
    "phase": [{"edge": "a", "from": "x", "angle": {"num": 1, "den": 3}}]})");
  AtomicInput in = sj::atomic_input_from_json(explicit_j);
  CHECK(std::holds_alternative<ExplicitAtomic>(in));
  Json canonical_j = Json::parse(R"({
    "graph": {"vertices": ["v"], "edges": [{"id": "a", "src": "v", "dst": "v"}]},
    "canonical": {"type": "cycle", "cycle": {"edges": ["a"]}, "phase": {"num": 1, "den": 3}}})");
  AtomicInput cn = sj::atomic_input_from_json(canonical_j);
  CHECK(std::holds_alternative<CanonicalFamily>(cn));
  CHECK(are_unitarily_equivalent(in, cn).equivalent);

  Json bad = canonical_j;
  bad["canonical"]["type"] = "spiral";
  CHECK_THROWS_AS(sj::atomic_input_from_json(bad), Error);
  bad = canonical_j;
  bad["canonical"] = Json::parse(R"({"type": "direct_sum", "summands": [{"multiplicity": 0,
      "family": {"type": "left_regular", "vertex": "v"}}]})");
  CHECK_THROWS_AS(sj::atomic_input_from_json(bad), Error);
}

TEST_CASE("report emitters") {
  CHECK(sj::to_json(Multiplicity{3, false}) == 3);
  CHECK(sj::to_json(Multiplicity::omega()) == "omega");
  ConditionMReport r;
  r.verdict = ConditionM::DominatesLebesgue;
  CHECK(sj::to_json(r)["verdict"] == "DominatesLebesgue");
  Error e("IoError", "cannot open x");
  CHECK(sj::to_json(e)["message"] == "cannot open x");
  CHECK(std::string(e.what()) == "IoError: cannot open x");
}
