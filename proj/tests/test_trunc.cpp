#include <doctest.h>

#include <cmath>

#include "sgk/trunc.hpp"
#include "support.hpp"
#include "support_atomic.hpp"
#include "support_coloring.hpp"

using namespace sgk;
using namespace sgk::testing;

namespace {

Path P(const Graph& g, std::initializer_list<const char*> written) {
  std::vector<EdgeIndex> e;
  for (const char* id : written) e.push_back(g.edge_index(id));
  return Path::from_edges(g, e);
}

VertexSet all_vertices(const Graph& g) {
  VertexSet s;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) s.insert(v);
  return s;
}

Coloring fig1_coloring(const Graph& f) {
  Coloring c{2, std::vector<unsigned>(f.edge_count(), 1)};
  for (auto [id, k] : {std::pair{"b2", 2u}, {"c", 2u}, {"f", 2u}}) c.color[f.edge_index(id)] = k;
  return c;
}

// Phases with rational angles are rounded in doubles, so atomic families
// with phases only satisfy the identities to rounding.
void check_axioms_close(const std::vector<RelationReport>& reports) {
  for (const char* id : {"P", "IS", "TCK", "ND"}) {
    CHECK_MESSAGE(find_report(reports, id).residual <= 1e-12, id);
  }
}

void check_axioms_exact(const std::vector<RelationReport>& reports) {
  for (const char* id : {"P", "IS", "TCK", "ND"}) {
    const auto& r = find_report(reports, id);
    CHECK_MESSAGE(r.exact_zero, id);
    CHECK(r.residual == 0.0);
    CHECK(r.axiom);
  }
}

// Largest entry of (A - B) restricted to the given columns.
double column_defect(const SparseMatrix& a, const SparseMatrix& b,
                     const std::vector<std::size_t>& cols) {
  return (a - b).max_abs(cols);
}

}  // namespace

TEST_CASE("truncation sizes and levels") {
  Graph c3 = cycle_graph(3);
  TruncatedRep r = build_left_regular_trunc(c3, {c3.vertex("v1")}, 3);
  CHECK(r.dim() == 4);
  CHECK(r.kind == TruncKind::LeftRegular);
  CHECK_FALSE(r.exact);
  CHECK(r.interior(1).size() == 3);
  CHECK(r.interior(0).size() == 4);
  CHECK(r.interior(5).empty());
  CHECK(build_left_regular_trunc(two_loops(), {0}, 2).dim() == 7);
  CHECK(std::string(to_string(TruncKind::Colored)) == "colored");
}

TEST_CASE("left-regular truncations satisfy the axioms on interior columns") {
  Rng rng = rng_for(50);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = uniform(rng, 1, 5);
    Graph g = random_graph(rng, n, uniform(rng, 0, 2 * n));
    VertexSet src;
    for (VertexIndex v = 0; v < n; ++v) {
      if (uniform(rng, 0, 1)) src.insert(v);
    }
    if (src.empty()) src.insert(0);
    TruncatedRep r = build_left_regular_trunc(g, src, uniform(rng, 1, 4));
    auto reports = verify_tck(r);
    REQUIRE(reports.size() == 6);
    CHECK(reports[0].id == "P");
    CHECK(reports[5].id == "ND");
    check_axioms_exact(reports);
    // The vertex paths are wandering, so F fails by exactly one.
    const auto& f = find_report(reports, "F");
    CHECK_FALSE(f.axiom);
    CHECK(f.residual == 1.0);
    bool fed_source = false;
    for (VertexIndex v : src) fed_source = fed_source || !g.in_edges(v).empty();
    CHECK(find_report(reports, "CK").residual == (fed_source ? 1.0 : 0.0));
    for (std::size_t col = 0; col < r.dim(); ++col) {
      if (r.level[col] == 0) CHECK(wandering_certificate(r, col, r.depth));
    }
  }
}

TEST_CASE("a damaged edge operator is caught by the isometry check") {
  Graph c3 = cycle_graph(3);
  TruncatedRep r = build_left_regular_trunc(c3, {0}, 3);
  EdgeIndex e = c3.edge_index("e1");
  std::size_t col = r.edge_ops[e].column(0).empty() ? 1 : 0;
  REQUIRE_FALSE(r.edge_ops[e].column(col).empty());
  std::size_t row = r.edge_ops[e].column(col).begin()->first;
  r.edge_ops[e].set(row, col, -1.0);
  CHECK(find_report(verify_tck(r), "IS").exact_zero);
  r.edge_ops[e].set(row, col, 2.0);
  auto is = find_report(verify_tck(r), "IS");
  CHECK_FALSE(is.exact_zero);
  CHECK(is.residual == 3.0);
  CHECK(is.worst_column == col);
  CHECK_THROWS_AS(find_report(verify_tck(r), "XX"), Error);
}

TEST_CASE("cycle lemma") {
  CycleLemmaReport r = cycle_lemma_check(3, 9);
  CHECK(r.ok);
  CHECK(r.residual == 0.0);
  CHECK(r.block_sizes == std::vector<std::size_t>{3, 3, 3});
  CHECK(cycle_lemma_check(2, 5).block_sizes == std::vector<std::size_t>{3, 2});
  for (std::size_t n = 1; n <= 5; ++n) {
    for (std::size_t N = n; N <= 12; ++N) {
      CycleLemmaReport c = cycle_lemma_check(n, N);
      CHECK(c.ok);
      std::size_t total = 0;
      for (std::size_t b : c.block_sizes) total += b;
      CHECK(total == N);
    }
  }
  CHECK_THROWS_AS(cycle_lemma_check(0, 3), Error);
}

TEST_CASE("coloured truncation of the three-vertex example") {
  Graph f = figure1();
  for (std::size_t N : {3u, 4u}) {
    TruncatedRep r = build_colored_trunc(f, fig1_coloring(f), N);
    CHECK(r.kind == TruncKind::Colored);
    auto reports = verify_tck(r);
    check_axioms_exact(reports);
    CHECK(find_report(reports, "CK").exact_zero);
    CHECK(find_report(reports, "F").exact_zero);
    CHECK(find_report(reports, "CK").depth == N - 1);
    for (std::size_t k = 1; k + 1 <= N; ++k) {
      SparseMatrix id = SparseMatrix::identity(r.dim());
      CHECK(column_defect(range_sum(r, k), id, r.interior(k)) == 0.0);
    }
  }
  Coloring bad = fig1_coloring(f);
  bad.color[f.edge_index("b2")] = 1;
  CHECK_THROWS_AS(build_colored_trunc(f, bad, 3), Error);
  CHECK_THROWS_AS(build_colored_trunc(chain3(), Coloring{1, {1, 1}}, 3), Error);
}

TEST_CASE("coloured truncations are Cuntz-Krieger families on interior columns") {
  Rng rng = rng_for(51);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = uniform(rng, 1, 4);
    unsigned d = static_cast<unsigned>(uniform(rng, 1, 3));
    Graph g = random_regular(rng, n, d);
    std::size_t N = uniform(rng, 1, 3);
    TruncatedRep r = build_colored_trunc(g, random_strong_coloring(rng, g, d), N);
    auto reports = verify_tck(r);
    check_axioms_exact(reports);
    CHECK(find_report(reports, "CK").exact_zero);
    CHECK(find_report(reports, "F").exact_zero);
    for (std::size_t k = 1; k <= N; ++k) {
      CHECK(column_defect(range_sum(r, k), SparseMatrix::identity(r.dim()), r.interior(k)) == 0.0);
    }
  }
}

TEST_CASE("exact atomic representations") {
  Graph c2 = cycle_graph(2);
  AtomicData d;
  d.graph = c2.to_data();
  d.lambda = {{"v1", {"x"}}, {"v2", {"y"}}};
  d.pi = {{"e1", "x", "y"}, {"e2", "y", "x"}};
  d.phase = {{"e2", "y", Phase::turn(1, 4)}};
  TruncatedRep r = build_atomic_rep(ExplicitAtomic::from_data(d));
  CHECK(r.exact);
  CHECK(r.dim() == 2);
  CHECK(r.interior(7).size() == 2);
  auto reports = verify_tck(r);
  check_axioms_exact(reports);
  CHECK(find_report(reports, "F").exact_zero);
  SparseMatrix loop = path_operator(r, P(c2, {"e2", "e1"}));
  CHECK(std::abs(loop.at(0, 0) - std::complex<double>(0.0, 1.0)) < 1e-15);

  CHECK_THROWS_AS(build_atomic_rep(materialize({two_loops(), {LeftRegular{0}}}, 2)), Error);
}

TEST_CASE("the F identity holds exactly when there is no wandering vector") {
  Rng rng = rng_for(52);
  for (int trial = 0; trial < 200; ++trial) {
    auto spec = random_cycle_sink_graph(rng);
    ExplicitAtomic a = scramble(rng, materialize(random_canonical(rng, spec), kMaterializeDepth));
    TruncatedRep r = build_atomic_rep(a);
    auto reports = verify_tck(r);
    check_axioms_close(reports);
    WoldReport w = wold_atomic(a);
    bool wandering = false;
    for (const auto& m : w.alpha) wandering = wandering || !m.is_zero();
    double f = find_report(reports, "F").residual;
    CHECK((wandering ? f >= 1.0 - 1e-12 : f <= 1e-12));
  }
}

TEST_CASE("apply_formal is multiplicative on interior columns") {
  Rng rng = rng_for(53);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = uniform(rng, 1, 4);
    Graph g = random_graph(rng, n, uniform(rng, n, 3 * n));
    FormalElement a = random_poly(rng, g, 2, uniform(rng, 1, 4));
    FormalElement b = random_poly(rng, g, 2, uniform(rng, 1, 4));
    std::size_t deg = a.degree() + b.degree();
    TruncatedRep r = build_left_regular_trunc(g, all_vertices(g), deg + 2);
    SparseMatrix lhs = apply_formal(r, formal_mul(a, b));
    SparseMatrix rhs = apply_formal(r, a) * apply_formal(r, b);
    CHECK(column_defect(lhs, rhs, r.interior(deg)) == 0.0);
  }
}

TEST_CASE("row norms are column norms of the graded part") {
  Rng rng = rng_for(54);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = uniform(rng, 1, 4);
    Graph g = random_graph(rng, n, uniform(rng, n, 3 * n));
    FormalElement a = random_poly(rng, g, 3, uniform(rng, 1, 6));
    std::size_t m = uniform(rng, 0, 3);
    VertexIndex v = uniform(rng, 0, n - 1);
    TruncatedRep r = build_left_regular_trunc(g, all_vertices(g), m + 2);
    FormalElement graded = formal_mul(fourier_coeff(a, static_cast<long long>(m)),
                                      FormalElement::monomial(Path(v)));
    SparseMatrix op = apply_formal(r, graded);
    double expect = l2_row_norm(a, m, v);
    for (std::size_t col : r.interior(m)) {
      double got = op.column_norm(col);
      if (r.vertex_of[col] == v) {
        CHECK(std::abs(got - expect) <= 1e-12 * std::max(1.0, expect));
      } else {
        CHECK(got == 0.0);
      }
    }
  }
}

TEST_CASE("restricting levels matches a shallower truncation") {
  Rng rng = rng_for(55);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = uniform(rng, 1, 4);
    Graph g = random_graph(rng, n, uniform(rng, 0, 2 * n));
    std::size_t N = uniform(rng, 1, 4);
    std::size_t M = uniform(rng, 0, N);
    TruncatedRep big = build_left_regular_trunc(g, all_vertices(g), N);
    TruncatedRep small = build_left_regular_trunc(g, all_vertices(g), M);
    TruncatedRep cut = restrict_levels(big, M);
    CHECK(cut.depth == M);
    CHECK(cut.labels == small.labels);
    CHECK(cut.level == small.level);
    CHECK(cut.vertex_ops == small.vertex_ops);
    CHECK(cut.edge_ops == small.edge_ops);
  }
}

TEST_CASE("cycle vectors are not wandering") {
  Graph c2 = cycle_graph(2);
  ExplicitAtomic a = materialize({c2, {CycleType{P(c2, {"e2", "e1"}), Phase::turn(1, 3)}}}, 3);
  TruncatedRep r = build_atomic_rep(a);
  CHECK(wandering_certificate(r, 0, 1));
  CHECK_FALSE(wandering_certificate(r, 0, 2));
}
