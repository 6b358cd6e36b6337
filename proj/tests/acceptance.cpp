// Acceptance run: one PASS/FAIL line per criterion, each with its runtime
// limit. Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numeric>
#include <queue>
#include <sstream>

#include "sgk/atomic.hpp"
#include "sgk/coloring.hpp"
#include "sgk/series.hpp"
#include "sgk/trunc.hpp"
#include "support.hpp"
#include "support_atomic.hpp"
#include "support_coloring.hpp"

using namespace sgk;
using namespace sgk::testing;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
  void require(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
};

Path path_of(const Graph& g, std::initializer_list<const char*> written) {
  std::vector<EdgeIndex> e;
  for (const char* id : written) e.push_back(g.edge_index(id));
  return Path::from_edges(g, e);
}

// 1. Block identification of the truncated cycle algebra.
Verdict cycle_lemma() {
  Verdict v;
  for (std::size_t n = 1; n <= 5; ++n) {
    for (std::size_t N = n; N <= 12; ++N) {
      CycleLemmaReport r = cycle_lemma_check(n, N);
      v.require(r.ok && r.residual == 0.0,
                "n=" + std::to_string(n) + " N=" + std::to_string(N) + ": " + r.detail);
    }
  }
  return v;
}

// 2. On acyclic graphs, equivalence is decided by the wandering multiplicities.
Verdict wold_ses() {
  Verdict v;
  Rng rng = rng_for(1002);
  auto family = [&](const Graph& g, const std::vector<std::uint64_t>& mult) {
    DirectSum s;
    std::vector<VertexIndex> order(g.vertex_count());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (VertexIndex x : order) {
      if (mult[x]) s.summands.push_back({{mult[x], false}, {LeftRegular{x}}});
    }
    return scramble(rng, materialize({g, {s}}, g.vertex_count()));
  };
  std::size_t agree = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = uniform(rng, 1, 10);
    Graph g = random_dag(rng, n, uniform(rng, 0, n + n / 2));
    v.require(source_elimination(g).has_ses, "acyclic graph without SES");
    std::vector<std::uint64_t> ma(n), mb(n);
    for (auto& m : ma) m = uniform(rng, 0, 2) == 0 ? uniform(rng, 1, 2) : 0;
    mb = ma;
    if (uniform(rng, 0, 1)) {
      std::size_t x = uniform(rng, 0, n - 1);
      mb[x] = (mb[x] + uniform(rng, 1, 2)) % 3;
    }
    ExplicitAtomic a = family(g, ma), b = family(g, mb);
    v.require(a.total() && b.total(), "materialized family is not total");
    auto wa = wold_atomic(a).alpha, wb = wold_atomic(b).alpha;
    bool same = wa == wb;
    agree += same;
    v.require(are_unitarily_equivalent(a, b).equivalent == same,
              "equivalence disagrees with alpha vectors at trial " + std::to_string(trial));
    for (VertexIndex x = 0; x < n; ++x) {
      v.require(wa[x] == Multiplicity{ma[x], false}, "alpha differs from the construction");
    }
  }
  v.require(agree > 20 && agree < 180, "corpus is unbalanced");
  return v;
}

// 3. CycleType(a^p, lambda) splits into the p-th roots of lambda.
Verdict root_splitting() {
  Verdict v;
  Graph loop = cycle_graph(1);
  Path a = Path::single(loop, 0);
  for (std::int64_t p = 1; p <= 6; ++p) {
    for (std::int64_t den = 1; den <= 12; ++den) {
      for (std::int64_t num = 0; num < den; ++num) {
        Phase lambda = Phase::turn(num, den);
        AtomDecomposition d = classify(CanonicalFamily{loop, {CycleType{power(a, p), lambda}}});
        v.require(d.atoms.size() == static_cast<std::size_t>(p), "wrong number of atoms");
        for (std::size_t j = 0; j < d.atoms.size(); ++j) {
          const auto* c = std::get_if<CycleAtom>(&d.atoms[j].atom);
          if (!c) {
            v.fail("non-cycle atom");
            continue;
          }
          v.require(d.atoms[j].multiplicity == Multiplicity{1, false}, "multiplicity != 1");
          v.require(c->cycle == a, "atom cycle is not the primitive root");
          v.require(c->phase.is_exact() && c->phase.pow(p).identical(lambda),
                    "theta^p != lambda for p=" + std::to_string(p));
          if (j > 0) {
            v.require(!std::get<CycleAtom>(d.atoms[j - 1].atom).phase.equals(c->phase),
                      "repeated root");
          }
        }
      }
    }
  }
  return v;
}

// 4. Gauge and relabeling never change the decision; injected atoms always do.
Verdict equivalence_soundness() {
  Verdict v;
  Rng rng = rng_for(1004);
  int made = 0;
  while (made < 500) {
    auto spec = random_cycle_sink_graph(rng);
    CanonicalFamily f = random_canonical(rng, spec);
    ExplicitAtomic a = materialize(f, kMaterializeDepth);
    if (a.node_count() > 8 || !a.total()) continue;
    ++made;
    ExplicitAtomic t = scramble(rng, a);
    v.require(are_unitarily_equivalent(a, t).equivalent, "transformed family not equivalent");

    // Inject: one extra atom, or one summand with a different phase.
    ExplicitAtomic extra = materialize({spec.graph, random_summand(rng, spec)}, kMaterializeDepth);
    v.require(!are_unitarily_equivalent(a, scramble(rng, direct_sum(t, extra))).equivalent,
              "extra summand went unnoticed");
    auto& summands = std::get<DirectSum>(f.family.kind).summands;
    for (auto& s : summands) {
      if (auto* ct = std::get_if<CycleType>(&s.family.kind)) {
        ct->phase = ct->phase * Phase::turn(static_cast<std::int64_t>(uniform(rng, 1, 6)), 7);
        ExplicitAtomic changed = scramble(rng, materialize(f, kMaterializeDepth));
        v.require(!are_unitarily_equivalent(a, changed).equivalent, "phase change went unnoticed");
        break;
      }
    }
  }
  return v;
}

// 5. Multiplicities from projection ranks agree with the cycle structure.
Verdict multiplicity_formula() {
  Verdict v;
  Rng rng = rng_for(1005);
  int done = 0;
  while (done < 100) {
    std::size_t n = uniform(rng, 1, 6);
    Graph g = random_graph(rng, n, uniform(rng, n, 3 * n));
    VertexIndex x = uniform(rng, 0, n - 1);
    auto cycles = irreducible_cycles_at(g, x, 6);
    if (cycles.empty()) continue;
    ++done;
    Path w = cycles[uniform(rng, 0, cycles.size() - 1)];
    for (std::size_t k = uniform(rng, 0, 2); k > 0; --k) {
      w = *compose(cycles[uniform(rng, 0, cycles.size() - 1)], w);
    }
    std::vector<long long> rank(n, 0);
    for (EdgeIndex e : w.traversal()) ++rank[g.src(e)];
    auto csm = cycle_structure_multiplicities(g, w);
    auto fc = finitely_correlated_multiplicities(g, rank);
    for (VertexIndex y = 0; y < n; ++y) {
      v.require(static_cast<long long>(csm[y]) == fc[y], "formulas disagree");
    }
  }
  return v;
}

// 6. Synchronizing colourings exist exactly for aperiodic graphs.
Verdict road_coloring() {
  Verdict v;
  auto succeeds = [&](const Graph& g, const std::string& name) {
    auto c = search_synchronizing_coloring(g);
    if (!c) {
      v.fail(name + ": no colouring found");
      return;
    }
    v.require(validate_strong(g, *c).report.valid(), name + ": colouring not strong");
    v.require(has_synchronizing_word(BackwardAutomaton(g, *c)), name + ": not synchronizing");
  };
  succeeds(figure1(), "figure 1");
  Rng rng(20240606);  // fixed corpus, independent of the seed override
  int corpus = 0;
  while (corpus < 20) {
    std::size_t d = uniform(rng, 1, 3);
    std::size_t n = d == 1 ? 1 : uniform(rng, 2, 5);
    Graph g = random_transitive_regular(rng, n, d, false);
    if (!is_aperiodic(g)) continue;
    ++corpus;
    succeeds(g, "corpus graph " + std::to_string(corpus));
  }
  v.require(!search_synchronizing_coloring(cycle_graph(2)), "C2 synchronized");
  v.require(!search_synchronizing_coloring(cycle_graph(3)), "C3 synchronized");
  v.require(!search_synchronizing_coloring(doubled_c2()), "doubled C2 synchronized");
  return v;
}

// 7. O'Brien colouring and the cycles it produces.
Verdict obrien() {
  Verdict v;
  Graph f = figure1();
  VertexIndex t = f.vertex("t");
  OBrienResult r = obrien_coloring(f, f.edge_index("a"));
  // Depth of the breadth-first tree of forward paths from the loop vertex.
  std::vector<std::size_t> dist(f.vertex_count(), SIZE_MAX);
  std::queue<VertexIndex> q;
  dist[t] = 0;
  q.push(t);
  while (!q.empty()) {
    VertexIndex x = q.front();
    q.pop();
    for (EdgeIndex e : f.out_edges(x)) {
      if (dist[f.dst(e)] == SIZE_MAX) {
        dist[f.dst(e)] = dist[x] + 1;
        q.push(f.dst(e));
      }
    }
  }
  std::size_t depth = *std::max_element(dist.begin(), dist.end());
  v.require(r.depth == depth, "depth differs from the tree depth");
  v.require(r.word == ColorWord(depth, 1), "word is not 1^k");
  v.require(r.vertex == t, "wrong synchronizing vertex");
  BackwardAutomaton a(f, r.coloring);
  v.require(is_synchronizing_word(a, r.word) == t, "word does not synchronize");
  Rng rng = rng_for(1007);
  for (int trial = 0; trial < 100; ++trial) {
    ColorWord gp;
    for (std::size_t k = uniform(rng, 0, 8); k > 0; --k) gp.push_back(uniform(rng, 1, 2));
    Path lambda = syncdiag_paths(f, r.coloring, r.word, t, gp);
    ColorWord expect = gp;
    expect.insert(expect.end(), r.word.begin(), r.word.end());
    v.require(lambda.source() == t && lambda.range() == t, "lambda is not a cycle at t");
    v.require(color_word(r.coloring, lambda) == expect, "c(lambda) != gamma' gamma");
  }
  return v;
}

// 8. Coloured Cuntz-Krieger truncation of Figure 1 at N = 4.
Verdict colored_truncation() {
  Verdict v;
  Graph f = figure1();
  OBrienResult o = obrien_coloring(f, f.edge_index("a"));
  TruncatedRep r = build_colored_trunc(f, o.coloring, 4);
  auto reports = verify_tck(r);
  for (const char* id : {"P", "IS", "TCK", "CK"}) {
    const auto& x = find_report(reports, id);
    v.require(x.exact_zero && x.residual == 0.0, std::string(id) + " residual nonzero");
  }
  SparseMatrix id = SparseMatrix::identity(r.dim());
  for (std::size_t k = 1; k <= 3; ++k) {
    auto cols = r.interior(k);
    v.require(!cols.empty(), "empty interior");
    v.require((range_sum(r, k) - id).max_abs(cols) == 0.0,
              "range sum of length " + std::to_string(k) + " is not the identity");
  }
  return v;
}

// 9. Grading identities, Cesaro weights and row norms.
Verdict series_calculus() {
  Verdict v;
  Rng rng = rng_for(1009);
  const double tol = 1e-12;
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t n = uniform(rng, 1, 4);
    Graph g = random_graph(rng, n, uniform(rng, n, 2 * n));
    FormalElement a = random_poly(rng, g, 4, uniform(rng, 1, 6));
    FormalElement b = random_poly(rng, g, 4, uniform(rng, 1, 6));
    FormalElement ab = formal_mul(a, b);
    v.require(approx_equal(fourier_coeff(ab, 0), formal_mul(fourier_coeff(a, 0), fourier_coeff(b, 0)),
                           tol),
              "Phi_0 is not multiplicative");
    for (long long m = 0; m <= 8; ++m) {
      FormalElement sum;
      for (long long i = 0; i <= m; ++i) sum += formal_mul(fourier_coeff(a, i), fourier_coeff(b, m - i));
      v.require(approx_equal(fourier_coeff(ab, m), sum, tol), "graded Leibniz rule fails");
    }
    std::size_t k = uniform(rng, 1, 6);
    FormalElement c = cesaro(a, k);
    for (const auto& [mu, coef] : a.terms()) {
      double w = mu.length() < k ? 1.0 - static_cast<double>(mu.length()) / static_cast<double>(k) : 0.0;
      v.require(std::abs(c.coeff(mu) - w * coef) <= tol, "Cesaro weight wrong");
    }
    for (const auto& [mu, coef] : c.terms()) {
      v.require(a.coeff(mu) != std::complex<double>(0.0) && mu.length() < k, "Cesaro invented a term");
    }
    if (trial % 4 == 0) {
      std::size_t m = uniform(rng, 0, 4);
      VertexIndex x = uniform(rng, 0, n - 1);
      TruncatedRep r = build_left_regular_trunc(g, VertexSet{x}, m + 1);
      FormalElement graded =
          formal_mul(fourier_coeff(a, static_cast<long long>(m)), FormalElement::monomial(Path(x)));
      SparseMatrix op = apply_formal(r, graded);
      double expect = l2_row_norm(a, static_cast<long long>(m), x);
      for (std::size_t col : r.interior(m)) {
        double got = op.column_norm(col);
        double want = r.vertex_of[col] == x ? expect : 0.0;
        v.require(std::abs(got - want) <= tol * std::max(1.0, want), "row norm mismatch");
      }
    }
  }
  return v;
}

// 10. Singular / dominates Lebesgue / not unitary on atomic data.
Verdict condition_m() {
  Verdict v;
  Rng rng = rng_for(1010);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = uniform(rng, 1, 4);
    Graph c = cycle_graph(n);
    std::vector<EdgeIndex> trav;
    for (std::size_t i = 0; i < n; ++i) trav.push_back(i);  // e1 .. en in order
    Path u = rotate(c, Path::from_traversal(c, trav), uniform(rng, 0, n - 1));
    DirectSum s;
    for (std::size_t k = uniform(rng, 1, 3); k > 0; --k) {
      s.summands.push_back({{1, false}, {CycleType{power(u, uniform(rng, 1, 3)), random_phase(rng)}}});
    }
    ExplicitAtomic a = scramble(rng, materialize({c, {s}}, 1));
    Path mu = power(u, uniform(rng, 1, 2));
    ConditionMReport r = orbit_condition_M(a, mu);
    v.require(r.verdict == ConditionM::Singular, "pure cycle family not singular");
    std::size_t sum = 0;
    for (std::size_t x : r.orbit_sizes) sum += x;
    v.require(sum == a.indices(mu.source()).size(), "orbits do not cover the basis");

    v.require(orbit_condition_M(CanonicalFamily{c, {Tail{u}}}, u).verdict ==
                  ConditionM::DominatesLebesgue,
              "tail on a cycle graph does not dominate Lebesgue");
  }
  for (int trial = 0; trial < 40; ++trial) {
    auto spec = random_cycle_sink_graph(rng);
    const Path& u = spec.cycles[uniform(rng, 0, spec.cycles.size() - 1)];
    v.require(orbit_condition_M(CanonicalFamily{spec.graph, {Tail{u}}}, u).verdict ==
                  ConditionM::DominatesLebesgue,
              "tail with draining exits does not dominate Lebesgue");
  }
  // Non-bijective pi_mu: truncated trees and hand-made partial injections.
  Graph two = two_loops();
  for (std::size_t depth = 1; depth <= 4; ++depth) {
    ExplicitAtomic cut = materialize({two, {LeftRegular{0}}}, depth);
    v.require(orbit_condition_M(cut, path_of(two, {"a"})).verdict == ConditionM::NotUnitary,
              "truncated left-regular family reported unitary");
  }
  AtomicData d;
  d.graph = cycle_graph(1).to_data();
  d.lambda = {{"v1", {"x", "y", "z"}}};
  d.pi = {{"e1", "x", "y"}, {"e1", "y", "z"}};
  ExplicitAtomic shift = ExplicitAtomic::from_data(d, true);
  v.require(orbit_condition_M(shift, Path::single(shift.graph(), 0)).verdict == ConditionM::NotUnitary,
            "partial shift reported unitary");
  v.require(orbit_condition_M(CanonicalFamily{two, {Tail{path_of(two, {"a"})}}}, path_of(two, {"a"}))
                    .verdict == ConditionM::NotUnitary,
            "tail whose exits return reported unitary");
  return v;
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Verdict()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "cycle-lemma block identification", 1.0, cycle_lemma},
      {2, "Wold/SES equivalence by alpha vectors", 5.0, wold_ses},
      {3, "atomic root splitting", 0.1, root_splitting},
      {4, "equivalence decision soundness", 10.0, equivalence_soundness},
      {5, "multiplicity formula cross-check", 2.0, multiplicity_formula},
      {6, "road colouring search", 30.0, road_coloring},
      {7, "O'Brien pipeline", 1.0, obrien},
      {8, "coloured CK truncation", 2.0, colored_truncation},
      {9, "series calculus", 5.0, series_calculus},
      {10, "condition (M) orbit analysis", 0.1, condition_m},
  };
  std::printf("seed %llu\n", static_cast<unsigned long long>(base_seed()));
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (v.ok && secs > c.limit_s) v.fail("runtime limit exceeded");
    if (!v.ok) ++failed;
    std::printf("%s %2d  %-40s %8.3f s (limit %g s)%s%s\n", v.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                c.limit_s, v.ok ? "" : "  -- ", v.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
