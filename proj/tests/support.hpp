#pragma once

// Fixture graphs and random generators shared by the test binaries.
// SEMIGROUPOID_KIT_SEED overrides the base seed of every randomized test.

#include <array>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "sgk/graph.hpp"
#include "sgk/path.hpp"
#include "sgk/series.hpp"

namespace sgk::testing {

using Rng = std::mt19937_64;
using EdgeSpec = std::array<std::string, 3>;  // id, src, dst

inline std::uint64_t base_seed() {
  if (const char* s = std::getenv("SEMIGROUPOID_KIT_SEED")) return std::strtoull(s, nullptr, 10);
  return 20240611;
}

inline Rng rng_for(std::uint64_t salt) { return Rng(base_seed() * 1000003ULL + salt); }

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline Graph make_graph(const std::vector<std::string>& vertices,
                        const std::vector<EdgeSpec>& edges) {
  GraphData d;
  d.vertices = vertices;
  for (const auto& e : edges) d.edges.push_back({e[0], e[1], e[2]});
  return Graph::from_data(d);
}

// Three vertices t, l, r: loop a at t, b1 and b2 from t to l, c from l to r,
// d from t to r, f from r back to t. In-degree 2 everywhere.
inline Graph figure1() {
  return make_graph({"t", "l", "r"}, {{"a", "t", "t"},
                                      {"b1", "t", "l"},
                                      {"b2", "t", "l"},
                                      {"c", "l", "r"},
                                      {"d", "t", "r"},
                                      {"f", "r", "t"}});
}

inline Graph chain3() {
  return make_graph({"v1", "v2", "v3"}, {{"e1", "v1", "v2"}, {"e2", "v2", "v3"}});
}

inline Graph two_loops() { return make_graph({"v"}, {{"a", "v", "v"}, {"b", "v", "v"}}); }

inline Graph loops(std::size_t d) {
  std::vector<EdgeSpec> e;
  for (std::size_t i = 0; i < d; ++i) e.push_back({"a" + std::to_string(i), "v", "v"});
  return make_graph({"v"}, e);
}

// The 2-cycle with every edge doubled: in-degree 2, period 2.
inline Graph doubled_c2() {
  return make_graph({"v1", "v2"}, {{"a1", "v1", "v2"},
                                   {"a2", "v1", "v2"},
                                   {"b1", "v2", "v1"},
                                   {"b2", "v2", "v1"}});
}

inline std::string vid(std::size_t i) { return "v" + std::to_string(i); }

inline std::string eid(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "e%03zu", i);
  return buf;
}

// Vertex ids v0..v9 sort in index order as long as n <= 10.
inline Graph random_graph(Rng& rng, std::size_t n, std::size_t m) {
  std::vector<std::string> vs;
  for (std::size_t i = 0; i < n; ++i) vs.push_back(vid(i));
  std::vector<EdgeSpec> es;
  for (std::size_t i = 0; i < m; ++i) {
    es.push_back({eid(i), vid(uniform(rng, 0, n - 1)), vid(uniform(rng, 0, n - 1))});
  }
  return make_graph(vs, es);
}

// Edges only go from lower to higher index.
inline Graph random_dag(Rng& rng, std::size_t n, std::size_t m) {
  std::vector<std::string> vs;
  for (std::size_t i = 0; i < n; ++i) vs.push_back(vid(i));
  std::vector<EdgeSpec> es;
  if (n >= 2) {
    for (std::size_t i = 0; i < m; ++i) {
      std::size_t a = uniform(rng, 0, n - 2);
      std::size_t b = uniform(rng, a + 1, n - 1);
      es.push_back({eid(i), vid(a), vid(b)});
    }
  }
  return make_graph(vs, es);
}

// Each vertex receives exactly d edges from uniformly random sources.
inline Graph random_regular(Rng& rng, std::size_t n, std::size_t d) {
  std::vector<std::string> vs;
  for (std::size_t i = 0; i < n; ++i) vs.push_back(vid(i));
  std::vector<EdgeSpec> es;
  for (std::size_t w = 0; w < n; ++w) {
    for (std::size_t j = 0; j < d; ++j) {
      es.push_back({eid(es.size()), vid(uniform(rng, 0, n - 1)), vid(w)});
    }
  }
  return make_graph(vs, es);
}

// A uniformly random path of length exactly `len` ending anywhere, or the
// vertex path when the walk gets stuck.
inline Path random_path(Rng& rng, const Graph& g, std::size_t len) {
  VertexIndex v = uniform(rng, 0, g.vertex_count() - 1);
  Path p(v);
  for (std::size_t i = 0; i < len; ++i) {
    const auto& out = g.out_edges(p.range());
    if (out.empty()) break;
    EdgeIndex e = out[uniform(rng, 0, out.size() - 1)];
    p = *compose(Path::single(g, e), p);
  }
  return p;
}

// Small integer coefficients keep every product exact in doubles.
inline FormalElement random_poly(Rng& rng, const Graph& g, std::size_t max_deg,
                                 std::size_t terms) {
  FormalElement a;
  for (std::size_t i = 0; i < terms; ++i) {
    Path mu = random_path(rng, g, uniform(rng, 0, max_deg));
    double re = static_cast<double>(uniform(rng, 0, 8)) - 4.0;
    double im = static_cast<double>(uniform(rng, 0, 8)) - 4.0;
    a.add(mu, {re, im});
  }
  return a;
}

}  // namespace sgk::testing
