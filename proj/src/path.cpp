#include "sgk/path.hpp"

#include <algorithm>

namespace sgk {

Path Path::from_edges(const Graph& g, std::vector<EdgeIndex> written_order) {
  if (written_order.empty()) {
    throw Error("EmptyPath", "use Path(vertex) for length-0 paths");
  }
  for (EdgeIndex e : written_order) {
    if (e >= g.edge_count()) throw Error("UnknownEdge", "edge index out of range");
  }
  for (std::size_t i = 0; i + 1 < written_order.size(); ++i) {
    // written_order[i] is traversed right after written_order[i + 1]
    if (g.src(written_order[i]) != g.dst(written_order[i + 1])) {
      throw Error("NotComposable", "edge '" + g.edge(written_order[i]).id +
                                       "' does not follow '" +
                                       g.edge(written_order[i + 1]).id + "'");
    }
  }
  VertexIndex range = g.dst(written_order.front());
  VertexIndex source = g.src(written_order.back());
  return Path(source, range, std::move(written_order));
}

Path Path::from_traversal(const Graph& g, std::vector<EdgeIndex> traversal) {
  std::reverse(traversal.begin(), traversal.end());
  return from_edges(g, std::move(traversal));
}

std::strong_ordering operator<=>(const Path& a, const Path& b) {
  if (auto c = a.edges_.size() <=> b.edges_.size(); c != 0) return c;
  if (a.edges_.empty()) return a.source_ <=> b.source_;
  return a.edges_ <=> b.edges_;
}

std::string Path::to_string(const Graph& g) const {
  if (edges_.empty()) return g.vertex_id(source_);
  std::string out;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (i) out += ' ';
    out += g.edge(edges_[i]).id;
  }
  return out;
}

std::optional<Path> compose(const Path& mu, const Path& nu) {
  if (mu.source() != nu.range()) return std::nullopt;
  if (mu.is_vertex()) return nu;
  if (nu.is_vertex()) return mu;
  std::vector<EdgeIndex> edges = mu.edges();
  edges.insert(edges.end(), nu.edges().begin(), nu.edges().end());
  return Path(nu.source(), mu.range(), std::move(edges));
}

Path power(const Path& w, std::size_t p) {
  if (!w.is_cycle()) throw Error("NotACycle", "power requires a cycle");
  if (p == 0) return Path(w.source());
  Path out = w;
  for (std::size_t i = 1; i < p; ++i) out = *compose(out, w);
  return out;
}

Path rotate(const Graph& g, const Path& w, std::size_t k) {
  if (!w.is_cycle()) throw Error("NotACycle", "rotate requires a cycle");
  auto t = w.traversal();
  std::rotate(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(k % t.size()), t.end());
  return Path::from_traversal(g, std::move(t));
}

std::vector<Path> enumerate_paths(const Graph& g, const VertexSet& sources,
                                  std::size_t max_len) {
  std::vector<Path> all;
  std::vector<Path> frontier;
  for (VertexIndex v : sources) frontier.emplace_back(v);
  for (std::size_t len = 0;; ++len) {
    all.insert(all.end(), frontier.begin(), frontier.end());
    if (len == max_len) break;
    std::vector<Path> next;
    for (const auto& mu : frontier) {
      for (EdgeIndex e : g.out_edges(mu.range())) {
        next.push_back(*compose(Path::single(g, e), mu));
      }
    }
    if (next.empty()) break;
    frontier = std::move(next);
  }
  std::sort(all.begin(), all.end());
  return all;
}

std::vector<Path> irreducible_cycles_at(const Graph& g, VertexIndex v,
                                        std::size_t max_len) {
  std::vector<Path> cycles;
  std::vector<EdgeIndex> traversal;
  // Depth-first over walks that leave v and have not yet returned.
  auto dfs = [&](auto&& self, VertexIndex at) -> void {
    for (EdgeIndex e : g.out_edges(at)) {
      traversal.push_back(e);
      if (g.dst(e) == v) {
        cycles.push_back(Path::from_traversal(g, traversal));
      } else if (traversal.size() < max_len) {
        self(self, g.dst(e));
      }
      traversal.pop_back();
    }
  };
  if (max_len >= 1) dfs(dfs, v);
  std::sort(cycles.begin(), cycles.end());
  return cycles;
}

CycleClass vertex_cycle_class(const Graph& g, VertexIndex v) {
  for (const auto& comp : strongly_connected_components(g)) {
    if (!std::binary_search(comp.begin(), comp.end(), v)) continue;
    std::size_t internal = 0;
    for (VertexIndex a : comp) {
      for (EdgeIndex e : g.out_edges(a)) {
        if (std::binary_search(comp.begin(), comp.end(), g.dst(e))) ++internal;
      }
    }
    if (internal == 0) return CycleClass::NoCycle;
    return internal == comp.size() ? CycleClass::SimpleCycle : CycleClass::TwoPlus;
  }
  return CycleClass::NoCycle;
}

const char* to_string(CycleClass c) {
  switch (c) {
    case CycleClass::NoCycle:
      return "NoCycle";
    case CycleClass::SimpleCycle:
      return "SimpleCycle";
    case CycleClass::TwoPlus:
      return "TwoPlus";
  }
  return "?";
}

PrimitiveRoot primitive_root(const Graph& g, const Path& w) {
  if (!w.is_cycle()) throw Error("NotACycle", "primitive root requires a cycle");
  const auto& seq = w.edges();
  const std::size_t n = seq.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = seq[i] == seq[i - d];
    if (periodic) {
      return {Path::from_edges(g, {seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(d)}),
              n / d};
    }
  }
  return {w, 1};  // unreachable: d == n always succeeds
}

bool is_primitive(const Graph& g, const Path& w) { return primitive_root(g, w).exponent == 1; }

std::size_t least_rotation(const std::vector<EdgeIndex>& seq) {
  // Booth's algorithm over the doubled sequence.
  const std::size_t n = seq.size();
  if (n == 0) return 0;
  std::vector<long long> failure(2 * n, -1);
  std::size_t k = 0;
  auto at = [&](std::size_t i) { return seq[i % n]; };
  for (std::size_t j = 1; j < 2 * n; ++j) {
    long long i = failure[j - k - 1];
    while (i != -1 && at(j) != at(k + static_cast<std::size_t>(i) + 1)) {
      if (at(j) < at(k + static_cast<std::size_t>(i) + 1)) {
        k = j - static_cast<std::size_t>(i) - 1;
      }
      i = failure[static_cast<std::size_t>(i)];
    }
    if (i == -1 && at(j) != at(k)) {
      if (at(j) < at(k)) k = j;
      failure[j - k] = -1;
    } else {
      failure[j - k] = i + 1;
    }
  }
  return k % n;
}

Path cyclic_canonical_form(const Graph& g, const Path& w) {
  if (!w.is_cycle()) throw Error("NotACycle", "canonical form requires a cycle");
  auto seq = w.edges();
  std::size_t k = least_rotation(seq);
  std::rotate(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(k), seq.end());
  return Path::from_edges(g, std::move(seq));
}

}  // namespace sgk
