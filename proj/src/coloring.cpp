#include "sgk/coloring.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <deque>
#include <limits>
#include <thread>
#include <unordered_map>

#include "sgk/error.hpp"

namespace sgk {

ColorWord parse_word(const std::string& s) {
  ColorWord w;
  for (char ch : s) {
    if (ch < '1' || ch > '9') {
      throw Error("InvalidWord", "colour words use the letters 1..9, got '" + s + "'");
    }
    w.push_back(static_cast<unsigned>(ch - '0'));
  }
  return w;
}

std::string to_string(const ColorWord& w) {
  std::string s;
  for (unsigned j : w) s += static_cast<char>('0' + j);
  return s;
}

ColoringValidation validate_strong(const Graph& g, const Coloring& c) {
  ColoringValidation out;
  if (c.d == 0 || c.color.size() != g.edge_count()) {
    out.report.add("size-mismatch", "colouring must assign one colour to each edge, with d >= 1");
    return out;
  }
  out.in_degree_regular = true;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    const auto& in = g.in_edges(v);
    if (in.size() != c.d) out.in_degree_regular = false;
    std::vector<EdgeIndex> seen(c.d + 1, std::numeric_limits<EdgeIndex>::max());
    for (EdgeIndex e : in) {
      unsigned j = c.color[e];
      if (j < 1 || j > c.d) {
        out.report.add("color-range", "edge '" + g.edge(e).id + "' has colour " +
                                          std::to_string(j) + " outside 1.." +
                                          std::to_string(c.d));
        continue;
      }
      if (seen[j] != std::numeric_limits<EdgeIndex>::max()) {
        out.report.add("repeated-color", "edges '" + g.edge(seen[j]).id + "' and '" +
                                             g.edge(e).id + "' into '" + g.vertex_id(v) +
                                             "' share colour " + std::to_string(j));
      }
      seen[j] = e;
    }
  }
  return out;
}

ColorWord color_word(const Coloring& c, const Path& mu) {
  ColorWord w;
  for (EdgeIndex e : mu.edges()) w.push_back(c.color[e]);
  return w;
}

BackwardAutomaton::BackwardAutomaton(const Graph& g, const Coloring& c)
    : graph_(&g), d_(c.d) {
  ColoringValidation v = validate_strong(g, c);
  if (!v.report.valid()) {
    throw Error("InvalidColoring", "colouring is not strong", v.report.findings);
  }
  delta_.assign(g.vertex_count(), std::vector<std::optional<EdgeIndex>>(d_));
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) delta_[g.dst(e)][c.color[e] - 1] = e;
  total_ = v.in_degree_regular;
}

std::optional<VertexIndex> BackwardAutomaton::step(VertexIndex w, unsigned j) const {
  auto e = delta_[w][j - 1];
  if (!e) return std::nullopt;
  return graph_->src(*e);
}

BackwardTrace follow_backward(const Graph& g, const BackwardAutomaton& a, VertexIndex w,
                              const ColorWord& gamma) {
  std::vector<EdgeIndex> edges;
  VertexIndex cur = w;
  for (unsigned j : gamma) {
    if (j < 1 || j > a.letters()) throw Error("InvalidWord", "colour outside 1..d");
    auto e = a.edge(cur, j);
    if (!e) {
      throw Error("PartialAutomaton", "no edge of colour " + std::to_string(j) + " into '" +
                                          g.vertex_id(cur) + "'");
    }
    edges.push_back(*e);
    cur = g.src(*e);
  }
  if (edges.empty()) return {w, Path(w)};
  return {cur, Path::from_edges(g, std::move(edges))};
}

std::optional<VertexIndex> is_synchronizing_word(const BackwardAutomaton& a,
                                                 const ColorWord& gamma) {
  if (!a.total()) throw Error("PartialAutomaton", "synchronization needs a total automaton");
  std::optional<VertexIndex> common;
  for (VertexIndex w = 0; w < a.states(); ++w) {
    VertexIndex cur = w;
    for (unsigned j : gamma) {
      if (j < 1 || j > a.letters()) throw Error("InvalidWord", "colour outside 1..d");
      cur = *a.step(cur, j);
    }
    if (common && *common != cur) return std::nullopt;
    common = cur;
  }
  return common;
}

namespace {

// Flat transition table: delta[w * d + (j - 1)].
struct Table {
  std::size_t n = 0;
  unsigned d = 0;
  std::vector<VertexIndex> delta;

  VertexIndex at(VertexIndex w, unsigned j) const { return delta[w * d + j - 1]; }
};

Table table_of(const BackwardAutomaton& a) {
  if (!a.total()) throw Error("PartialAutomaton", "synchronization needs a total automaton");
  Table t{a.states(), a.letters(), {}};
  t.delta.resize(t.n * t.d);
  for (VertexIndex w = 0; w < t.n; ++w) {
    for (unsigned j = 1; j <= t.d; ++j) t.delta[w * t.d + j - 1] = *a.step(w, j);
  }
  return t;
}

bool pairs_mergeable(const Table& t) {
  const std::size_t n = t.n;
  if (n <= 1) return true;
  std::vector<std::vector<std::vector<VertexIndex>>> inv(
      t.d, std::vector<std::vector<VertexIndex>>(n));
  for (VertexIndex w = 0; w < n; ++w) {
    for (unsigned j = 1; j <= t.d; ++j) inv[j - 1][t.at(w, j)].push_back(w);
  }
  std::vector<char> marked(n * n, 0);
  std::vector<std::size_t> queue;
  for (VertexIndex x = 0; x < n; ++x) {
    marked[x * n + x] = 1;
    queue.push_back(x * n + x);
  }
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    std::size_t x = queue[qi] / n, y = queue[qi] % n;
    for (unsigned j = 0; j < t.d; ++j) {
      for (VertexIndex p : inv[j][x]) {
        for (VertexIndex q : inv[j][y]) {
          if (!marked[p * n + q]) {
            marked[p * n + q] = 1;
            queue.push_back(p * n + q);
          }
        }
      }
    }
  }
  return std::all_of(marked.begin(), marked.end(), [](char c) { return c != 0; });
}

std::optional<SyncWord> subset_bfs(const Table& t) {
  using Mask = std::uint32_t;
  const Mask full = t.n == 32 ? ~Mask{0} : ((Mask{1} << t.n) - 1);
  struct Prev {
    Mask parent;
    unsigned letter;
  };
  std::unordered_map<Mask, Prev> prev;
  prev.emplace(full, Prev{full, 0});
  std::deque<Mask> queue{full};
  while (!queue.empty()) {
    Mask s = queue.front();
    queue.pop_front();
    if ((s & (s - 1)) == 0) {
      SyncWord out;
      for (Mask x = s; x != full; x = prev[x].parent) out.word.push_back(prev[x].letter);
      std::reverse(out.word.begin(), out.word.end());
      out.vertex = static_cast<VertexIndex>(std::countr_zero(s));
      return out;
    }
    for (unsigned j = 1; j <= t.d; ++j) {
      Mask next = 0;
      for (VertexIndex w = 0; w < t.n; ++w) {
        if (s & (Mask{1} << w)) next |= Mask{1} << t.at(w, j);
      }
      if (prev.try_emplace(next, Prev{s, j}).second) queue.push_back(next);
    }
  }
  return std::nullopt;
}

std::optional<ColorWord> merge_pair(const Table& t, VertexIndex x, VertexIndex y) {
  const std::size_t n = t.n;
  std::vector<std::size_t> parent(n * n, std::numeric_limits<std::size_t>::max());
  std::vector<unsigned> letter(n * n, 0);
  std::size_t start = x * n + y;
  parent[start] = start;
  std::deque<std::size_t> queue{start};
  while (!queue.empty()) {
    std::size_t cur = queue.front();
    queue.pop_front();
    std::size_t a = cur / n, b = cur % n;
    if (a == b) {
      ColorWord w;
      for (std::size_t c = cur; c != start; c = parent[c]) w.push_back(letter[c]);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (unsigned j = 1; j <= t.d; ++j) {
      std::size_t next = t.at(a, j) * n + t.at(b, j);
      if (parent[next] == std::numeric_limits<std::size_t>::max()) {
        parent[next] = cur;
        letter[next] = j;
        queue.push_back(next);
      }
    }
  }
  return std::nullopt;
}

std::optional<SyncWord> greedy(const Table& t) {
  std::vector<VertexIndex> states(t.n);
  for (VertexIndex w = 0; w < t.n; ++w) states[w] = w;
  SyncWord out;
  out.shortest = false;
  while (states.size() > 1) {
    auto w = merge_pair(t, states[0], states[1]);
    if (!w) return std::nullopt;
    for (auto& s : states) {
      for (unsigned j : *w) s = t.at(s, j);
    }
    std::sort(states.begin(), states.end());
    states.erase(std::unique(states.begin(), states.end()), states.end());
    out.word.insert(out.word.end(), w->begin(), w->end());
  }
  out.vertex = states.front();
  return out;
}

}  // namespace

std::optional<SyncWord> find_synchronizing_word(const BackwardAutomaton& a,
                                                std::size_t bfs_limit) {
  Table t = table_of(a);
  if (t.n == 0) return std::nullopt;
  if (t.n == 1) return SyncWord{{}, 0, true};
  if (t.n <= std::min<std::size_t>(bfs_limit, 32)) return subset_bfs(t);
  return greedy(t);
}

bool has_synchronizing_word(const BackwardAutomaton& a) {
  Table t = table_of(a);
  return t.n > 0 && pairs_mergeable(t);
}

namespace {

struct SearchSpace {
  std::size_t d = 0;
  std::vector<std::vector<unsigned>> perms;  // all orderings of 1..d, lexicographic
  std::size_t free_vertices = 0;
};

std::size_t regular_degree(const Graph& g) {
  auto d = in_degree_regular(g);
  if (!d) throw Error("NotRegular", "graph is not in-degree regular");
  if (*d > 9) throw Error("NotRegular", "in-degree above 9 is not supported");
  return *d;
}

SearchSpace make_space(const Graph& g) {
  SearchSpace s;
  s.d = regular_degree(g);
  std::vector<unsigned> p(s.d);
  for (unsigned j = 0; j < s.d; ++j) p[j] = j + 1;
  do s.perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  s.free_vertices = g.vertex_count() == 0 ? 0 : g.vertex_count() - 1;
  return s;
}

Coloring decode(const Graph& g, const SearchSpace& s, std::uint64_t index) {
  Coloring c;
  c.d = static_cast<unsigned>(s.d);
  c.color.assign(g.edge_count(), 0);
  for (VertexIndex v = g.vertex_count(); v-- > 0;) {
    std::size_t digit = 0;
    if (v > 0) {
      digit = static_cast<std::size_t>(index % s.perms.size());
      index /= s.perms.size();
    }
    const auto& in = g.in_edges(v);
    for (std::size_t k = 0; k < in.size(); ++k) c.color[in[k]] = s.perms[digit][k];
  }
  return c;
}

bool synchronizes(const Graph& g, const Coloring& c) {
  Table t;
  t.n = g.vertex_count();
  t.d = c.d;
  t.delta.resize(t.n * t.d);
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    t.delta[g.dst(e) * t.d + c.color[e] - 1] = g.src(e);
  }
  return t.n > 0 && pairs_mergeable(t);
}

}  // namespace

std::optional<std::uint64_t> coloring_search_space(const Graph& g) {
  SearchSpace s = make_space(g);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < s.free_vertices; ++i) {
    if (total > std::numeric_limits<std::uint64_t>::max() / s.perms.size()) return std::nullopt;
    total *= s.perms.size();
  }
  return total;
}

std::optional<Coloring> search_synchronizing_coloring(const Graph& g,
                                                      const ColoringSearchOptions& opt) {
  SearchSpace s = make_space(g);
  auto space = coloring_search_space(g);
  if (!space || *space > opt.cap) {
    throw Error("Overflow", "colouring search space exceeds the cap of " +
                                std::to_string(opt.cap));
  }
  const std::uint64_t total = *space;
  const std::uint64_t none = std::numeric_limits<std::uint64_t>::max();
  std::atomic<std::uint64_t> best{none};

  if (opt.jobs <= 1) {
    for (std::uint64_t i = 0; i < total; ++i) {
      if (synchronizes(g, decode(g, s, i))) return decode(g, s, i);
    }
    return std::nullopt;
  }

  constexpr std::uint64_t kChunk = 256;
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    while (true) {
      std::uint64_t start = next.fetch_add(kChunk);
      if (start >= total || start > best.load()) return;
      std::uint64_t end = std::min(total, start + kChunk);
      for (std::uint64_t i = start; i < end; ++i) {
        if (synchronizes(g, decode(g, s, i))) {
          std::uint64_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
          break;
        }
      }
    }
  };
  std::vector<std::thread> threads;
  for (unsigned k = 0; k < opt.jobs; ++k) threads.emplace_back(worker);
  for (auto& th : threads) th.join();
  if (best.load() == none) return std::nullopt;
  return decode(g, s, best.load());
}

OBrienResult obrien_coloring(const Graph& g, EdgeIndex loop) {
  if (loop >= g.edge_count() || g.src(loop) != g.dst(loop)) {
    throw Error("NotALoop", "O'Brien colouring needs a self-loop");
  }
  const std::size_t d = regular_degree(g);
  if (!is_transitive(g)) throw Error("NotTransitive", "graph is not transitive");
  const VertexIndex v = g.src(loop);

  Coloring c;
  c.d = static_cast<unsigned>(d);
  c.color.assign(g.edge_count(), 0);
  c.color[loop] = 1;
  std::vector<std::size_t> depth(g.vertex_count(), std::numeric_limits<std::size_t>::max());
  depth[v] = 0;
  std::deque<VertexIndex> queue{v};
  std::size_t k = 0;
  while (!queue.empty()) {
    VertexIndex u = queue.front();
    queue.pop_front();
    for (EdgeIndex e : g.out_edges(u)) {
      VertexIndex w = g.dst(e);
      if (depth[w] != std::numeric_limits<std::size_t>::max()) continue;
      depth[w] = depth[u] + 1;
      k = std::max(k, depth[w]);
      c.color[e] = 1;
      queue.push_back(w);
    }
  }
  for (VertexIndex w = 0; w < g.vertex_count(); ++w) {
    unsigned next = 2;
    for (EdgeIndex e : g.in_edges(w)) {
      if (c.color[e] == 0) c.color[e] = next++;
    }
  }

  OBrienResult out{c, ColorWord(k, 1), v, k};
  BackwardAutomaton a(g, c);
  if (is_synchronizing_word(a, out.word) != v) {
    throw Error("InvariantViolated", "O'Brien word does not synchronize");
  }
  return out;
}

Path syncdiag_paths(const Graph& g, const Coloring& c, const ColorWord& gamma, VertexIndex v,
                    const ColorWord& gamma_prime) {
  BackwardAutomaton a(g, c);
  if (is_synchronizing_word(a, gamma) != v) {
    throw Error("NotSynchronizing", "word does not synchronize to '" + g.vertex_id(v) + "'");
  }
  BackwardTrace outer = follow_backward(g, a, v, gamma_prime);
  BackwardTrace inner = follow_backward(g, a, outer.source, gamma);
  auto lambda = compose(outer.path, inner.path);
  ColorWord expect = gamma_prime;
  expect.insert(expect.end(), gamma.begin(), gamma.end());
  if (!lambda || lambda->source() != v || lambda->range() != v ||
      color_word(c, *lambda) != expect) {
    throw Error("InvariantViolated", "syncdiag path is not a cycle with colour gamma' gamma");
  }
  return *lambda;
}

}  // namespace sgk
