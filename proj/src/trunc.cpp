#include "sgk/trunc.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "sgk/error.hpp"

namespace sgk {

const char* to_string(TruncKind k) {
  switch (k) {
    case TruncKind::LeftRegular: return "left_regular";
    case TruncKind::Colored: return "colored";
    case TruncKind::Atomic: return "atomic";
  }
  return "?";
}

std::vector<std::size_t> TruncatedRep::interior(std::size_t word_length) const {
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (exact || level[i] + word_length <= depth) cols.push_back(i);
  }
  return cols;
}

namespace {

void init_ops(TruncatedRep& rep) {
  const std::size_t n = rep.dim();
  rep.vertex_ops.assign(rep.graph.vertex_count(), SparseMatrix(n, n));
  rep.edge_ops.assign(rep.graph.edge_count(), SparseMatrix(n, n));
  for (std::size_t i = 0; i < n; ++i) rep.vertex_ops[rep.vertex_of[i]].set(i, i, 1.0);
}

}  // namespace

TruncatedRep build_left_regular_trunc(const Graph& g, const VertexSet& sources, std::size_t N) {
  for (VertexIndex v : sources) {
    if (v >= g.vertex_count()) throw Error("UnknownVertex", "truncation source out of range");
  }
  TruncatedRep rep;
  rep.graph = g;
  rep.kind = TruncKind::LeftRegular;
  rep.depth = N;
  std::vector<Path> basis = enumerate_paths(g, sources, N);
  std::map<Path, std::size_t> index;
  for (const Path& mu : basis) {
    index.emplace(mu, rep.labels.size());
    rep.labels.push_back(mu.to_string(g));
    rep.level.push_back(mu.length());
    rep.vertex_of.push_back(mu.range());
  }
  init_ops(rep);
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const Path& mu = basis[col];
    if (mu.length() >= N) continue;
    for (EdgeIndex e : g.out_edges(mu.range())) {
      Path next = *compose(Path::single(g, e), mu);
      rep.edge_ops[e].set(index.at(next), col, 1.0);
    }
  }
  return rep;
}

namespace {

// A canonical window pair (mu, n) for the tail-extended Cuntz family.
struct Pair {
  std::vector<unsigned> mu;  // mu[0] is the last letter applied
  std::size_t n = 0;

  std::size_t level() const { return std::max(mu.size(), n); }
  auto key() const { return std::make_tuple(level(), mu, n); }
  friend bool operator<(const Pair& a, const Pair& b) { return a.key() < b.key(); }
};

std::optional<Pair> apply_letter(const Pair& p, unsigned j, std::size_t N) {
  Pair q;
  if (p.mu.empty() && p.n > 0 && j == 1) {
    q.n = p.n - 1;
  } else {
    q.mu.push_back(j);
    q.mu.insert(q.mu.end(), p.mu.begin(), p.mu.end());
    q.n = p.n;
  }
  if (q.level() > N) return std::nullopt;
  return q;
}

std::vector<Pair> window(unsigned d, std::size_t N) {
  std::vector<Pair> out;
  std::vector<std::vector<unsigned>> words{{}};
  for (std::size_t len = 1; len <= N; ++len) {
    std::vector<std::vector<unsigned>> next;
    for (const auto& w : words) {
      if (w.size() + 1 != len) continue;
      for (unsigned j = 1; j <= d; ++j) {
        auto x = w;
        x.push_back(j);
        next.push_back(x);
      }
    }
    words.insert(words.end(), next.begin(), next.end());
  }
  for (const auto& w : words) {
    for (std::size_t n = 0; n <= N; ++n) {
      if (n > 0 && !w.empty() && w.back() == 1) continue;
      Pair p{w, n};
      if (p.level() <= N) out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string pair_label(const Pair& p) {
  std::string s = p.mu.empty() ? "()" : to_string(p.mu);
  return s + "/" + std::to_string(p.n);
}

}  // namespace

TruncatedRep build_colored_trunc(const Graph& g, const Coloring& c, std::size_t N) {
  ColoringValidation v = validate_strong(g, c);
  if (!v.report.valid()) throw Error("InvalidColoring", "colouring is not strong", v.report.findings);
  if (!v.in_degree_regular) throw Error("NotRegular", "graph is not in-degree d-regular");

  TruncatedRep rep;
  rep.graph = g;
  rep.kind = TruncKind::Colored;
  rep.depth = N;
  std::vector<Pair> win = window(c.d, N);
  std::map<Pair, std::size_t> local;
  for (std::size_t i = 0; i < win.size(); ++i) local.emplace(win[i], i);
  const std::size_t block = win.size();
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
    for (const Pair& p : win) {
      rep.labels.push_back(g.vertex_id(x) + ":" + pair_label(p));
      rep.level.push_back(p.level());
      rep.vertex_of.push_back(x);
    }
  }
  init_ops(rep);
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const std::size_t from = g.src(e) * block, to = g.dst(e) * block;
    for (std::size_t i = 0; i < block; ++i) {
      auto q = apply_letter(win[i], c.color[e], N);
      if (q) rep.edge_ops[e].set(to + local.at(*q), from + i, 1.0);
    }
  }
  return rep;
}

TruncatedRep build_atomic_rep(const ExplicitAtomic& a) {
  if (!a.total()) throw Error("NonTotalPresentation", "atomic matrices need total pi");
  const Graph& g = a.graph();
  TruncatedRep rep;
  rep.graph = g;
  rep.kind = TruncKind::Atomic;
  rep.exact = true;
  for (NodeIndex x = 0; x < a.node_count(); ++x) {
    rep.labels.push_back(g.vertex_id(a.node_vertex(x)) + ":" + a.node_label(x));
    rep.level.push_back(0);
    rep.vertex_of.push_back(a.node_vertex(x));
  }
  init_ops(rep);
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    for (std::size_t i = 0; i < a.indices(g.src(e)).size(); ++i) {
      rep.edge_ops[e].set(a.node(g.dst(e), *a.target(e, i)), a.node(g.src(e), i),
                          a.phase(e, i).value());
    }
  }
  return rep;
}

TruncatedRep restrict_levels(const TruncatedRep& rep, std::size_t M) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < rep.dim(); ++i) {
    if (rep.level[i] <= M) keep.push_back(i);
  }
  TruncatedRep out;
  out.graph = rep.graph;
  out.kind = rep.kind;
  out.depth = std::min(M, rep.depth);
  out.exact = rep.exact;
  for (std::size_t i : keep) {
    out.labels.push_back(rep.labels[i]);
    out.level.push_back(rep.level[i]);
    out.vertex_of.push_back(rep.vertex_of[i]);
  }
  for (const auto& m : rep.vertex_ops) out.vertex_ops.push_back(m.select(keep, keep));
  for (const auto& m : rep.edge_ops) out.edge_ops.push_back(m.select(keep, keep));
  return out;
}

namespace {

struct Accumulator {
  RelationReport report;
  void take(const SparseMatrix& defect, const std::vector<std::size_t>& cols) {
    for (std::size_t c : cols) {
      for (const auto& [r, v] : defect.column(c)) {
        double m = std::abs(v);
        if (m > report.residual) {
          report.residual = m;
          report.worst_column = c;
        }
      }
    }
    report.exact_zero = report.residual == 0.0;
  }
};

Accumulator start(const std::string& id, std::size_t word_length, const TruncatedRep& rep,
                  bool axiom) {
  Accumulator a;
  a.report.id = id;
  a.report.axiom = axiom;
  a.report.depth = rep.exact ? rep.depth
                             : (rep.depth >= word_length ? rep.depth - word_length : 0);
  return a;
}

}  // namespace

std::vector<RelationReport> verify_tck(const TruncatedRep& rep) {
  const Graph& g = rep.graph;
  const std::size_t n = rep.dim();
  const auto all = rep.interior(0);
  const auto inner = rep.interior(1);
  std::vector<RelationReport> out;

  Accumulator p = start("P", 0, rep, true);
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    const auto& sv = rep.vertex_ops[v];
    p.take(sv * sv - sv, all);
    p.take(sv.adjoint() - sv, all);
    for (VertexIndex w = v + 1; w < g.vertex_count(); ++w) p.take(sv * rep.vertex_ops[w], all);
  }
  out.push_back(p.report);

  Accumulator is = start("IS", 1, rep, true);
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const auto& se = rep.edge_ops[e];
    is.take(se.adjoint() * se - rep.vertex_ops[g.src(e)], inner);
  }
  out.push_back(is.report);

  std::vector<SparseMatrix> defect(g.vertex_count());
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    SparseMatrix sum(n, n);
    for (EdgeIndex e : g.in_edges(v)) sum = sum + rep.edge_ops[e] * rep.edge_ops[e].adjoint();
    defect[v] = rep.vertex_ops[v] - sum;
  }

  Accumulator tck = start("TCK", 0, rep, true);
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    const auto& d = defect[v];
    tck.take(d * d - d, all);
    tck.take(d.adjoint() - d, all);
    tck.take(rep.vertex_ops[v] * d - d, all);
  }
  out.push_back(tck.report);

  Accumulator ck = start("CK", 1, rep, false);
  Accumulator f = start("F", 1, rep, false);
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (!g.in_edges(v).empty()) ck.take(defect[v], inner);
    f.take(defect[v], inner);
  }
  out.push_back(ck.report);
  out.push_back(f.report);

  Accumulator nd = start("ND", 0, rep, true);
  SparseMatrix sum(n, n);
  for (const auto& sv : rep.vertex_ops) sum = sum + sv;
  nd.take(sum - SparseMatrix::identity(n), all);
  out.push_back(nd.report);
  return out;
}

const RelationReport& find_report(const std::vector<RelationReport>& reports,
                                  const std::string& id) {
  for (const auto& r : reports) {
    if (r.id == id) return r;
  }
  throw Error("UnknownRelation", "no relation report '" + id + "'");
}

SparseMatrix path_operator(const TruncatedRep& rep, const Path& mu) {
  if (mu.is_vertex()) return rep.vertex_ops.at(mu.source());
  SparseMatrix m = rep.edge_ops.at(mu.edges().front());
  for (std::size_t i = 1; i < mu.edges().size(); ++i) m = m * rep.edge_ops.at(mu.edges()[i]);
  return m;
}

SparseMatrix apply_formal(const TruncatedRep& rep, const FormalElement& a) {
  SparseMatrix out(rep.dim(), rep.dim());
  for (const auto& [mu, c] : a.terms()) out = out + c * path_operator(rep, mu);
  return out;
}

SparseMatrix range_sum(const TruncatedRep& rep, std::size_t k) {
  const Graph& g = rep.graph;
  VertexSet everything;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) everything.insert(v);
  SparseMatrix out(rep.dim(), rep.dim());
  for (const Path& mu : enumerate_paths(g, everything, k)) {
    if (mu.length() != k) continue;
    SparseMatrix s = path_operator(rep, mu);
    out = out + s * s.adjoint();
  }
  return out;
}

bool wandering_certificate(const TruncatedRep& rep, std::size_t col, std::size_t max_len) {
  const Graph& g = rep.graph;
  using Vec = SparseMatrix::Column;
  std::vector<Vec> images;
  // Breadth-first over paths from the vertex of xi, applying one edge at a time.
  std::vector<Vec> frontier{rep.vertex_ops[rep.vertex_of[col]].column(col)};
  std::vector<VertexIndex> ranges{rep.vertex_of[col]};
  for (std::size_t len = 0;; ++len) {
    for (const Vec& v : frontier) {
      if (!v.empty()) images.push_back(v);
    }
    if (len == max_len) break;
    std::vector<Vec> next;
    std::vector<VertexIndex> next_ranges;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      for (EdgeIndex e : g.out_edges(ranges[i])) {
        Vec out;
        for (const auto& [r, x] : frontier[i]) {
          for (const auto& [r2, y] : rep.edge_ops[e].column(r)) out[r2] += y * x;
        }
        std::erase_if(out, [](const auto& kv) { return kv.second == SparseMatrix::Complex{}; });
        next.push_back(std::move(out));
        next_ranges.push_back(g.dst(e));
      }
    }
    frontier = std::move(next);
    ranges = std::move(next_ranges);
  }
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = i + 1; j < images.size(); ++j) {
      SparseMatrix::Complex dot{};
      for (const auto& [r, x] : images[i]) {
        auto it = images[j].find(r);
        if (it != images[j].end()) dot += std::conj(x) * it->second;
      }
      if (dot != SparseMatrix::Complex{}) return false;
    }
  }
  return true;
}

CycleLemmaReport cycle_lemma_check(std::size_t n, std::size_t N) {
  if (n < 1 || N < n) throw Error("InvalidArgument", "cycle lemma needs 1 <= n <= N");
  Graph g = cycle_graph(n);
  TruncatedRep rep = build_left_regular_trunc(g, {g.vertex("v1")}, N - 1);
  // Basis vector j is the unique path of length j from v1.
  auto index = [&](std::size_t length) {
    for (std::size_t i = 0; i < rep.dim(); ++i) {
      if (rep.level[i] == length) return i;
    }
    throw Error("InvariantViolated", "missing path length in cycle truncation");
  };

  CycleLemmaReport out;
  std::vector<std::size_t> order;
  std::vector<std::size_t> offset(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    offset[i] = order.size();
    std::size_t size = 0;
    for (std::size_t j = i - 1; j < N; j += n, ++size) order.push_back(index(j));
    out.block_sizes.push_back(size);
  }
  offset[0] = order.size();
  auto pos = [&](std::size_t block, std::size_t s) -> std::optional<std::size_t> {
    if (s >= out.block_sizes[block - 1]) return std::nullopt;
    return offset[block] + s;
  };

  for (std::size_t i = 1; i <= n; ++i) {
    EdgeIndex e = g.edge_index("e" + std::to_string(i));
    SparseMatrix got = rep.edge_ops[e].select(order, order);
    SparseMatrix want(order.size(), order.size());
    for (std::size_t s = 0; s < out.block_sizes[i - 1]; ++s) {
      auto col = pos(i, s);
      auto row = i < n ? pos(i + 1, s) : pos(1, s + 1);
      if (row) want.set(*row, *col, 1.0);
    }
    std::vector<std::size_t> cols(order.size());
    for (std::size_t c = 0; c < cols.size(); ++c) cols[c] = c;
    double r = (got - want).max_abs(cols);
    if (r > out.residual) {
      out.residual = r;
      out.detail = "L_e" + std::to_string(i) + " deviates from its block pattern";
    }
  }
  out.ok = out.residual == 0.0;
  if (out.ok) out.detail = "block pattern matches exactly";
  return out;
}

}  // namespace sgk
