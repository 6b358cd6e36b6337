#include "sgk/atomic.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "sgk/error.hpp"

namespace sgk {

Multiplicity Multiplicity::operator+(const Multiplicity& o) const {
  if (infinite || o.infinite) return omega();
  return {count + o.count, false};
}

Multiplicity Multiplicity::operator*(const Multiplicity& o) const {
  if (is_zero() || o.is_zero()) return {};
  if (infinite || o.infinite) return omega();
  return {count * o.count, false};
}

std::string Multiplicity::to_string() const {
  return infinite ? "omega" : std::to_string(count);
}

// ---------------------------------------------------------------------------
// Explicit presentations

namespace {

struct Built {
  Graph graph;
  std::vector<std::vector<std::string>> lambda;
  std::vector<std::vector<std::optional<std::size_t>>> pi;
  std::vector<std::vector<Phase>> phase;
};

std::optional<Built> build(const AtomicData& data, ValidationReport& report) {
  ValidationReport gr = validate_graph(data.graph);
  if (!gr.valid()) {
    report.findings.insert(report.findings.end(), gr.findings.begin(), gr.findings.end());
    return std::nullopt;
  }
  Built b;
  b.graph = Graph::from_data(data.graph);
  const Graph& g = b.graph;
  b.lambda.resize(g.vertex_count());
  std::vector<std::unordered_map<std::string, std::size_t>> lookup(g.vertex_count());
  bool ok = true;

  for (const auto& [vid, labels] : data.lambda) {
    auto v = g.find_vertex(vid);
    if (!v) {
      report.add("unknown-vertex", "index set given for unknown vertex '" + vid + "'");
      ok = false;
      continue;
    }
    for (const auto& label : labels) {
      if (!lookup[*v].try_emplace(label, b.lambda[*v].size()).second) {
        report.add("duplicate-index", "index '" + label + "' repeated at vertex '" + vid + "'");
        ok = false;
        continue;
      }
      b.lambda[*v].push_back(label);
    }
  }

  b.pi.resize(g.edge_count());
  b.phase.resize(g.edge_count());
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    b.pi[e].assign(b.lambda[g.src(e)].size(), std::nullopt);
    b.phase[e].assign(b.lambda[g.src(e)].size(), Phase());
  }

  auto resolve = [&](const std::string& eid, const std::string& from,
                     const char* what) -> std::optional<std::pair<EdgeIndex, std::size_t>> {
    auto e = g.find_edge(eid);
    if (!e) {
      report.add("unknown-edge", std::string(what) + " entry names unknown edge '" + eid + "'");
      return std::nullopt;
    }
    auto it = lookup[g.src(*e)].find(from);
    if (it == lookup[g.src(*e)].end()) {
      report.add("unknown-index", std::string(what) + " entry for edge '" + eid +
                                      "' uses index '" + from + "' not in the source set");
      return std::nullopt;
    }
    return std::make_pair(*e, it->second);
  };

  for (const auto& entry : data.pi) {
    auto r = resolve(entry.edge, entry.from, "pi");
    if (!r) {
      ok = false;
      continue;
    }
    auto [e, i] = *r;
    auto it = lookup[g.dst(e)].find(entry.to);
    if (it == lookup[g.dst(e)].end()) {
      report.add("unknown-index", "pi entry for edge '" + entry.edge + "' maps to '" +
                                      entry.to + "', not in the range set");
      ok = false;
      continue;
    }
    if (b.pi[e][i]) {
      report.add("duplicate-pi", "pi for edge '" + entry.edge + "' given twice at '" +
                                     entry.from + "'");
      ok = false;
      continue;
    }
    b.pi[e][i] = it->second;
  }

  std::vector<std::vector<bool>> phase_seen(g.edge_count());
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) phase_seen[e].assign(b.pi[e].size(), false);
  for (const auto& entry : data.phase) {
    auto r = resolve(entry.edge, entry.from, "phase");
    if (!r) {
      ok = false;
      continue;
    }
    auto [e, i] = *r;
    if (phase_seen[e][i]) {
      report.add("duplicate-phase", "phase for edge '" + entry.edge + "' given twice at '" +
                                        entry.from + "'");
      ok = false;
      continue;
    }
    phase_seen[e][i] = true;
    b.phase[e][i] = entry.phase;
  }

  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    std::set<std::size_t> targets;
    for (std::size_t i = 0; i < b.pi[e].size(); ++i) {
      if (!b.pi[e][i]) continue;
      if (!targets.insert(*b.pi[e][i]).second) {
        report.add("not-injective", "pi for edge '" + g.edge(e).id + "' is not injective at '" +
                                        b.lambda[g.dst(e)][*b.pi[e][i]] + "'");
        ok = false;
      }
    }
  }

  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    std::vector<int> owner(b.lambda[v].size(), -1);
    for (EdgeIndex e : g.in_edges(v)) {
      for (const auto& t : b.pi[e]) {
        if (!t) continue;
        if (owner[*t] >= 0 && owner[*t] != static_cast<int>(e)) {
          report.add("disjoint-ranges", "ranges of edges '" + g.edge(owner[*t]).id + "' and '" +
                                            g.edge(e).id + "' meet at index '" +
                                            b.lambda[v][*t] + "' of vertex '" +
                                            g.vertex_id(v) + "'");
          ok = false;
        }
        owner[*t] = static_cast<int>(e);
      }
    }
  }

  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    for (std::size_t i = 0; i < b.pi[e].size(); ++i) {
      if (!b.pi[e][i]) {
        report.add("not-total", "pi for edge '" + g.edge(e).id + "' is undefined at '" +
                                    b.lambda[g.src(e)][i] + "'");
        break;
      }
    }
  }

  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    for (std::size_t i = 0; i < b.pi[e].size(); ++i) {
      if (phase_seen[e][i] && !b.pi[e][i]) {
        report.add("phase-without-pi", "phase for edge '" + g.edge(e).id + "' at '" +
                                           b.lambda[g.src(e)][i] + "' where pi is undefined");
        ok = false;
      }
    }
  }

  if (!ok) return std::nullopt;
  return b;
}

}  // namespace

AtomicValidation validate_atomic(const AtomicData& data) {
  AtomicValidation out;
  auto b = build(data, out.report);
  if (!b) return out;
  out.structural = true;
  out.total = !out.report.has("not-total");
  const Graph& g = b->graph;
  out.cuntz_krieger = true;
  out.fully_coisometric = true;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    std::vector<bool> covered(b->lambda[v].size(), false);
    for (EdgeIndex e : g.in_edges(v)) {
      for (const auto& t : b->pi[e]) {
        if (t) covered[*t] = true;
      }
    }
    bool all = std::all_of(covered.begin(), covered.end(), [](bool c) { return c; });
    if (!all) {
      out.fully_coisometric = false;
      if (!g.in_edges(v).empty()) out.cuntz_krieger = false;
    }
  }
  return out;
}

ExplicitAtomic ExplicitAtomic::from_data(const AtomicData& data, bool allow_partial) {
  ValidationReport report;
  auto b = build(data, report);
  if (!b) {
    if (!report.valid() && !validate_graph(data.graph).valid()) {
      throw Error("InvalidGraph", "graph of the atomic presentation is invalid", report.findings);
    }
    throw Error("InvalidAtomic", "presentation violates the atomic axioms", report.findings);
  }
  if (!allow_partial && !report.valid()) {
    throw Error("NonTotalPresentation", "some pi_e is not defined on its whole source set",
                report.findings);
  }
  ExplicitAtomic a;
  a.graph_ = std::move(b->graph);
  a.lambda_ = std::move(b->lambda);
  a.pi_ = std::move(b->pi);
  a.phase_ = std::move(b->phase);
  a.offset_.resize(a.graph_.vertex_count());
  for (VertexIndex v = 0; v < a.graph_.vertex_count(); ++v) {
    a.offset_[v] = a.node_vertex_.size();
    a.node_vertex_.insert(a.node_vertex_.end(), a.lambda_[v].size(), v);
  }
  return a;
}

AtomicData ExplicitAtomic::to_data() const {
  AtomicData d;
  d.graph = graph_.to_data();
  for (VertexIndex v = 0; v < graph_.vertex_count(); ++v) {
    d.lambda[graph_.vertex_id(v)] = lambda_[v];
  }
  for (EdgeIndex e = 0; e < graph_.edge_count(); ++e) {
    const auto& id = graph_.edge(e).id;
    for (std::size_t i = 0; i < pi_[e].size(); ++i) {
      if (!pi_[e][i]) continue;
      const auto& from = lambda_[graph_.src(e)][i];
      d.pi.push_back({id, from, lambda_[graph_.dst(e)][*pi_[e][i]]});
      if (!phase_[e][i].identical(Phase())) d.phase.push_back({id, from, phase_[e][i]});
    }
  }
  return d;
}

bool ExplicitAtomic::total() const {
  for (const auto& row : pi_) {
    for (const auto& t : row) {
      if (!t) return false;
    }
  }
  return true;
}

ExplicitAtomic gauge_transform(const ExplicitAtomic& a, const std::vector<Phase>& z) {
  if (z.size() != a.node_count()) {
    throw Error("InvalidArgument", "gauge needs one scalar per basis vector");
  }
  AtomicData d = a.to_data();
  d.phase.clear();
  const Graph& g = a.graph();
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    for (std::size_t i = 0; i < a.indices(g.src(e)).size(); ++i) {
      auto t = a.target(e, i);
      if (!t) continue;
      Phase p = a.phase(e, i) * z[a.node(g.src(e), i)] * z[a.node(g.dst(e), *t)].conj();
      d.phase.push_back({g.edge(e).id, a.indices(g.src(e))[i], p});
    }
  }
  return ExplicitAtomic::from_data(d, true);
}

ExplicitAtomic relabel_indices(const ExplicitAtomic& a,
                               const std::vector<std::vector<std::size_t>>& perm,
                               const std::string& prefix) {
  const Graph& g = a.graph();
  if (perm.size() != g.vertex_count()) {
    throw Error("InvalidArgument", "relabeling needs one permutation per vertex");
  }
  std::vector<std::unordered_map<std::string, std::string>> rename(g.vertex_count());
  AtomicData d = a.to_data();
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    const auto& old = a.indices(v);
    if (perm[v].size() != old.size()) {
      throw Error("InvalidArgument", "permutation size mismatch at a vertex");
    }
    std::vector<std::string> fresh(old.size());
    for (std::size_t i = 0; i < old.size(); ++i) {
      std::string label = prefix + std::to_string(perm[v][i]);
      fresh.at(perm[v][i]) = label;
      rename[v][old[i]] = label;
    }
    d.lambda[g.vertex_id(v)] = fresh;
  }
  for (auto& p : d.pi) {
    EdgeIndex e = g.edge_index(p.edge);
    p.from = rename[g.src(e)].at(p.from);
    p.to = rename[g.dst(e)].at(p.to);
  }
  for (auto& p : d.phase) {
    p.from = rename[g.src(g.edge_index(p.edge))].at(p.from);
  }
  return ExplicitAtomic::from_data(d, true);
}

namespace {

void append_prefixed(AtomicData& into, const AtomicData& piece, const std::string& prefix) {
  for (const auto& [v, labels] : piece.lambda) {
    auto& dst = into.lambda[v];
    for (const auto& l : labels) dst.push_back(prefix + l);
  }
  for (const auto& p : piece.pi) into.pi.push_back({p.edge, prefix + p.from, prefix + p.to});
  for (const auto& p : piece.phase) into.phase.push_back({p.edge, prefix + p.from, p.phase});
}

}  // namespace

ExplicitAtomic direct_sum(const ExplicitAtomic& a, const ExplicitAtomic& b) {
  if (!(a.graph() == b.graph())) {
    throw Error("GraphMismatch", "direct sum requires families on the same graph");
  }
  AtomicData d;
  d.graph = a.graph().to_data();
  append_prefixed(d, a.to_data(), "a:");
  append_prefixed(d, b.to_data(), "b:");
  return ExplicitAtomic::from_data(d, true);
}

// ---------------------------------------------------------------------------
// H

LabeledGraphH build_H(const ExplicitAtomic& a) {
  const Graph& g = a.graph();
  const std::size_t n = a.node_count();
  LabeledGraphH h;
  h.out.resize(n);
  h.in.assign(n, std::nullopt);
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    VertexIndex s = g.src(e);
    for (std::size_t i = 0; i < a.indices(s).size(); ++i) {
      auto t = a.target(e, i);
      if (!t) continue;
      NodeIndex from = a.node(s, i);
      NodeIndex to = a.node(g.dst(e), *t);
      if (h.in[to]) {
        throw Error("InvariantViolated", "node '" + a.node_label(to) + "' has in-degree 2");
      }
      h.in[to] = h.arcs.size();
      h.out[from].push_back(h.arcs.size());
      h.arcs.push_back({e, from, to, a.phase(e, i)});
    }
  }

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& arc : h.arcs) {
    std::size_t x = find(arc.from), y = find(arc.to);
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  }
  h.component_of.assign(n, 0);
  std::unordered_map<std::size_t, std::size_t> index;
  for (NodeIndex x = 0; x < n; ++x) {
    std::size_t r = find(x);
    auto [it, fresh] = index.try_emplace(r, h.components.size());
    if (fresh) h.components.emplace_back();
    h.components[it->second].push_back(x);
    h.component_of[x] = it->second;
  }

  // In-degree <= 1 makes every backward walk deterministic; count the cycles
  // it closes per component.
  std::vector<int> state(n, 0);
  std::vector<std::size_t> cycles(h.components.size(), 0);
  for (NodeIndex start = 0; start < n; ++start) {
    if (state[start]) continue;
    std::vector<NodeIndex> walk;
    NodeIndex x = start;
    while (true) {
      if (state[x] == 1) {
        ++cycles[h.component_of[x]];
        break;
      }
      if (state[x] == 2) break;
      state[x] = 1;
      walk.push_back(x);
      if (!h.in[x]) break;
      x = h.arcs[*h.in[x]].from;
    }
    for (NodeIndex y : walk) state[y] = 2;
  }
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    if (cycles[c] > 1) {
      throw Error("InvariantViolated", "a component of H contains more than one cycle");
    }
  }
  return h;
}

std::string to_dot(const LabeledGraphH& h, const ExplicitAtomic& a) {
  const Graph& g = a.graph();
  std::ostringstream out;
  out << "digraph H {\n";
  for (NodeIndex x = 0; x < a.node_count(); ++x) {
    out << "  n" << x << " [label=\"" << g.vertex_id(a.node_vertex(x)) << ":"
        << a.node_label(x) << "\"];\n";
  }
  for (const auto& arc : h.arcs) {
    out << "  n" << arc.from << " -> n" << arc.to << " [label=\"" << g.edge(arc.edge).id;
    if (!arc.phase.identical(Phase())) out << " " << arc.phase.to_string();
    out << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

TraceResult trace_backward(const LabeledGraphH& h, NodeIndex start) {
  std::vector<NodeIndex> seq{start};
  std::vector<std::size_t> in_arcs;  // in_arcs[i] enters seq[i]
  std::unordered_map<NodeIndex, std::size_t> seen{{start, 0}};
  while (true) {
    NodeIndex x = seq.back();
    if (!h.in[x]) {
      RootFound r{x, {}};
      r.arcs.assign(in_arcs.rbegin(), in_arcs.rend());
      return r;
    }
    std::size_t arc = *h.in[x];
    in_arcs.push_back(arc);
    NodeIndex p = h.arcs[arc].from;
    auto it = seen.find(p);
    if (it != seen.end()) {
      // seq[t..] closes the cycle; walking seq backwards from the end is forward order.
      std::size_t t = it->second;
      CycleFound c;
      c.entry_offset = t;
      c.cycle.push_back(seq[t]);
      for (std::size_t j = seq.size() - 1; j > t; --j) c.cycle.push_back(seq[j]);
      for (std::size_t j = 1; j < c.cycle.size(); ++j) c.arcs.push_back(*h.in[c.cycle[j]]);
      c.arcs.push_back(*h.in[c.cycle[0]]);
      return c;
    }
    seen.emplace(p, seq.size());
    seq.push_back(p);
  }
}

// ---------------------------------------------------------------------------
// Canonical families

namespace {

const Path& require_cycle(const Path& w, const char* what) {
  if (!w.is_cycle()) throw Error("NotACycle", std::string(what) + " needs a cycle");
  return w;
}

void materialize_into(AtomicData& d, const Graph& g, const CanonicalAtomic& f,
                      std::size_t depth, const std::string& prefix) {
  struct Visitor {
    AtomicData& d;
    const Graph& g;
    std::size_t depth;
    const std::string& prefix;

    void tree(const std::string& tag, const std::optional<std::pair<EdgeIndex, std::string>>& entry,
              VertexIndex root_vertex, std::size_t root_depth) const {
      // Nodes are paths nu from root_vertex; the node label records nu and the entry.
      if (depth < root_depth) return;
      std::vector<Path> paths = enumerate_paths(g, {root_vertex}, depth - root_depth);
      auto label = [&](const Path& nu) {
        std::string s = prefix + tag;
        if (!nu.is_vertex()) s += nu.to_string(g);
        if (entry) s += (nu.is_vertex() ? "" : " ") + g.edge(entry->first).id;
        if (!entry && nu.is_vertex()) s += g.vertex_id(root_vertex);
        return s;
      };
      for (const Path& nu : paths) d.lambda[g.vertex_id(nu.range())].push_back(label(nu));
      if (entry) {
        d.pi.push_back({g.edge(entry->first).id, entry->second, label(Path(root_vertex))});
      }
      for (const Path& nu : paths) {
        if (nu.length() + root_depth >= depth) continue;
        for (EdgeIndex e : g.out_edges(nu.range())) {
          Path next = *compose(Path::single(g, e), nu);
          d.pi.push_back({g.edge(e).id, label(nu), label(next)});
        }
      }
    }

    void operator()(const LeftRegular& lr) const { tree("", std::nullopt, lr.vertex, 0); }

    void operator()(const CycleType& c) const {
      const Path& w = require_cycle(c.cycle, "cycle type");
      auto t = w.traversal();
      const std::size_t k = t.size();
      auto node = [&](std::size_t j) { return prefix + "c" + std::to_string(j + 1); };
      for (std::size_t j = 0; j < k; ++j) d.lambda[g.vertex_id(g.src(t[j]))].push_back(node(j));
      for (std::size_t j = 0; j < k; ++j) {
        d.pi.push_back({g.edge(t[j]).id, node(j), node((j + 1) % k)});
        if (j + 1 == k && !c.phase.identical(Phase())) {
          d.phase.push_back({g.edge(t[j]).id, node(j), c.phase});
        }
        for (EdgeIndex f : g.out_edges(g.src(t[j]))) {
          if (f == t[j]) continue;
          tree("c" + std::to_string(j + 1) + ":", std::make_pair(f, node(j)), g.dst(f), 1);
        }
      }
    }

    void operator()(const Tail&) const {
      throw Error("Unrepresentable", "tail families have no finite presentation");
    }

    void operator()(const DirectSum& s) const {
      for (std::size_t i = 0; i < s.summands.size(); ++i) {
        const auto& m = s.summands[i].multiplicity;
        if (m.infinite) {
          throw Error("Unrepresentable", "infinite multiplicity cannot be materialized");
        }
        for (std::uint64_t c = 0; c < m.count; ++c) {
          materialize_into(d, g, s.summands[i].family, depth,
                           prefix + "s" + std::to_string(i) + "." + std::to_string(c) + ":");
        }
      }
    }
  };
  std::visit(Visitor{d, g, depth, prefix}, f.kind);
}

}  // namespace

ExplicitAtomic materialize(const CanonicalFamily& f, std::size_t depth) {
  AtomicData d;
  d.graph = f.graph.to_data();
  materialize_into(d, f.graph, f.family, depth, "");
  return ExplicitAtomic::from_data(d, true);
}

// ---------------------------------------------------------------------------
// Atoms

namespace {

int atom_rank(const Atom& a) { return static_cast<int>(a.index()); }

}  // namespace

bool atoms_equal(const Atom& a, const Atom& b) {
  if (a.index() != b.index()) return false;
  if (auto* x = std::get_if<LeftRegularAtom>(&a)) {
    return x->vertex == std::get<LeftRegularAtom>(b).vertex;
  }
  if (auto* x = std::get_if<CycleAtom>(&a)) {
    const auto& y = std::get<CycleAtom>(b);
    return x->cycle == y.cycle && x->phase.equals(y.phase);
  }
  return std::get<TailAtom>(a).cycle == std::get<TailAtom>(b).cycle;
}

bool atom_less(const Atom& a, const Atom& b) {
  if (a.index() != b.index()) return atom_rank(a) < atom_rank(b);
  if (auto* x = std::get_if<LeftRegularAtom>(&a)) {
    return x->vertex < std::get<LeftRegularAtom>(b).vertex;
  }
  if (auto* x = std::get_if<CycleAtom>(&a)) {
    const auto& y = std::get<CycleAtom>(b);
    if (x->cycle != y.cycle) return x->cycle < y.cycle;
    return x->phase.less(y.phase);
  }
  return std::get<TailAtom>(a).cycle < std::get<TailAtom>(b).cycle;
}

void AtomDecomposition::add(const Atom& atom, Multiplicity m) {
  if (m.is_zero()) return;
  for (auto& entry : atoms) {
    if (atoms_equal(entry.atom, atom)) {
      entry.multiplicity = entry.multiplicity + m;
      return;
    }
  }
  auto pos = std::find_if(atoms.begin(), atoms.end(),
                          [&](const AtomEntry& e) { return atom_less(atom, e.atom); });
  atoms.insert(pos, {atom, m});
}

void AtomDecomposition::merge(const AtomDecomposition& other, Multiplicity times) {
  if (times.is_zero()) return;
  for (const auto& entry : other.atoms) add(entry.atom, entry.multiplicity * times);
  for (const auto& note : other.notes) {
    if (std::find(notes.begin(), notes.end(), note) == notes.end()) notes.push_back(note);
  }
}

std::vector<CycleAtom> decompose_cycle(const Graph& g, const Path& w, const Phase& lambda) {
  require_cycle(w, "decompose_cycle");
  PrimitiveRoot pr = primitive_root(g, w);
  Path u = cyclic_canonical_form(g, pr.root);
  std::vector<CycleAtom> out;
  for (const Phase& theta : lambda.roots(static_cast<std::int64_t>(pr.exponent))) {
    out.push_back({u, theta});
  }
  return out;
}

namespace {

std::string tail_note(const Graph& g, const Path& u) {
  return "tail (" + u.to_string(g) +
         ")^infinity is the direct integral over the circle of the cycle families of (" +
         u.to_string(g) + ", lambda); kept as one tail atom";
}

bool reaches_cycle(const Graph& g, VertexIndex v) {
  Graph sub = induced_subgraph(g, {v});
  return !is_acyclic(sub);
}

void classify_into(AtomDecomposition& out, const Graph& g, const CanonicalAtomic& f,
                   Multiplicity times) {
  struct Visitor {
    AtomDecomposition& out;
    const Graph& g;
    Multiplicity times;

    void operator()(const LeftRegular& lr) const {
      if (lr.vertex >= g.vertex_count()) throw Error("UnknownVertex", "left-regular vertex");
      out.add(LeftRegularAtom{lr.vertex}, times);
    }
    void operator()(const CycleType& c) const {
      for (const auto& atom : decompose_cycle(g, c.cycle, c.phase)) out.add(atom, times);
    }
    void operator()(const Tail& t) const {
      require_cycle(t.cycle, "tail");
      Path u = cyclic_canonical_form(g, primitive_root(g, t.cycle).root);
      out.add(TailAtom{u}, times);
      std::string note = tail_note(g, u);
      if (std::find(out.notes.begin(), out.notes.end(), note) == out.notes.end()) {
        out.notes.push_back(note);
      }
    }
    void operator()(const DirectSum& s) const {
      for (const auto& summand : s.summands) {
        classify_into(out, g, summand.family, times * summand.multiplicity);
      }
    }
  };
  std::visit(Visitor{out, g, times}, f.kind);
}

}  // namespace

AtomDecomposition classify(const ExplicitAtomic& a) {
  if (!a.total()) {
    throw Error("NonTotalPresentation", "explicit families must define every pi_e everywhere");
  }
  const Graph& g = a.graph();
  LabeledGraphH h = build_H(a);
  AtomDecomposition out;
  for (const auto& comp : h.components) {
    TraceResult tr = trace_backward(h, comp.front());
    if (auto* root = std::get_if<RootFound>(&tr)) {
      VertexIndex v = a.node_vertex(root->root);
      if (reaches_cycle(g, v)) {
        throw Error("UnboundedLeftRegularComponent",
                    "root at vertex '" + g.vertex_id(v) +
                        "' generates an infinite path space; use a canonical family");
      }
      std::size_t paths = enumerate_paths(g, {v}, g.vertex_count()).size();
      if (paths != comp.size()) {
        throw Error("InvariantViolated", "left-regular component size does not match its path space");
      }
      out.add(LeftRegularAtom{v}, {1, false});
      continue;
    }
    const auto& cyc = std::get<CycleFound>(tr);
    std::vector<EdgeIndex> traversal;
    Phase lambda;
    for (std::size_t arc : cyc.arcs) {
      traversal.push_back(h.arcs[arc].edge);
      lambda *= h.arcs[arc].phase;
    }
    Path w = Path::from_traversal(g, traversal);
    for (const auto& atom : decompose_cycle(g, w, lambda)) out.add(atom, {1, false});
  }
  return out;
}

AtomDecomposition classify(const CanonicalFamily& f) {
  AtomDecomposition out;
  classify_into(out, f.graph, f.family, {1, false});
  return out;
}

AtomDecomposition classify(const AtomicInput& input) {
  return std::visit([](const auto& x) { return classify(x); }, input);
}

namespace {

const Graph& input_graph(const AtomicInput& x) {
  if (auto* e = std::get_if<ExplicitAtomic>(&x)) return e->graph();
  return std::get<CanonicalFamily>(x).graph;
}

}  // namespace

EquivalenceResult compare_decompositions(const Graph& g, const AtomDecomposition& a,
                                         const AtomDecomposition& b) {
  auto mult = [](const AtomDecomposition& d, const Atom& atom) {
    for (const auto& e : d.atoms) {
      if (atoms_equal(e.atom, atom)) return e.multiplicity;
    }
    return Multiplicity{};
  };
  auto differ = [&](const Atom& atom) { return !(mult(a, atom) == mult(b, atom)); };

  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (differ(LeftRegularAtom{v})) {
      return {false, "left-regular multiplicity mismatch at vertex " + g.vertex_id(v)};
    }
  }
  // Cycles: compare the phase-blind cycle multisets first.
  auto cycle_counts = [](const AtomDecomposition& d) {
    std::map<Path, Multiplicity> m;
    for (const auto& e : d.atoms) {
      if (auto* c = std::get_if<CycleAtom>(&e.atom)) m[c->cycle] = m[c->cycle] + e.multiplicity;
    }
    return m;
  };
  bool cycles_differ = false;
  for (const AtomDecomposition* d : {&a, &b}) {
    for (const auto& e : d->atoms) {
      if (std::holds_alternative<CycleAtom>(e.atom) && differ(e.atom)) cycles_differ = true;
    }
  }
  if (cycles_differ) {
    if (cycle_counts(a) == cycle_counts(b)) return {false, "cycle phase mismatch"};
    return {false, "cycle mismatch"};
  }
  for (const AtomDecomposition* d : {&a, &b}) {
    for (const auto& e : d->atoms) {
      if (std::holds_alternative<TailAtom>(e.atom) && differ(e.atom)) {
        return {false, "tail mismatch"};
      }
    }
  }
  return {true, "atom multisets agree"};
}

EquivalenceResult are_unitarily_equivalent(const AtomicInput& a, const AtomicInput& b) {
  const Graph& g = input_graph(a);
  if (!(g == input_graph(b))) return {false, "graphs differ"};
  return compare_decompositions(g, classify(a), classify(b));
}

// ---------------------------------------------------------------------------
// Wold data

WoldReport wold_atomic(const ExplicitAtomic& a) {
  const Graph& g = a.graph();
  LabeledGraphH h = build_H(a);
  WoldReport r;
  r.alpha.assign(g.vertex_count(), {});
  r.attached.assign(g.vertex_count(), {});
  std::vector<bool> on_cycle(a.node_count(), false);
  for (const auto& comp : h.components) {
    TraceResult tr = trace_backward(h, comp.front());
    if (auto* c = std::get_if<CycleFound>(&tr)) {
      for (NodeIndex x : c->cycle) on_cycle[x] = true;
    }
  }
  SourceElimination se = source_elimination(g);
  for (NodeIndex x = 0; x < a.node_count(); ++x) {
    VertexIndex v = a.node_vertex(x);
    if (!h.in[x]) {
      r.alpha[v] = r.alpha[v] + Multiplicity{1, false};
      continue;
    }
    if (!on_cycle[x] && on_cycle[h.arcs[*h.in[x]].from]) {
      r.attached[v] = r.attached[v] + Multiplicity{1, false};
    }
  }
  for (NodeIndex x = 0; x < a.node_count(); ++x) {
    if (std::holds_alternative<CycleFound>(trace_backward(h, x))) {
      r.remainder.push_back(x);
      if (!se.remaining.count(a.node_vertex(x))) r.supported_on_g0 = false;
    }
  }
  return r;
}

namespace {

void wold_into(WoldReport& r, const Graph& g, const CanonicalAtomic& f, Multiplicity times) {
  struct Visitor {
    WoldReport& r;
    const Graph& g;
    Multiplicity times;

    void operator()(const LeftRegular& lr) const {
      r.alpha[lr.vertex] = r.alpha[lr.vertex] + times;
    }
    void operator()(const CycleType& c) const {
      auto m = cycle_structure_multiplicities(g, c.cycle);
      for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
        r.attached[v] = r.attached[v] + Multiplicity{m[v], false} * times;
      }
    }
    void operator()(const Tail& t) const {
      require_cycle(t.cycle, "tail");
      auto m = cycle_structure_multiplicities(g, t.cycle);
      for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
        if (m[v]) r.attached[v] = r.attached[v] + Multiplicity::omega() * times;
      }
    }
    void operator()(const DirectSum& s) const {
      for (const auto& summand : s.summands) {
        wold_into(r, g, summand.family, times * summand.multiplicity);
      }
    }
  };
  std::visit(Visitor{r, g, times}, f.kind);
}

}  // namespace

WoldReport wold_atomic(const CanonicalFamily& f) {
  WoldReport r;
  r.alpha.assign(f.graph.vertex_count(), {});
  r.attached.assign(f.graph.vertex_count(), {});
  wold_into(r, f.graph, f.family, {1, false});
  return r;
}

std::vector<std::size_t> cycle_structure_multiplicities(const Graph& g, const Path& w) {
  require_cycle(w, "cycle_structure_multiplicities");
  std::vector<std::size_t> alpha(g.vertex_count(), 0);
  for (EdgeIndex ej : w.edges()) {
    for (EdgeIndex f : g.out_edges(g.src(ej))) {
      if (f != ej) ++alpha[g.dst(f)];
    }
  }
  return alpha;
}

std::vector<long long> finitely_correlated_multiplicities(const Graph& g,
                                                          const std::vector<long long>& rank) {
  if (rank.size() != g.vertex_count()) {
    throw Error("InvalidArgument", "rank vector must have one entry per vertex");
  }
  std::vector<long long> alpha(g.vertex_count(), 0);
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    alpha[v] = -rank[v];
    for (EdgeIndex e : g.in_edges(v)) alpha[v] += rank[g.src(e)];
  }
  return alpha;
}

// ---------------------------------------------------------------------------
// Condition (M)

const char* to_string(ConditionM m) {
  switch (m) {
    case ConditionM::NotUnitary: return "NotUnitary";
    case ConditionM::Singular: return "Singular";
    case ConditionM::DominatesLebesgue: return "DominatesLebesgue";
  }
  return "?";
}

ConditionMReport orbit_condition_M(const ExplicitAtomic& a, const Path& mu) {
  require_cycle(mu, "condition (M)");
  const Graph& g = a.graph();
  const VertexIndex v = mu.source();
  const std::size_t n = a.indices(v).size();
  ConditionMReport r;
  std::vector<std::size_t> image(n);
  std::vector<bool> hit(n, false);
  auto t = mu.traversal();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t cur = i;
    for (EdgeIndex e : t) {
      auto next = a.target(e, cur);
      if (!next) {
        r.verdict = ConditionM::NotUnitary;
        r.detail = "pi_mu is undefined at index " + a.indices(v)[i];
        return r;
      }
      cur = *next;
    }
    image[i] = cur;
    hit[cur] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!hit[i]) {
      r.verdict = ConditionM::NotUnitary;
      r.detail = "index " + a.indices(v)[i] + " has no pi_mu preimage";
      return r;
    }
  }
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t x = i; !seen[x]; x = image[x]) {
      seen[x] = true;
      ++len;
    }
    r.orbit_sizes.push_back(len);
  }
  std::sort(r.orbit_sizes.begin(), r.orbit_sizes.end());
  r.verdict = ConditionM::Singular;
  r.detail = "pi_mu permutes the basis at " + g.vertex_id(v) + " with finite orbits";
  return r;
}

namespace {

// S_mu on the range of S_v is unitary iff every basis vector there reads mu
// along its (unique) backward trace. For cycle and tail families the basis
// is a periodic core (`line`, traversed in order, read modulo its length)
// with full path-space trees hanging off every non-core out-edge, which makes
// the check a finite one.
struct PeriodicCheck {
  bool unitary = true;
  bool core_at_v = false;
  bool tree_at_v = false;
  std::string detail;
};

PeriodicCheck check_periodic(const Graph& g, const std::vector<EdgeIndex>& line, const Path& mu) {
  PeriodicCheck out;
  const VertexIndex v = mu.source();
  const auto& want = mu.edges();  // written order: want[0] is read first backwards
  const std::size_t m = want.size();
  const std::size_t k = line.size();
  auto line_back = [&](std::size_t p, std::size_t step) {
    // step-th edge read backwards from core position p (step >= 0)
    return line[(p + k - 1 - step % k) % k];
  };
  auto fail = [&](std::string why) {
    if (out.unitary) out.detail = std::move(why);
    out.unitary = false;
  };

  for (std::size_t p = 0; p < k; ++p) {
    if (g.src(line[p]) != v) continue;
    out.core_at_v = true;
    for (std::size_t s = 0; s < m; ++s) {
      if (line_back(p, s) != want[s]) {
        fail("a core basis vector at " + g.vertex_id(v) + " is not in the range of S_mu");
        break;
      }
    }
  }

  for (std::size_t p = 0; p < k; ++p) {
    for (EdgeIndex f : g.out_edges(g.src(line[p]))) {
      if (f == line[p]) continue;
      VertexSet reach = directed_closure(g, {g.dst(f)});
      if (!reach.count(v)) continue;
      out.tree_at_v = true;
      std::vector<Path> shallow = enumerate_paths(g, {g.dst(f)}, m == 0 ? 0 : m - 1);
      for (const Path& nu : shallow) {
        if (nu.range() != v) continue;
        std::vector<EdgeIndex> reading = nu.edges();
        reading.push_back(f);
        for (std::size_t s = 0; reading.size() < m; ++s) reading.push_back(line_back(p, s));
        reading.resize(m);
        if (reading != want) {
          fail("a tree basis vector at " + g.vertex_id(v) + " is not in the range of S_mu");
        }
      }
      for (VertexIndex x : reach) {
        for (const Path& eta : enumerate_paths(g, {x}, m)) {
          if (eta.length() == m && eta.range() == v && eta.edges() != want) {
            fail("deep tree basis vectors at " + g.vertex_id(v) + " read another path");
          }
        }
      }
    }
  }
  return out;
}

ConditionMReport condition_into(const Graph& g, const CanonicalAtomic& f, const Path& mu) {
  struct Visitor {
    const Graph& g;
    const Path& mu;

    ConditionMReport operator()(const LeftRegular& lr) const {
      ConditionMReport r;
      if (directed_closure(g, {lr.vertex}).count(mu.source())) {
        r.verdict = ConditionM::NotUnitary;
        r.detail = "left-regular basis vectors of least length at " +
                   g.vertex_id(mu.source()) + " are not in the range of S_mu";
      } else {
        r.verdict = ConditionM::Singular;
        r.detail = "vacuous: the range of S_v is zero";
      }
      return r;
    }
    ConditionMReport operator()(const CycleType& c) const {
      require_cycle(c.cycle, "cycle type");
      auto line = c.cycle.traversal();
      PeriodicCheck pc = check_periodic(g, line, mu);
      ConditionMReport r;
      if (!pc.unitary) {
        r.verdict = ConditionM::NotUnitary;
        r.detail = pc.detail;
        return r;
      }
      const std::size_t k = line.size(), m = mu.length();
      std::vector<bool> seen(k, false);
      for (std::size_t p = 0; p < k; ++p) {
        if (seen[p] || g.src(line[p]) != mu.source()) continue;
        std::size_t len = 0;
        for (std::size_t x = p; !seen[x]; x = (x + m) % k) {
          seen[x] = true;
          ++len;
        }
        r.orbit_sizes.push_back(len);
      }
      std::sort(r.orbit_sizes.begin(), r.orbit_sizes.end());
      if (pc.tree_at_v) {
        r.verdict = ConditionM::DominatesLebesgue;
        r.detail = "tree basis vectors form infinite pi_mu orbits";
      } else {
        r.verdict = ConditionM::Singular;
        r.detail = "pi_mu permutes the cycle vectors with finite orbits";
      }
      return r;
    }
    ConditionMReport operator()(const Tail& t) const {
      require_cycle(t.cycle, "tail");
      PeriodicCheck pc = check_periodic(g, t.cycle.traversal(), mu);
      ConditionMReport r;
      if (!pc.unitary) {
        r.verdict = ConditionM::NotUnitary;
        r.detail = pc.detail;
      } else if (pc.core_at_v || pc.tree_at_v) {
        r.verdict = ConditionM::DominatesLebesgue;
        r.detail = "S_mu acts as a bilateral shift along the periodic tail";
      } else {
        r.verdict = ConditionM::Singular;
        r.detail = "vacuous: the range of S_v is zero";
      }
      return r;
    }
    ConditionMReport operator()(const DirectSum& s) const {
      ConditionMReport r;
      r.verdict = ConditionM::Singular;
      r.detail = "all summands singular";
      for (const auto& summand : s.summands) {
        if (summand.multiplicity.is_zero()) continue;
        ConditionMReport part = condition_into(g, summand.family, mu);
        if (part.verdict == ConditionM::NotUnitary) return part;
        if (part.verdict == ConditionM::DominatesLebesgue &&
            r.verdict != ConditionM::DominatesLebesgue) {
          r.verdict = ConditionM::DominatesLebesgue;
          r.detail = part.detail;
        }
        std::uint64_t copies = summand.multiplicity.infinite ? 1 : summand.multiplicity.count;
        for (std::uint64_t c = 0; c < copies; ++c) {
          r.orbit_sizes.insert(r.orbit_sizes.end(), part.orbit_sizes.begin(),
                               part.orbit_sizes.end());
        }
      }
      std::sort(r.orbit_sizes.begin(), r.orbit_sizes.end());
      return r;
    }
  };
  return std::visit(Visitor{g, mu}, f.kind);
}

}  // namespace

ConditionMReport orbit_condition_M(const CanonicalFamily& f, const Path& mu) {
  require_cycle(mu, "condition (M)");
  return condition_into(f.graph, f.family, mu);
}

}  // namespace sgk
