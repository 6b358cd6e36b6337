#include "sgk/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>
#include <unordered_set>

namespace sgk {

ValidationReport validate_graph(const GraphData& data) {
  ValidationReport report;
  std::unordered_set<std::string> vertices;
  for (const auto& v : data.vertices) {
    if (!vertices.insert(v).second) {
      report.add("duplicate-id", "duplicate vertex id '" + v + "'");
    }
  }
  std::unordered_set<std::string> edges;
  for (const auto& e : data.edges) {
    if (!edges.insert(e.id).second) {
      report.add("duplicate-id", "duplicate edge id '" + e.id + "'");
    }
    if (!vertices.count(e.src)) {
      report.add("dangling-endpoint",
                 "edge '" + e.id + "' has unknown src '" + e.src + "'");
    }
    if (!vertices.count(e.dst)) {
      report.add("dangling-endpoint",
                 "edge '" + e.id + "' has unknown dst '" + e.dst + "'");
    }
  }
  return report;
}

Graph Graph::from_data(const GraphData& data) {
  auto report = validate_graph(data);
  if (!report.valid()) {
    throw Error("InvalidGraph", report.findings.front().message, report.findings);
  }
  Graph g;
  g.vertices_ = data.vertices;
  std::sort(g.vertices_.begin(), g.vertices_.end());
  for (VertexIndex v = 0; v < g.vertices_.size(); ++v) {
    g.vertex_lookup_.emplace(g.vertices_[v], v);
  }
  std::vector<const GraphData::EdgeData*> sorted;
  for (const auto& e : data.edges) sorted.push_back(&e);
  std::sort(sorted.begin(), sorted.end(),
            [](auto* a, auto* b) { return a->id < b->id; });
  g.out_.resize(g.vertices_.size());
  g.in_.resize(g.vertices_.size());
  for (const auto* e : sorted) {
    EdgeIndex idx = g.edges_.size();
    Edge edge{e->id, g.vertex_lookup_.at(e->src), g.vertex_lookup_.at(e->dst)};
    g.out_[edge.src].push_back(idx);
    g.in_[edge.dst].push_back(idx);
    g.edge_lookup_.emplace(edge.id, idx);
    g.edges_.push_back(std::move(edge));
  }
  return g;
}

GraphData Graph::to_data() const {
  GraphData data;
  data.vertices = vertices_;
  for (const auto& e : edges_) {
    data.edges.push_back({e.id, vertices_[e.src], vertices_[e.dst]});
  }
  return data;
}

std::optional<VertexIndex> Graph::find_vertex(std::string_view id) const {
  auto it = vertex_lookup_.find(std::string(id));
  if (it == vertex_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeIndex> Graph::find_edge(std::string_view id) const {
  auto it = edge_lookup_.find(std::string(id));
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

VertexIndex Graph::vertex(std::string_view id) const {
  auto v = find_vertex(id);
  if (!v) throw Error("UnknownVertex", "no vertex '" + std::string(id) + "'");
  return *v;
}

EdgeIndex Graph::edge_index(std::string_view id) const {
  auto e = find_edge(id);
  if (!e) throw Error("UnknownEdge", "no edge '" + std::string(id) + "'");
  return *e;
}

namespace {

// Iterative Tarjan.
std::vector<std::size_t> scc_labels(const Graph& g, std::size_t& count) {
  const std::size_t n = g.vertex_count();
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unset), low(n, 0), label(n, unset);
  std::vector<bool> on_stack(n, false);
  std::vector<VertexIndex> stack;
  std::size_t next = 0;
  count = 0;
  struct Frame {
    VertexIndex v;
    std::size_t edge_pos;
  };
  for (VertexIndex root = 0; root < n; ++root) {
    if (index[root] != unset) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = next++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& frame = call.back();
      const auto& out = g.out_edges(frame.v);
      if (frame.edge_pos < out.size()) {
        VertexIndex w = g.dst(out[frame.edge_pos++]);
        if (index[w] == unset) {
          index[w] = low[w] = next++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[frame.v] = std::min(low[frame.v], index[w]);
        }
        continue;
      }
      VertexIndex v = frame.v;
      if (low[v] == index[v]) {
        VertexIndex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          label[w] = count;
        } while (w != v);
        ++count;
      }
      call.pop_back();
      if (!call.empty()) {
        low[call.back().v] = std::min(low[call.back().v], low[v]);
      }
    }
  }
  return label;
}

bool has_cycle_in_component(const Graph& g, const std::vector<VertexIndex>& component) {
  if (component.size() > 1) return true;
  VertexIndex v = component.front();
  for (EdgeIndex e : g.out_edges(v)) {
    if (g.dst(e) == v) return true;
  }
  return false;
}

}  // namespace

std::vector<std::vector<VertexIndex>> strongly_connected_components(const Graph& g) {
  std::size_t count = 0;
  auto label = scc_labels(g, count);
  std::vector<std::vector<VertexIndex>> comps(count);
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) comps[label[v]].push_back(v);
  std::sort(comps.begin(), comps.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return comps;
}

bool is_transitive(const Graph& g) {
  if (g.vertex_count() == 0) return true;
  return strongly_connected_components(g).size() == 1;
}

std::optional<std::size_t> period(const Graph& g, VertexIndex v) {
  std::size_t count = 0;
  auto label = scc_labels(g, count);
  std::vector<VertexIndex> component;
  for (VertexIndex w = 0; w < g.vertex_count(); ++w) {
    if (label[w] == label[v]) component.push_back(w);
  }
  if (!has_cycle_in_component(g, component)) return std::nullopt;

  // BFS distances from v inside the component; every intra-component edge
  // (a -> b) contributes dist(a) + 1 - dist(b) to the gcd.
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(g.vertex_count(), unset);
  std::queue<VertexIndex> queue;
  dist[v] = 0;
  queue.push(v);
  while (!queue.empty()) {
    VertexIndex a = queue.front();
    queue.pop();
    for (EdgeIndex e : g.out_edges(a)) {
      VertexIndex b = g.dst(e);
      if (label[b] != label[v] || dist[b] != unset) continue;
      dist[b] = dist[a] + 1;
      queue.push(b);
    }
  }
  std::size_t result = 0;
  for (VertexIndex a : component) {
    for (EdgeIndex e : g.out_edges(a)) {
      VertexIndex b = g.dst(e);
      if (label[b] != label[v]) continue;
      long long diff = static_cast<long long>(dist[a]) + 1 - static_cast<long long>(dist[b]);
      result = std::gcd(result, static_cast<std::size_t>(diff < 0 ? -diff : diff));
    }
  }
  return result;
}

std::optional<std::size_t> in_degree_regular(const Graph& g) {
  if (g.vertex_count() == 0) return std::nullopt;
  std::size_t d = g.in_edges(0).size();
  if (d == 0) return std::nullopt;
  for (VertexIndex v = 1; v < g.vertex_count(); ++v) {
    if (g.in_edges(v).size() != d) return std::nullopt;
  }
  return d;
}

bool is_aperiodic(const Graph& g) {
  if (g.vertex_count() == 0 || !is_transitive(g)) return false;
  auto p = period(g, 0);
  return p && *p == 1;
}

bool is_acyclic(const Graph& g) {
  std::size_t count = 0;
  auto label = scc_labels(g, count);
  if (count != g.vertex_count()) return false;
  for (const auto& e : g.edges()) {
    if (e.src == e.dst) return false;
  }
  return true;
}

VertexSet directed_closure(const Graph& g, const VertexSet& f) {
  VertexSet closure = f;
  std::vector<VertexIndex> work(f.begin(), f.end());
  while (!work.empty()) {
    VertexIndex v = work.back();
    work.pop_back();
    for (EdgeIndex e : g.out_edges(v)) {
      if (closure.insert(g.dst(e)).second) work.push_back(g.dst(e));
    }
  }
  return closure;
}

Graph restrict_to(const Graph& g, const VertexSet& vertices) {
  GraphData data;
  for (VertexIndex v : vertices) data.vertices.push_back(g.vertex_id(v));
  for (const auto& e : g.edges()) {
    if (vertices.count(e.src) && vertices.count(e.dst)) {
      data.edges.push_back({e.id, g.vertex_id(e.src), g.vertex_id(e.dst)});
    }
  }
  return Graph::from_data(data);
}

Graph induced_subgraph(const Graph& g, const VertexSet& f) {
  return restrict_to(g, directed_closure(g, f));
}

SourceElimination source_elimination(const Graph& g) {
  SourceElimination result;
  std::vector<std::size_t> in_degree(g.vertex_count());
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    in_degree[v] = g.in_edges(v).size();
  }
  std::vector<bool> alive(g.vertex_count(), true);
  VertexSet layer;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (in_degree[v] == 0) layer.insert(v);
  }
  while (!layer.empty()) {
    VertexSet next;
    for (VertexIndex v : layer) alive[v] = false;
    for (VertexIndex v : layer) {
      for (EdgeIndex e : g.out_edges(v)) {
        VertexIndex w = g.dst(e);
        if (alive[w] && --in_degree[w] == 0) next.insert(w);
      }
    }
    result.layers.push_back(std::move(layer));
    layer = std::move(next);
  }
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (alive[v]) result.remaining.insert(v);
  }
  result.g0 = restrict_to(g, result.remaining);
  result.has_ses = result.remaining.empty();
  return result;
}

std::vector<std::vector<VertexIndex>> undirected_components(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges()) {
    auto a = find(e.src), b = find(e.dst);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<VertexIndex>> comps;
  std::vector<std::size_t> slot(n, static_cast<std::size_t>(-1));
  for (VertexIndex v = 0; v < n; ++v) {
    auto root = find(v);
    if (slot[root] == static_cast<std::size_t>(-1)) {
      slot[root] = comps.size();
      comps.emplace_back();
    }
    comps[slot[root]].push_back(v);
  }
  return comps;
}

Graph cycle_graph(std::size_t n) {
  GraphData d;
  for (std::size_t i = 1; i <= n; ++i) d.vertices.push_back("v" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) {
    d.edges.push_back({"e" + std::to_string(i), "v" + std::to_string(i),
                       "v" + std::to_string(i % n + 1)});
  }
  return Graph::from_data(d);
}

std::string to_dot(const Graph& g) {
  std::ostringstream out;
  out << "digraph G {\n";
  for (const auto& v : g.vertex_ids()) out << "  \"" << v << "\";\n";
  for (const auto& e : g.edges()) {
    out << "  \"" << g.vertex_id(e.src) << "\" -> \"" << g.vertex_id(e.dst)
        << "\" [label=\"" << e.id << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace sgk
