#pragma once

// Finite directed multigraphs G = (V, E, src, dst) and the graph-level
// procedures built on them: directed closures, transitivity, periods and
// source elimination.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sgk/error.hpp"

namespace sgk {

using VertexIndex = std::size_t;
using EdgeIndex = std::size_t;
using VertexSet = std::set<VertexIndex>;

// Unvalidated graph description, as read from a file.
struct GraphData {
  struct EdgeData {
    std::string id;
    std::string src;
    std::string dst;
  };
  std::vector<std::string> vertices;
  std::vector<EdgeData> edges;
};

// Reports duplicate ids and dangling endpoints.
ValidationReport validate_graph(const GraphData& data);

struct Edge {
  std::string id;
  VertexIndex src;
  VertexIndex dst;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// An immutable, validated finite multigraph. Vertices and edges are stored in
// lexicographic order of their ids, so index order is id order and all
// tie-breaking on indices is deterministic.
class Graph {
 public:
  Graph() = default;

  // Throws Error("InvalidGraph") carrying the validation findings.
  static Graph from_data(const GraphData& data);
  GraphData to_data() const;

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::string& vertex_id(VertexIndex v) const { return vertices_[v]; }
  const Edge& edge(EdgeIndex e) const { return edges_[e]; }
  const std::vector<std::string>& vertex_ids() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  VertexIndex src(EdgeIndex e) const { return edges_[e].src; }
  VertexIndex dst(EdgeIndex e) const { return edges_[e].dst; }

  // Edges leaving / entering v, in edge-index order.
  const std::vector<EdgeIndex>& out_edges(VertexIndex v) const { return out_[v]; }
  const std::vector<EdgeIndex>& in_edges(VertexIndex v) const { return in_[v]; }

  std::optional<VertexIndex> find_vertex(std::string_view id) const;
  std::optional<EdgeIndex> find_edge(std::string_view id) const;
  // Throwing lookups (Error "UnknownVertex" / "UnknownEdge").
  VertexIndex vertex(std::string_view id) const;
  EdgeIndex edge_index(std::string_view id) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeIndex>> out_;
  std::vector<std::vector<EdgeIndex>> in_;
  std::unordered_map<std::string, VertexIndex> vertex_lookup_;
  std::unordered_map<std::string, EdgeIndex> edge_lookup_;
};

// Strongly connected components in a deterministic order: each component is
// sorted, components are sorted by their least vertex.
std::vector<std::vector<VertexIndex>> strongly_connected_components(const Graph& g);

// True iff every ordered pair (v, w) is joined by a path, using the length-0
// path when v == w.
bool is_transitive(const Graph& g);

// gcd of the cycle lengths in the strongly connected component of v, or
// nullopt when v lies on no cycle.
std::optional<std::size_t> period(const Graph& g, VertexIndex v);

// Common in-degree d of all vertices, or nullopt if in-degrees differ or are 0.
std::optional<std::size_t> in_degree_regular(const Graph& g);

// Transitive and period 1.
bool is_aperiodic(const Graph& g);

bool is_acyclic(const Graph& g);

// Smallest superset of f closed under following edges forward.
VertexSet directed_closure(const Graph& g, const VertexSet& f);

// Graph on directed_closure(f) with every edge whose src lies in the closure.
Graph induced_subgraph(const Graph& g, const VertexSet& f);

// Subgraph on an arbitrary vertex subset (edges with both ends inside).
Graph restrict_to(const Graph& g, const VertexSet& vertices);

struct SourceElimination {
  Graph g0;                             // sourceless remainder
  std::vector<VertexSet> layers;        // sources removed in each round (indices into g)
  VertexSet remaining;                  // vertices of g that survive (indices into g)
  bool has_ses = false;                 // g0 is empty
};

SourceElimination source_elimination(const Graph& g);

// Connected components of the underlying undirected graph.
std::vector<std::vector<VertexIndex>> undirected_components(const Graph& g);

// The cycle C_n: vertices v1..vn, edges e_i : v_i -> v_{i+1}, e_n : v_n -> v1.
Graph cycle_graph(std::size_t n);

// Graphviz rendering.
std::string to_dot(const Graph& g);

}  // namespace sgk
