#pragma once

// Finite paths in a graph (the free semigroupoid on G) and cycle
// combinatorics: enumeration, irreducible cycles, primitive roots and
// cyclic canonical forms.

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sgk/graph.hpp"

namespace sgk {

// A path mu = e_n ... e_1. Edges are stored in that written order, so
// edges().front() is the last edge traversed and edges().back() the first.
// A length-0 path is a vertex; its source and range coincide.
class Path {
 public:
  Path() = default;
  explicit Path(VertexIndex vertex) : source_(vertex), range_(vertex) {}

  // Throws Error("NotComposable") if consecutive edges do not chain.
  static Path from_edges(const Graph& g, std::vector<EdgeIndex> written_order);
  // Edges listed in traversal order (e_1 first).
  static Path from_traversal(const Graph& g, std::vector<EdgeIndex> traversal);
  static Path single(const Graph& g, EdgeIndex e) { return from_edges(g, {e}); }

  std::size_t length() const { return edges_.size(); }
  bool is_vertex() const { return edges_.empty(); }
  VertexIndex source() const { return source_; }
  VertexIndex range() const { return range_; }
  bool is_cycle() const { return !edges_.empty() && source_ == range_; }
  const std::vector<EdgeIndex>& edges() const { return edges_; }
  std::vector<EdgeIndex> traversal() const { return {edges_.rbegin(), edges_.rend()}; }

  // Ordered by length, then lexicographically on the written edge sequence;
  // vertices are ordered by index.
  friend std::strong_ordering operator<=>(const Path& a, const Path& b);
  friend bool operator==(const Path& a, const Path& b) = default;

  std::string to_string(const Graph& g) const;

  friend std::optional<Path> compose(const Path& mu, const Path& nu);

 private:
  Path(VertexIndex source, VertexIndex range, std::vector<EdgeIndex> edges)
      : source_(source), range_(range), edges_(std::move(edges)) {}

  VertexIndex source_ = 0;
  VertexIndex range_ = 0;
  std::vector<EdgeIndex> edges_;
};

// mu nu, defined when s(mu) = r(nu).
std::optional<Path> compose(const Path& mu, const Path& nu);

// w^p for a cycle w (p >= 1).
Path power(const Path& w, std::size_t p);

// Rotation of a cycle that starts by traversing its k-th edge (traversal
// order, k taken modulo the length).
Path rotate(const Graph& g, const Path& w, std::size_t k);

// All paths with source in `sources` and length <= max_len, sorted.
std::vector<Path> enumerate_paths(const Graph& g, const VertexSet& sources,
                                  std::size_t max_len);

// Cycles at v of length <= max_len that do not pass through v internally.
std::vector<Path> irreducible_cycles_at(const Graph& g, VertexIndex v,
                                        std::size_t max_len);

enum class CycleClass { NoCycle, SimpleCycle, TwoPlus };
CycleClass vertex_cycle_class(const Graph& g, VertexIndex v);
const char* to_string(CycleClass c);

struct PrimitiveRoot {
  Path root;
  std::size_t exponent = 1;
};

// w = root^exponent with root primitive; throws Error("NotACycle").
PrimitiveRoot primitive_root(const Graph& g, const Path& w);
bool is_primitive(const Graph& g, const Path& w);

// Least rotation (by written edge sequence) of a cycle; two cycles are cyclic
// permutations of each other iff their canonical forms are equal.
Path cyclic_canonical_form(const Graph& g, const Path& w);

// Starting offset of the lexicographically least rotation of `seq` (Booth).
std::size_t least_rotation(const std::vector<EdgeIndex>& seq);

}  // namespace sgk
