#pragma once

// Strong edge colourings, the backward automaton they induce on in-degree
// regular graphs, synchronizing words and the colouring searches.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgk/graph.hpp"
#include "sgk/path.hpp"

namespace sgk {

// Colour words are sequences over 1..d; the first letter names the last edge
// of the path it colours.
using ColorWord = std::vector<unsigned>;

ColorWord parse_word(const std::string& s);
std::string to_string(const ColorWord& w);

struct Coloring {
  unsigned d = 1;
  std::vector<unsigned> color;  // per edge index, in 1..d

  friend bool operator==(const Coloring&, const Coloring&) = default;
};

struct ColoringValidation {
  ValidationReport report;  // clauses: size-mismatch, color-range, repeated-color
  bool in_degree_regular = false;  // every in-fiber has exactly d edges
};

ColoringValidation validate_strong(const Graph& g, const Coloring& c);

// c(mu) = c(e_k) ... c(e_1).
ColorWord color_word(const Coloring& c, const Path& mu);

class BackwardAutomaton {
 public:
  // Throws Error("InvalidColoring") unless c is strong.
  BackwardAutomaton(const Graph& g, const Coloring& c);

  std::size_t states() const { return delta_.size(); }
  unsigned letters() const { return d_; }
  bool total() const { return total_; }
  // The colour-j edge into w, if any.
  std::optional<EdgeIndex> edge(VertexIndex w, unsigned j) const { return delta_[w][j - 1]; }
  std::optional<VertexIndex> step(VertexIndex w, unsigned j) const;

 private:
  const Graph* graph_;
  unsigned d_;
  bool total_ = true;
  std::vector<std::vector<std::optional<EdgeIndex>>> delta_;
};

struct BackwardTrace {
  VertexIndex source;
  Path path;
};

// The unique path mu with r(mu) = w and c(mu) = gamma. Throws
// Error("PartialAutomaton") when a needed transition is missing.
BackwardTrace follow_backward(const Graph& g, const BackwardAutomaton& a, VertexIndex w,
                              const ColorWord& gamma);

// The common source of all gamma-coloured backward traces, if there is one.
std::optional<VertexIndex> is_synchronizing_word(const BackwardAutomaton& a,
                                                 const ColorWord& gamma);

struct SyncWord {
  ColorWord word;
  VertexIndex vertex;
  bool shortest = true;  // false for the greedy search on large automata
};

// Shortest (then lexicographically least) synchronizing word by subset BFS
// for at most `bfs_limit` states, greedy pair merging above.
std::optional<SyncWord> find_synchronizing_word(const BackwardAutomaton& a,
                                                std::size_t bfs_limit = 20);

// True iff every pair of states can be merged by some word (equivalently, a
// synchronizing word exists).
bool has_synchronizing_word(const BackwardAutomaton& a);

struct ColoringSearchOptions {
  unsigned jobs = 1;
  std::uint64_t cap = 10'000'000;
};

// First strong colouring in enumeration order that has a synchronizing word.
// The colouring of the least vertex is fixed to the identity order of its
// in-edges. Throws NotRegular, and Overflow when the search space exceeds
// the cap. The result does not depend on `jobs`.
std::optional<Coloring> search_synchronizing_coloring(const Graph& g,
                                                      const ColoringSearchOptions& opt = {});

// Number of colourings the search would enumerate, or nullopt past 2^64.
std::optional<std::uint64_t> coloring_search_space(const Graph& g);

struct OBrienResult {
  Coloring coloring;
  ColorWord word;  // 1^k
  VertexIndex vertex;
  std::size_t depth;
};

// Errors: NotALoop, NotRegular, NotTransitive.
OBrienResult obrien_coloring(const Graph& g, EdgeIndex loop);

// lambda = mu' mu with c(mu') = gamma_prime ending at v and mu the gamma
// coloured path from v; asserts s = r = v and c(lambda) = gamma' gamma.
Path syncdiag_paths(const Graph& g, const Coloring& c, const ColorWord& gamma, VertexIndex v,
                    const ColorWord& gamma_prime);

}  // namespace sgk
