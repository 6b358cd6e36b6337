#pragma once

// Finite truncations of TCK families as sparse matrices, and exact
// verification of the operator identities on interior basis vectors.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sgk/atomic.hpp"
#include "sgk/coloring.hpp"
#include "sgk/graph.hpp"
#include "sgk/series.hpp"
#include "sgk/sparse.hpp"

namespace sgk {

enum class TruncKind { LeftRegular, Colored, Atomic };
const char* to_string(TruncKind k);

struct TruncatedRep {
  Graph graph;
  TruncKind kind = TruncKind::LeftRegular;
  std::size_t depth = 0;  // N
  bool exact = false;     // finite family, no truncation boundary
  std::vector<std::string> labels;
  std::vector<std::size_t> level;      // grade of each basis vector
  std::vector<VertexIndex> vertex_of;  // S_{vertex_of[i]} fixes basis vector i
  std::vector<SparseMatrix> vertex_ops;
  std::vector<SparseMatrix> edge_ops;

  std::size_t dim() const { return labels.size(); }
  // Basis vectors unaffected by the cutoff for a relation of the given word
  // length: level <= N - word_length (all of them when exact).
  std::vector<std::size_t> interior(std::size_t word_length) const;
};

// L_v, L_e on the paths with source in `sources` and length <= N.
TruncatedRep build_left_regular_trunc(const Graph& g, const VertexSet& sources, std::size_t N);

// S_v = block projection, S_e = block (r(e), s(e)) carrying W_{c(e)}, where
// W_1..W_d are Cuntz isometries truncated to depth N. They act on words over
// 1..d extended by the tail 1^infinity: basis pairs (mu, n) stand for
// mu 1^-n, with (mu 1, n + 1) identified with (mu, n).
// Throws InvalidColoring / NotRegular.
TruncatedRep build_colored_trunc(const Graph& g, const Coloring& c, std::size_t N);

// The exact finite matrices of a total explicit atomic family.
TruncatedRep build_atomic_rep(const ExplicitAtomic& a);

// Basis vectors of level <= M, with the operators compressed to them.
TruncatedRep restrict_levels(const TruncatedRep& rep, std::size_t M);

struct RelationReport {
  std::string id;             // P, IS, TCK, CK, F, ND
  std::size_t depth = 0;      // interior depth checked
  double residual = 0.0;      // largest entry of the defect on interior columns
  bool exact_zero = true;
  std::optional<std::size_t> worst_column;
  bool axiom = true;  // CK and F are properties, not TCK axioms

  bool holds(double tol = 0.0) const { return residual <= tol; }
};

std::vector<RelationReport> verify_tck(const TruncatedRep& rep);
const RelationReport& find_report(const std::vector<RelationReport>& reports,
                                  const std::string& id);

// S_mu = S_{e_n} ... S_{e_1}; S_v for a vertex path.
SparseMatrix path_operator(const TruncatedRep& rep, const Path& mu);

// sum_mu a_mu S_mu.
SparseMatrix apply_formal(const TruncatedRep& rep, const FormalElement& a);

// sum over all paths of length k of S_mu S_mu^*.
SparseMatrix range_sum(const TruncatedRep& rep, std::size_t k);

// The vectors S_mu xi (|mu| <= max_len) for the basis vector xi = column
// `col` are pairwise orthogonal (exact inner products).
bool wandering_certificate(const TruncatedRep& rep, std::size_t col, std::size_t max_len);

struct CycleLemmaReport {
  bool ok = false;
  double residual = 0.0;
  std::vector<std::size_t> block_sizes;
  std::string detail;
};

// C_n truncated to the paths of length < N from v1, reordered by residue
// class: L_{e_i} must be the block pattern E_{i,i+1} (x) I for i < n and
// L_{e_n} the pattern E_{n,1} (x) (truncated unilateral shift).
CycleLemmaReport cycle_lemma_check(std::size_t n, std::size_t N);

}  // namespace sgk
