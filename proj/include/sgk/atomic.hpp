#pragma once

// Atomic TCK families: finite explicit presentations (index sets, injections,
// phases), canonical infinite families (left-regular, cycle type, periodic
// tails, direct sums), the labeled graph H on basis vectors, Wold data,
// classification into irreducible atoms and the unitary-equivalence decision.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sgk/graph.hpp"
#include "sgk/path.hpp"
#include "sgk/phase.hpp"

namespace sgk {

using NodeIndex = std::size_t;

// A multiplicity: a positive count, or the countably infinite marker omega.
struct Multiplicity {
  std::uint64_t count = 0;
  bool infinite = false;

  static Multiplicity omega() { return {0, true}; }
  bool is_zero() const { return !infinite && count == 0; }
  Multiplicity operator+(const Multiplicity& o) const;
  Multiplicity operator*(const Multiplicity& o) const;
  friend bool operator==(const Multiplicity&, const Multiplicity&) = default;
  std::string to_string() const;
};

// ---------------------------------------------------------------------------
// Explicit presentations

// Unvalidated presentation data, keyed by ids.
struct AtomicData {
  struct PiEntry {
    std::string edge, from, to;
  };
  struct PhaseEntry {
    std::string edge, from;
    Phase phase;
  };
  GraphData graph;
  std::map<std::string, std::vector<std::string>> lambda;  // vertex id -> index labels
  std::vector<PiEntry> pi;
  std::vector<PhaseEntry> phase;  // missing entries mean phase 1
};

struct AtomicValidation {
  ValidationReport report;     // empty iff the presentation is a valid atomic family
  bool structural = false;     // injective, consistent, disjoint ranges (totality aside)
  bool total = false;          // every pi_e defined on all of Lambda_{s(e)}
  bool cuntz_krieger = false;  // ranges cover Lambda_v at every vertex receiving an edge
  bool fully_coisometric = false;  // ranges cover Lambda_v at every vertex
};

AtomicValidation validate_atomic(const AtomicData& data);

class ExplicitAtomic {
 public:
  ExplicitAtomic() = default;

  // Throws Error("InvalidAtomic") with findings. Non-total injections are
  // rejected unless allow_partial is set (truncated presentations).
  static ExplicitAtomic from_data(const AtomicData& data, bool allow_partial = false);
  AtomicData to_data() const;

  const Graph& graph() const { return graph_; }
  std::size_t node_count() const { return node_vertex_.size(); }
  NodeIndex node(VertexIndex v, std::size_t i) const { return offset_[v] + i; }
  VertexIndex node_vertex(NodeIndex n) const { return node_vertex_[n]; }
  std::size_t node_local(NodeIndex n) const { return n - offset_[node_vertex_[n]]; }
  const std::string& node_label(NodeIndex n) const {
    return lambda_[node_vertex_[n]][node_local(n)];
  }
  const std::vector<std::string>& indices(VertexIndex v) const { return lambda_[v]; }

  // pi_e(i) as a local index into Lambda_{r(e)}, if defined.
  std::optional<std::size_t> target(EdgeIndex e, std::size_t i) const { return pi_[e][i]; }
  const Phase& phase(EdgeIndex e, std::size_t i) const { return phase_[e][i]; }
  bool total() const;

 private:
  Graph graph_;
  std::vector<std::vector<std::string>> lambda_;
  std::vector<std::size_t> offset_;
  std::vector<VertexIndex> node_vertex_;
  std::vector<std::vector<std::optional<std::size_t>>> pi_;
  std::vector<std::vector<Phase>> phase_;
};

// Rescales basis vector n by z[n]; phases become lambda * z_src / z_dst.
ExplicitAtomic gauge_transform(const ExplicitAtomic& a, const std::vector<Phase>& z);

// Renames and reorders the index sets: perm[v][i] is the new position of old
// index i at v, labels are rebuilt as prefix + position.
ExplicitAtomic relabel_indices(const ExplicitAtomic& a,
                               const std::vector<std::vector<std::size_t>>& perm,
                               const std::string& prefix);

// Orthogonal direct sum on the same graph; labels get "a:" / "b:" prefixes.
ExplicitAtomic direct_sum(const ExplicitAtomic& a, const ExplicitAtomic& b);

// ---------------------------------------------------------------------------
// The labeled graph H on basis vectors

struct HArc {
  EdgeIndex edge;
  NodeIndex from;
  NodeIndex to;
  Phase phase;
};

struct LabeledGraphH {
  std::vector<HArc> arcs;
  std::vector<std::vector<std::size_t>> out;     // arc ids per node, by edge index
  std::vector<std::optional<std::size_t>> in;    // unique incoming arc, if any
  std::vector<std::vector<NodeIndex>> components;  // undirected, sorted, by least node
  std::vector<std::size_t> component_of;
};

// Asserts (throws Error("InvariantViolated")) that every node has in-degree
// <= 1 and every undirected component holds at most one directed cycle.
LabeledGraphH build_H(const ExplicitAtomic& a);

std::string to_dot(const LabeledGraphH& h, const ExplicitAtomic& a);

struct RootFound {
  NodeIndex root;
  std::vector<std::size_t> arcs;  // arcs from root to the start node, in traversal order
};

struct CycleFound {
  std::vector<NodeIndex> cycle;     // cycle nodes in traversal order, from the entry node
  std::vector<std::size_t> arcs;    // arcs of the cycle: arcs[i] leaves cycle[i]
  std::size_t entry_offset = 0;     // backward steps from the start node to the cycle
};

using TraceResult = std::variant<RootFound, CycleFound>;

// Follows the unique predecessor chain from `start`.
TraceResult trace_backward(const LabeledGraphH& h, NodeIndex start);

// ---------------------------------------------------------------------------
// Canonical families

struct LeftRegular {
  VertexIndex vertex;
};

// S_{w, lambda} for a cycle w.
struct CycleType {
  Path cycle;
  Phase phase;
};

// S_tau for the periodic backward path tau = u^infinity.
struct Tail {
  Path cycle;
};

struct Summand;
struct DirectSum {
  std::vector<Summand> summands;
};

struct CanonicalAtomic {
  std::variant<LeftRegular, CycleType, Tail, DirectSum> kind;
};

struct Summand {
  Multiplicity multiplicity;
  CanonicalAtomic family;
};

struct CanonicalFamily {
  Graph graph;
  CanonicalAtomic family;
};

// Explicit presentation of a canonical family with every left-regular tree
// cut at `depth` (path length). The result is total exactly when no tree
// reaches the cut. Tails cannot be materialized.
ExplicitAtomic materialize(const CanonicalFamily& f, std::size_t depth);

// ---------------------------------------------------------------------------
// Atoms and classification

struct LeftRegularAtom {
  VertexIndex vertex;
};
struct CycleAtom {
  Path cycle;  // primitive, canonical rotation
  Phase phase;
};
struct TailAtom {
  Path cycle;  // primitive, canonical rotation
};
using Atom = std::variant<LeftRegularAtom, CycleAtom, TailAtom>;

bool atoms_equal(const Atom& a, const Atom& b);
bool atom_less(const Atom& a, const Atom& b);

struct AtomEntry {
  Atom atom;
  Multiplicity multiplicity;
};

struct AtomDecomposition {
  std::vector<AtomEntry> atoms;    // merged and sorted
  std::vector<std::string> notes;  // symbolic remarks

  void add(const Atom& atom, Multiplicity m);
  void merge(const AtomDecomposition& other, Multiplicity times);
};

// p atoms (u, theta_j) where w = u^p and theta_j^p = lambda.
std::vector<CycleAtom> decompose_cycle(const Graph& g, const Path& w, const Phase& lambda);

// Errors: NonTotalPresentation, UnboundedLeftRegularComponent.
AtomDecomposition classify(const ExplicitAtomic& a);
AtomDecomposition classify(const CanonicalFamily& f);

using AtomicInput = std::variant<ExplicitAtomic, CanonicalFamily>;
AtomDecomposition classify(const AtomicInput& input);

struct EquivalenceResult {
  bool equivalent = false;
  std::string witness;
};

EquivalenceResult compare_decompositions(const Graph& g, const AtomDecomposition& a,
                                         const AtomDecomposition& b);
EquivalenceResult are_unitarily_equivalent(const AtomicInput& a, const AtomicInput& b);

// ---------------------------------------------------------------------------
// Wold data and multiplicity formulas

struct WoldReport {
  // Dimension of the wandering space at each vertex (basis vectors with
  // in-degree 0 in H): multiplicity of L_{G,v} in the left-regular part.
  std::vector<Multiplicity> alpha;
  // Multiplicity of L_{G,v} in the invariant subspace hanging off the cycles
  // and tails (basis vectors off a cycle whose predecessor lies on one).
  std::vector<Multiplicity> attached;
  // Basis vectors of the fully coisometric part (explicit input only).
  std::vector<NodeIndex> remainder;
  bool supported_on_g0 = true;
};

WoldReport wold_atomic(const ExplicitAtomic& a);
WoldReport wold_atomic(const CanonicalFamily& f);

// alpha_v = sum_j |{f : s(f) = v_j, r(f) = v, f != e_j}| for w = e_k ... e_1.
std::vector<std::size_t> cycle_structure_multiplicities(const Graph& g, const Path& w);

// alpha_v = -rank(v) + sum_{r(e) = v} rank(s(e)).
std::vector<long long> finitely_correlated_multiplicities(
    const Graph& g, const std::vector<long long>& rank);

enum class ConditionM { NotUnitary, Singular, DominatesLebesgue };
const char* to_string(ConditionM m);

struct ConditionMReport {
  ConditionM verdict = ConditionM::Singular;
  std::vector<std::size_t> orbit_sizes;  // explicit input: orbit lengths of pi_mu
  std::string detail;
};

// Accepts structurally valid partial presentations: a non-total pi is
// reported as NotUnitary.
ConditionMReport orbit_condition_M(const ExplicitAtomic& a, const Path& mu);
ConditionMReport orbit_condition_M(const CanonicalFamily& f, const Path& mu);

}  // namespace sgk
