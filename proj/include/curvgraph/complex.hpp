#pragma once

#include "curvgraph/graph.hpp"
#include "curvgraph/rational.hpp"
#include "curvgraph/sparse_matrix.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace curvgraph {

/// Thrown when a basis would exceed the configured size cap.
class resource_limit_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GraphTerm {
  CanonicalGraph graph;
  Rational coeff;
};

/// Finite combination of canonical oriented graphs (reference orientations).
class GraphChain {
 public:
  explicit GraphChain(GraphFlavor flavor = GraphFlavor::ribbon) : flavor_(flavor) {}

  GraphFlavor flavor() const { return flavor_; }
  const std::map<GraphKey, GraphTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Adds coeff times the oriented graph (g, +1); graphs that vanish are dropped.
  void add(const Graph& g, const Rational& coeff);
  /// Adds coeff times the reference orientation of a canonical graph.
  void add(const CanonicalGraph& g, const Rational& coeff);
  /// Coefficient of the oriented graph (g, +1); zero for vanishing graphs.
  Rational coefficient(const Graph& g) const;

  /// Terms with the given number of vertices and edges.
  GraphChain component(int vertices, int edges) const;
  int max_edges() const;

  GraphChain& operator+=(const GraphChain& rhs);
  GraphChain& operator-=(const GraphChain& rhs);
  GraphChain& operator*=(const Rational& s);
  friend GraphChain operator+(GraphChain a, const GraphChain& b) { return a += b; }
  friend GraphChain operator-(GraphChain a, const GraphChain& b) { return a -= b; }
  friend GraphChain operator*(const Rational& s, GraphChain a) { return a *= s; }
  bool operator==(const GraphChain& rhs) const;

 private:
  void add_key(const GraphKey& key, const CanonicalGraph* g, const Rational& coeff);

  GraphFlavor flavor_;
  std::map<GraphKey, GraphTerm> terms_;
};

/// Signed contractions d_e of the reference orientation, canonicalized;
/// vanishing terms are dropped and equal terms merged.
std::vector<std::pair<CanonicalGraph, int>> contraction_terms(const CanonicalGraph& g);

GraphChain differential(const GraphChain& x);

struct HomologyRow {
  int degree = 0;  // number of vertices
  long basis_size = 0;
  int rank = -1;  // -1 outside the validity window
  bool window_valid = false;
};

struct HomologyReport {
  GraphFlavor flavor = GraphFlavor::ribbon;
  int min_valence = 1;
  int genus = 0;
  int max_vertices = 0;
  std::vector<HomologyRow> rows;  // degrees 1..max_vertices
};

/// Solution of x - Σ λ_j gen_j = d η.
struct BoundaryWitness {
  GraphChain eta;
  std::vector<Rational> lambda;
  /// The λ_j are forced: the generators are independent modulo boundaries.
  bool lambda_unique = true;
};

/// The connected graph complex of one flavor and minimal valence, with bases
/// cached per genus. Degree = number of vertices; d lowers it by one and
/// keeps the genus, so each (genus, ≤ N vertices) span is a subcomplex.
class GraphComplex {
 public:
  GraphComplex(GraphFlavor flavor, int min_valence, long basis_cap = -1);

  GraphFlavor flavor() const { return flavor_; }
  int min_valence() const { return min_valence_; }

  /// Nonzero connected graphs with this genus and vertex count, in a fixed order.
  const std::vector<CanonicalGraph>& basis(int genus, int vertices);
  /// Index of a canonical key in basis(genus, vertices), or -1.
  int index_of(int genus, int vertices, const GraphKey& key);

  /// Matrix of d from degree `vertices` to `vertices - 1` in the given genus.
  SparseRationalMatrix differential_matrix(int genus, int vertices);

  /// Ranks of H_n for n ≤ max_vertices - 1; degree max_vertices is reported
  /// with its basis size but outside the window.
  HomologyReport homology(int genus, int max_vertices);

  /// Some η with d η = x using graphs with at most `edge_window` edges, or
  /// nullopt when the truncated system is inconsistent. Throws
  /// std::invalid_argument when x has a term with edge_window edges or more,
  /// or a term outside this complex.
  std::optional<GraphChain> solve_boundary(const GraphChain& x, int edge_window);

  /// As solve_boundary, solving also for the coefficients of the given
  /// single-graph generators.
  std::optional<BoundaryWitness> solve_boundary_modulo(const GraphChain& x, const std::vector<CanonicalGraph>& generators,
                                                       int edge_window);

 private:
  void ensure(int genus, int vertices);

  GraphFlavor flavor_;
  int min_valence_;
  long basis_cap_;
  std::map<int, int> enumerated_;  // genus -> max vertices enumerated
  std::map<std::pair<int, int>, std::vector<CanonicalGraph>> bases_;
  std::map<std::pair<int, int>, std::map<GraphKey, int>> index_;
};

/// Convenience wrapper around GraphComplex::homology.
HomologyReport homology_ranks(GraphFlavor flavor, int min_valence, int genus, int max_vertices,
                              long basis_cap = -1);

}  // namespace curvgraph
