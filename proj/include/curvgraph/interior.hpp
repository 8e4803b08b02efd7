#pragma once

#include "curvgraph/complex.hpp"
#include "curvgraph/graph.hpp"

#include <string>
#include <vector>

namespace curvgraph {

/// A vertex is exterior when its valence is at most one, or when it has
/// valence two and one component of the graph without it is a line segment
/// joined to it by a single edge. All other vertices are interior.
std::vector<bool> interior_vertices(const Graph& g);
int interior_count(const Graph& g);

/// The subgraph on interior vertices and the edges between them, relabelled
/// in increasing parent order; ribbon cyclic orders are induced.
struct InteriorSubgraph {
  Graph graph;
  std::vector<int> parent_vertex;  // per subgraph vertex
  std::vector<int> parent_half;    // per subgraph half-edge
};
InteriorSubgraph interior_subgraph(const Graph& g);

/// Canonical key of the interior subgraph; {} when there is no interior vertex.
GraphKey interior_key(const Graph& g);

/// The part of d that keeps the number of interior vertices.
GraphChain gr_differential(const GraphChain& x);

/// The contracting homotopy on the graded piece of graphs whose interior
/// subgraph is isomorphic to a fixed core with an edge. The leaf is glued at
/// the vertex of the marked half-edge, right after it in the ribbon case, and
/// oriented so that contracting it returns the input. When the core has
/// several placements equivalent to the mark, s averages over them.
class InteriorHomotopy {
 public:
  /// `root` is a half-edge of the core; throws std::invalid_argument when
  /// the core is disconnected or has no edge.
  InteriorHomotopy(const Graph& core, int root);

  const Graph& core() const { return core_; }
  int root() const { return root_; }
  /// Placements of the mark in any graph of the piece.
  int placements() const { return placements_; }

  bool in_piece(const Graph& g) const;
  /// Throws std::invalid_argument on a term outside the piece.
  GraphChain apply(const GraphChain& x) const;

 private:
  std::vector<int> marks(const Graph& g) const;

  Graph core_;
  int root_;
  GraphKey core_key_;
  GraphKey root_key_;
  int placements_ = 0;
};

struct InteriorHomotopyReport {
  GraphFlavor flavor = GraphFlavor::ribbon;
  std::string core;  // compact form
  int root = 0;
  int max_edges = 0;
  long graphs_checked = 0;   // graphs of the piece with fewer than max_edges edges
  long identity_failures = 0;
  long s_squared_nonzero = 0;
};

/// Checks sd + ds = Id on every graph of the piece with at most max_edges - 1
/// edges, and counts graphs where s∘s does not vanish.
InteriorHomotopyReport check_interior_homotopy(const InteriorHomotopy& s, int max_edges);

/// Every core with 1..max_core_edges edges occurring in graphs with at most
/// max_edges edges, one root per orbit of marks.
std::vector<InteriorHomotopy> interior_cores(GraphFlavor flavor, int max_core_edges, int max_edges);

/// Whether every term of d keeps or lowers the interior count, and terms that
/// keep it keep the interior subgraph; checked on graphs with at most
/// max_edges edges.
bool interior_filtration_holds(GraphFlavor flavor, int max_edges);

}  // namespace curvgraph
