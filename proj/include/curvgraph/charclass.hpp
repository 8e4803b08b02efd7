#pragma once

#include "curvgraph/complex.hpp"
#include "curvgraph/graph.hpp"
#include "curvgraph/infinity.hpp"

#include <optional>
#include <vector>

namespace curvgraph {

/// Ribbon graphs carry A∞ classes, commutative graphs L∞ classes.
GraphFlavor graph_flavor_for(Flavor flavor);

/// c_Γ for the reference orientation of g (label order of half-edges and
/// vertices): the product over vertices of (m_{k-1}(x_1..x_{k-1}), x_k),
/// read along each vertex's ciliation, contracted with one copy of the
/// inverse pairing per edge, times the sign of the permutation taking the
/// label order to the half-edges grouped by vertex.
///
/// Only purely even V is supported: there every nonzero m_i has even arity,
/// so only odd valences contribute, and this sign is independent of all
/// choices. Throws std::invalid_argument for odd basis vectors, a flavor
/// mismatch, or a valence beyond the arity cap.
Rational contract_graph(const Graph& g, const InfinityStructure& s, const InnerProduct& ip);

/// The same number summed over all basis assignments to half-edges with an
/// explicit ciliation (one ordered list of half-edges per vertex).
Rational contract_graph_slow(const Graph& g, const InfinityStructure& s, const InnerProduct& ip,
                             const std::vector<std::vector<int>>& ciliation);

/// Connected part of [V] through max_edges: Σ c_Γ / |Aut Γ| · Γ over nonzero
/// connected graphs with every valence at least min_valence. The full class
/// is its exponential; d is a derivation, so one is a cycle iff the other is.
GraphChain characteristic_class(const InfinityStructure& s, const InnerProduct& ip, int max_edges,
                                int min_valence = 1, long basis_cap = -1);

/// d(cls) on the graphs it determines: a vertex of valence k in d(cls)
/// collects terms with m_k, so only graphs with every valence at most
/// arity_cap are free of truncation. Zero there for any cyclic MC element.
GraphChain cycle_defect(const GraphChain& cls, int arity_cap);

/// Homology generators of the curved connected complex with fewer than
/// edge_window edges: the segment, and in the ribbon flavor the odd stars.
std::vector<CanonicalGraph> curved_generators(GraphFlavor flavor, int edge_window);

struct GeneratorComparison {
  int edge_window = 0;
  std::vector<CanonicalGraph> generators;
  std::vector<Rational> lambda;
  bool lambda_unique = false;
  GraphChain witness;
  /// d(witness) == cls - Σ λ_j G_j, recomputed independently.
  bool witness_verified = false;
};

/// Writes cls as Σ λ_j G_j + d η over the curved generators, all terms
/// below edge_window edges. Empty when no such decomposition exists in the
/// window. Throws std::invalid_argument when cls has a term at or above the
/// window.
std::optional<GeneratorComparison> compare_to_generators(const GraphChain& cls, int edge_window,
                                                         long basis_cap = -1);

}  // namespace curvgraph
