#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace curvgraph {

enum class GraphFlavor { ribbon, commutative };

const char* to_string(GraphFlavor flavor);
/// Accepts "ribbon" and "commutative"; throws std::invalid_argument otherwise.
GraphFlavor parse_graph_flavor(const std::string& text);

/// A graph on half-edges 0..2E-1 and vertices 0..n-1. An oriented graph is a
/// Graph together with a sign; the sign +1 stands for the orientation that
/// orders half-edges and vertices by label.
struct Graph {
  GraphFlavor flavor = GraphFlavor::ribbon;
  int vertices = 0;
  std::vector<int> vertex_of;  // per half-edge
  std::vector<int> partner;    // fixed-point-free involution
  std::vector<int> next;       // ribbon only: successor in the cyclic order at the vertex

  int half_edges() const { return int(vertex_of.size()); }
  int edges() const { return half_edges() / 2; }
  int valence(int v) const;
  std::vector<int> valences() const;
  /// Half-edges at v, in cyclic order starting from the lowest label (ribbon),
  /// or in increasing label order (commutative).
  std::vector<int> half_edges_at(int v) const;
  bool connected() const;
  bool has_loop() const;
  /// One representative half-edge per edge: the smaller label of each pair.
  std::vector<int> edge_representatives() const;

  /// Throws std::invalid_argument naming the broken invariant.
  void validate() const;

  bool operator==(const Graph&) const = default;
};

/// Canonical code of a graph up to isomorphism (flavor included).
using GraphKey = std::vector<int>;

/// A graph relabelled into canonical form. The reference orientation is the
/// label order of `graph`.
struct CanonicalGraph {
  Graph graph;
  GraphKey key;
  /// Set when some automorphism reverses the reference orientation.
  bool zero = false;
  long automorphisms = 1;
};

struct Canonicalization {
  CanonicalGraph canonical;
  /// The input orientation equals sign times the reference orientation;
  /// 0 exactly when canonical.zero.
  int sign = 0;
};

/// Requires a valid connected graph; a single vertex without edges is allowed.
Canonicalization canonicalize(const Graph& g);

long automorphism_count(const Graph& g);

/// Code of a connected graph with one marked element: a half-edge (ribbon)
/// or a vertex (commutative). Equal codes iff the marked graphs are isomorphic.
GraphKey rooted_key(const Graph& g, int root);

/// |E| - |V| + 1; throws std::invalid_argument for disconnected input.
int genus(const Graph& g);

/// d_e for the edge containing half-edge `h`, before canonicalization: the
/// result carries the orientation with sign `sign` relative to label order.
/// Empty when the edge is a loop or the contraction leaves a bare vertex.
struct SignedGraph {
  Graph graph;
  int sign = 1;
};
std::optional<SignedGraph> contract_edge(const Graph& g, int h);

/// Graph on new labels: half-edge h becomes half_map[h], vertex v becomes
/// vertex_map[v]. The returned sign makes the oriented graphs equal.
SignedGraph relabel(const Graph& g, const std::vector<int>& half_map, const std::vector<int>& vertex_map);

/// Glues a new univalent vertex to v. Ribbon: the new half-edge is inserted
/// right after `after` in the cyclic order at v (`after` must sit at v).
/// The new half-edges get the two highest labels (at v, then at the leaf) and
/// the leaf gets the highest vertex label.
Graph add_leaf(const Graph& g, int v, int after = -1);

/// Small named graphs used throughout.
Graph segment_graph(GraphFlavor flavor);
Graph loop_graph(GraphFlavor flavor);
Graph path_graph(GraphFlavor flavor, int vertices);
/// Star with one center of the given valence; Γ(i) has valence 2i+1.
Graph star_graph(GraphFlavor flavor, int valence);
Graph theta_graph(GraphFlavor flavor);

struct EnumerationBounds {
  int max_edges = 0;
  int max_vertices = -1;  // -1: max_edges + 1
  int max_genus = -1;     // -1: no bound beyond the edge bound
  int min_valence = 1;
};

/// All nonzero connected canonical graphs within the bounds, without
/// duplicates, sorted by (vertices, edges, key).
std::vector<CanonicalGraph> enumerate_connected(GraphFlavor flavor, const EnumerationBounds& bounds);

/// Line-oriented text form: a header line "<flavor> <vertices> <half_edges>"
/// followed by one line "<vertex> <partner>[ <next>]" per half-edge.
std::string to_text(const Graph& g);
/// Throws std::invalid_argument on malformed or invalid input.
Graph parse_graph(const std::string& text);

/// Single-line form used in tables and JSON.
std::string to_compact(const Graph& g);
Graph parse_compact(const std::string& text);

}  // namespace curvgraph
