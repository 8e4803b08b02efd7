#include "curvgraph/interior.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace curvgraph {

namespace {

// Components of g with vertex `cut` removed; -1 marks the cut vertex.
std::vector<int> components_without(const Graph& g, int cut, int& count) {
  std::vector<std::vector<int>> adj(g.vertices);
  for (int h = 0; h < g.half_edges(); ++h) adj[g.vertex_of[h]].push_back(g.vertex_of[g.partner[h]]);
  std::vector<int> comp(g.vertices, -2);
  comp[cut] = -1;
  count = 0;
  for (int s = 0; s < g.vertices; ++s) {
    if (comp[s] != -2) continue;
    std::vector<int> stack{s};
    comp[s] = count;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : adj[u])
        if (comp[w] == -2) {
          comp[w] = count;
          stack.push_back(w);
        }
    }
    ++count;
  }
  return comp;
}

bool exterior(const Graph& g, int v, const std::vector<int>& val) {
  if (val[v] <= 1) return true;
  if (val[v] != 2) return false;
  int count = 0;
  auto comp = components_without(g, v, count);
  std::vector<int> joins(count, 0), vertices(count, 0), edges(count, 0);
  std::vector<std::vector<int>> inner_val(count);
  std::vector<int> local_val(g.vertices, 0);
  for (int h = 0; h < g.half_edges(); ++h) {
    int a = g.vertex_of[h];
    int b = g.vertex_of[g.partner[h]];
    if (a == v && b != v) ++joins[comp[b]];
    if (a != v && b != v) ++local_val[a];
  }
  for (int u = 0; u < g.vertices; ++u)
    if (u != v) {
      ++vertices[comp[u]];
      inner_val[comp[u]].push_back(local_val[u]);
    }
  for (int c = 0; c < count; ++c) {
    if (joins[c] != 1) continue;
    int ones = 0, twos = 0;
    for (int x : inner_val[c]) {
      if (x == 1) ++ones;
      if (x == 2) ++twos;
    }
    bool segment = vertices[c] == 1 ? inner_val[c][0] == 0 : ones == 2 && twos == vertices[c] - 2;
    if (segment) return true;
  }
  return false;
}

}  // namespace

std::vector<bool> interior_vertices(const Graph& g) {
  auto val = g.valences();
  std::vector<bool> out(g.vertices);
  for (int v = 0; v < g.vertices; ++v) out[v] = !exterior(g, v, val);
  return out;
}

int interior_count(const Graph& g) {
  int n = 0;
  for (bool b : interior_vertices(g)) n += b;
  return n;
}

InteriorSubgraph interior_subgraph(const Graph& g) {
  auto inner = interior_vertices(g);
  InteriorSubgraph out;
  out.graph.flavor = g.flavor;
  std::vector<int> vmap(g.vertices, -1), hmap(g.half_edges(), -1);
  for (int v = 0; v < g.vertices; ++v)
    if (inner[v]) {
      vmap[v] = int(out.parent_vertex.size());
      out.parent_vertex.push_back(v);
    }
  for (int h = 0; h < g.half_edges(); ++h)
    if (inner[g.vertex_of[h]] && inner[g.vertex_of[g.partner[h]]]) {
      hmap[h] = int(out.parent_half.size());
      out.parent_half.push_back(h);
    }
  Graph& s = out.graph;
  s.vertices = int(out.parent_vertex.size());
  for (int h : out.parent_half) {
    s.vertex_of.push_back(vmap[g.vertex_of[h]]);
    s.partner.push_back(hmap[g.partner[h]]);
  }
  if (g.flavor == GraphFlavor::ribbon)
    for (int h : out.parent_half) {
      int x = g.next[h];
      while (hmap[x] < 0) x = g.next[x];
      s.next.push_back(hmap[x]);
    }
  return out;
}

namespace {

// {} for no interior vertex, {-1} for a disconnected interior subgraph.
GraphKey subgraph_key(const Graph& sub) {
  if (sub.vertices == 0) return {};
  if (sub.edges() == 0) return sub.vertices == 1 ? canonicalize(sub).canonical.key : GraphKey{-1};
  if (!sub.connected()) return {-1};
  return canonicalize(sub).canonical.key;
}

}  // namespace

GraphKey interior_key(const Graph& g) { return subgraph_key(interior_subgraph(g).graph); }

GraphChain gr_differential(const GraphChain& x) {
  GraphChain out(x.flavor());
  for (auto& [key, t] : x.terms()) {
    const int level = interior_count(t.graph.graph);
    for (auto& [g, s] : contraction_terms(t.graph))
      if (interior_count(g.graph) == level) out.add(g, t.coeff * s);
  }
  return out;
}

InteriorHomotopy::InteriorHomotopy(const Graph& core, int root) : core_(core), root_(root) {
  core.validate();
  if (core.edges() == 0 || !core.connected())
    throw std::invalid_argument("interior homotopy: the core must be connected with an edge");
  if (root < 0 || root >= core.half_edges()) throw std::invalid_argument("interior homotopy: root is not a half-edge");
  core_key_ = canonicalize(core).canonical.key;
  const bool ribbon = core.flavor == GraphFlavor::ribbon;
  root_key_ = rooted_key(core, ribbon ? root : core.vertex_of[root]);
  const int n = ribbon ? core.half_edges() : core.vertices;
  for (int r = 0; r < n; ++r) placements_ += rooted_key(core, r) == root_key_;
}

std::vector<int> InteriorHomotopy::marks(const Graph& g) const {
  auto sub = interior_subgraph(g);
  std::vector<int> out;
  if (subgraph_key(sub.graph) != core_key_) return out;
  const bool ribbon = g.flavor == GraphFlavor::ribbon;
  const int n = ribbon ? sub.graph.half_edges() : sub.graph.vertices;
  for (int r = 0; r < n; ++r)
    if (rooted_key(sub.graph, r) == root_key_) out.push_back(ribbon ? sub.parent_half[r] : sub.parent_vertex[r]);
  return out;
}

bool InteriorHomotopy::in_piece(const Graph& g) const { return !marks(g).empty(); }

GraphChain InteriorHomotopy::apply(const GraphChain& x) const {
  if (x.flavor() != core_.flavor) throw std::invalid_argument("interior homotopy: flavor mismatch");
  GraphChain out(x.flavor());
  const bool ribbon = core_.flavor == GraphFlavor::ribbon;
  for (auto& [key, t] : x.terms()) {
    const Graph& g = t.graph.graph;
    auto m = marks(g);
    if (int(m.size()) != placements_) throw std::invalid_argument("interior homotopy: term outside the piece");
    const Rational w = t.coeff / placements_;
    for (int mark : m) {
      Graph s = ribbon ? add_leaf(g, g.vertex_of[mark], mark) : add_leaf(g, mark);
      auto back = contract_edge(s, g.half_edges());
      auto c = canonicalize(back->graph);
      if (c.canonical.key != key) throw std::logic_error("interior homotopy: the new edge does not contract back");
      out.add(s, w * (back->sign * c.sign));
    }
  }
  return out;
}

InteriorHomotopyReport check_interior_homotopy(const InteriorHomotopy& s, int max_edges) {
  const GraphFlavor fl = s.core().flavor;
  InteriorHomotopyReport rep;
  rep.flavor = fl;
  rep.core = to_compact(s.core());
  rep.root = s.root();
  rep.max_edges = max_edges;
  for (auto& cg : enumerate_connected(fl, {.max_edges = max_edges - 1})) {
    if (!s.in_piece(cg.graph)) continue;
    ++rep.graphs_checked;
    GraphChain x(fl);
    x.add(cg, 1);
    auto sx = s.apply(x);
    auto lhs = s.apply(gr_differential(x)) + gr_differential(sx);
    if (!(lhs == x)) ++rep.identity_failures;
    if (!s.apply(sx).is_zero()) ++rep.s_squared_nonzero;
  }
  return rep;
}

std::vector<InteriorHomotopy> interior_cores(GraphFlavor flavor, int max_core_edges, int max_edges) {
  std::map<GraphKey, Graph> cores;
  for (auto& cg : enumerate_connected(flavor, {.max_edges = max_edges})) {
    auto sub = interior_subgraph(cg.graph);
    if (sub.graph.edges() == 0 || sub.graph.edges() > max_core_edges || !sub.graph.connected()) continue;
    auto c = canonicalize(sub.graph);
    cores.emplace(c.canonical.key, c.canonical.graph);
  }
  std::vector<InteriorHomotopy> out;
  for (auto& [key, core] : cores) {
    const bool ribbon = flavor == GraphFlavor::ribbon;
    std::set<GraphKey> seen;
    for (int h = 0; h < core.half_edges(); ++h)
      if (seen.insert(rooted_key(core, ribbon ? h : core.vertex_of[h])).second) out.emplace_back(core, h);
  }
  return out;
}

bool interior_filtration_holds(GraphFlavor flavor, int max_edges) {
  for (auto& cg : enumerate_connected(flavor, {.max_edges = max_edges})) {
    const int level = interior_count(cg.graph);
    const GraphKey core = interior_key(cg.graph);
    for (auto& [g, s] : contraction_terms(cg)) {
      const int l = interior_count(g.graph);
      if (l > level || (l == level && interior_key(g.graph) != core)) return false;
    }
  }
  return true;
}

}  // namespace curvgraph
