#include "curvgraph/graph.hpp"

#include "curvgraph/graded.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace curvgraph {

const char* to_string(GraphFlavor flavor) { return flavor == GraphFlavor::ribbon ? "ribbon" : "commutative"; }

GraphFlavor parse_graph_flavor(const std::string& text) {
  if (text == "ribbon") return GraphFlavor::ribbon;
  if (text == "commutative") return GraphFlavor::commutative;
  throw std::invalid_argument("unknown graph flavor '" + text + "'");
}

int Graph::valence(int v) const { return int(std::count(vertex_of.begin(), vertex_of.end(), v)); }

std::vector<int> Graph::valences() const {
  std::vector<int> out(vertices, 0);
  for (int v : vertex_of) ++out[v];
  return out;
}

std::vector<int> Graph::half_edges_at(int v) const {
  std::vector<int> out;
  for (int h = 0; h < half_edges(); ++h)
    if (vertex_of[h] == v) out.push_back(h);
  if (flavor == GraphFlavor::ribbon && !out.empty()) {
    std::vector<int> cyc{out.front()};
    for (int h = next[out.front()]; h != out.front(); h = next[h]) cyc.push_back(h);
    return cyc;
  }
  return out;
}

bool Graph::connected() const {
  if (vertices == 0) return false;
  std::vector<std::vector<int>> adj(vertices);
  for (int h = 0; h < half_edges(); ++h) adj[vertex_of[h]].push_back(vertex_of[partner[h]]);
  std::vector<char> seen(vertices, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : adj[v])
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
        stack.push_back(u);
      }
  }
  return count == vertices;
}

bool Graph::has_loop() const {
  for (int h = 0; h < half_edges(); ++h)
    if (vertex_of[h] == vertex_of[partner[h]]) return true;
  return false;
}

std::vector<int> Graph::edge_representatives() const {
  std::vector<int> out;
  for (int h = 0; h < half_edges(); ++h)
    if (h < partner[h]) out.push_back(h);
  return out;
}

void Graph::validate() const {
  const int nh = half_edges();
  if (vertices < 1) throw std::invalid_argument("graph: no vertices");
  if (int(partner.size()) != nh) throw std::invalid_argument("graph: partner table has the wrong length");
  if (nh % 2 != 0) throw std::invalid_argument("graph: odd number of half-edges");
  for (int h = 0; h < nh; ++h) {
    if (vertex_of[h] < 0 || vertex_of[h] >= vertices)
      throw std::invalid_argument("graph: half-edge " + std::to_string(h) + " has no valid vertex");
    int p = partner[h];
    if (p < 0 || p >= nh || p == h || partner[p] != h)
      throw std::invalid_argument("graph: partner of half-edge " + std::to_string(h) + " is not an involution");
  }
  auto val = valences();
  if (!(vertices == 1 && nh == 0))
    for (int v = 0; v < vertices; ++v)
      if (val[v] == 0) throw std::invalid_argument("graph: vertex " + std::to_string(v) + " has valence 0");
  if (flavor == GraphFlavor::ribbon) {
    if (int(next.size()) != nh) throw std::invalid_argument("graph: successor table has the wrong length");
    std::vector<char> seen(nh, 0);
    for (int h = 0; h < nh; ++h) {
      if (next[h] < 0 || next[h] >= nh || vertex_of[next[h]] != vertex_of[h])
        throw std::invalid_argument("graph: successor of half-edge " + std::to_string(h) + " leaves its vertex");
    }
    std::vector<char> vertex_done(vertices, 0);
    for (int h = 0; h < nh; ++h) {
      if (seen[h]) continue;
      int v = vertex_of[h];
      if (vertex_done[v]) throw std::invalid_argument("graph: cyclic order at vertex " + std::to_string(v) + " is not a single cycle");
      vertex_done[v] = 1;
      int len = 0;
      int x = h;
      do {
        if (seen[x]) throw std::invalid_argument("graph: successor table is not a permutation");
        seen[x] = 1;
        ++len;
        x = next[x];
      } while (x != h && len <= nh);
      if (x != h || len != val[v])
        throw std::invalid_argument("graph: cyclic order at vertex " + std::to_string(v) + " is not a single cycle");
    }
  } else if (!next.empty()) {
    throw std::invalid_argument("graph: commutative graph carries a cyclic order");
  }
}

SignedGraph relabel(const Graph& g, const std::vector<int>& half_map, const std::vector<int>& vertex_map) {
  const int nh = g.half_edges();
  SignedGraph out;
  out.graph.flavor = g.flavor;
  out.graph.vertices = g.vertices;
  out.graph.vertex_of.assign(nh, 0);
  out.graph.partner.assign(nh, 0);
  if (g.flavor == GraphFlavor::ribbon) out.graph.next.assign(nh, 0);
  for (int h = 0; h < nh; ++h) {
    out.graph.vertex_of[half_map[h]] = vertex_map[g.vertex_of[h]];
    out.graph.partner[half_map[h]] = half_map[g.partner[h]];
    if (g.flavor == GraphFlavor::ribbon) out.graph.next[half_map[h]] = half_map[g.next[h]];
  }
  out.sign = permutation_sign(half_map) * permutation_sign(vertex_map);
  return out;
}

namespace {

struct Labelling {
  std::vector<int> half_map;
  std::vector<int> vertex_map;
  GraphKey code;
};

// Traversal from a root half-edge: vertices and half-edges are labelled in
// discovery order, each vertex's half-edges consecutively along the cycle.
Labelling ribbon_from_root(const Graph& g, int root) {
  const int nh = g.half_edges();
  Labelling lab;
  lab.half_map.assign(nh, -1);
  lab.vertex_map.assign(g.vertices, -1);
  std::vector<int> order;
  order.reserve(nh);
  std::vector<int> valence;
  int next_vertex = 0;
  auto visit = [&](int start) {
    lab.vertex_map[g.vertex_of[start]] = next_vertex++;
    int len = 0;
    int h = start;
    do {
      lab.half_map[h] = int(order.size());
      order.push_back(h);
      ++len;
      h = g.next[h];
    } while (h != start);
    valence.push_back(len);
  };
  visit(root);
  for (std::size_t k = 0; k < order.size(); ++k) {
    int p = g.partner[order[k]];
    if (lab.vertex_map[g.vertex_of[p]] < 0) visit(p);
  }
  lab.code.reserve(2 + valence.size() + nh);
  lab.code.push_back(0);
  lab.code.push_back(g.vertices);
  lab.code.insert(lab.code.end(), valence.begin(), valence.end());
  for (int h : order) lab.code.push_back(lab.half_map[g.partner[h]]);
  return lab;
}

using Multiplicity = std::vector<std::vector<int>>;

Multiplicity multiplicities(const Graph& g) {
  Multiplicity m(g.vertices, std::vector<int>(g.vertices, 0));
  for (int h = 0; h < g.half_edges(); ++h) {
    int p = g.partner[h];
    if (h < p) {
      int u = g.vertex_of[h];
      int w = g.vertex_of[p];
      ++m[u][w];
      if (u != w) ++m[w][u];
    }
  }
  return m;
}

void refine(std::vector<int>& color, const Multiplicity& m) {
  const int n = int(color.size());
  int classes = int(std::set<int>(color.begin(), color.end()).size());
  while (true) {
    std::vector<std::vector<int>> sig(n);
    for (int v = 0; v < n; ++v) {
      std::vector<std::pair<int, int>> nb;
      for (int u = 0; u < n; ++u)
        if (u != v && m[v][u] > 0) nb.emplace_back(color[u], m[v][u]);
      std::sort(nb.begin(), nb.end());
      sig[v].push_back(color[v]);
      sig[v].push_back(m[v][v]);
      for (auto& [c, k] : nb) {
        sig[v].push_back(c);
        sig[v].push_back(k);
      }
    }
    auto sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int v = 0; v < n; ++v)
      color[v] = int(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
    if (int(sorted.size()) == classes) return;
    classes = int(sorted.size());
  }
}

// Canonical half-edge labels of the multigraph with the given vertex order:
// edges sorted by endpoint pair, half-edges grouped by vertex.
Labelling commutative_labelling(const Graph& g, const std::vector<int>& vertex_map) {
  const int nh = g.half_edges();
  const int n = g.vertices;
  struct End {
    int i, j, input_rep;
  };
  std::vector<End> edges;
  for (int h : g.edge_representatives()) {
    int i = vertex_map[g.vertex_of[h]];
    int j = vertex_map[g.vertex_of[g.partner[h]]];
    edges.push_back({std::min(i, j), std::max(i, j), h});
  }
  std::stable_sort(edges.begin(), edges.end(),
                   [](const End& a, const End& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });
  Labelling lab;
  lab.vertex_map = vertex_map;
  lab.half_map.assign(nh, -1);
  int label = 0;
  for (int x = 0; x < n; ++x)
    for (const End& e : edges) {
      int h = e.input_rep;
      int p = g.partner[h];
      // the end at the lower canonical vertex comes first; loops keep input order
      int lo = vertex_map[g.vertex_of[h]] <= vertex_map[g.vertex_of[p]] ? h : p;
      int hi = lo == h ? p : h;
      if (e.i == x) lab.half_map[lo] = label++;
      if (e.j == x) lab.half_map[hi] = label++;
    }
  lab.code.reserve(2 + n * (n + 1) / 2);
  lab.code.push_back(1);
  lab.code.push_back(n);
  std::vector<int> inv(n);
  for (int v = 0; v < n; ++v) inv[vertex_map[v]] = v;
  auto m = multiplicities(g);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) lab.code.push_back(m[inv[i]][inv[j]]);
  return lab;
}

struct Search {
  const Graph* g = nullptr;
  const Multiplicity* m = nullptr;
  bool have = false;
  Labelling best;
  int best_sign = 0;
  long count = 0;
  bool conflict = false;

  void leaf(const std::vector<int>& color) {
    Labelling lab = commutative_labelling(*g, color);
    int sign = permutation_sign(lab.half_map) * permutation_sign(lab.vertex_map);
    if (!have || lab.code < best.code) {
      have = true;
      best = std::move(lab);
      best_sign = sign;
      count = 1;
      conflict = false;
    } else if (lab.code == best.code) {
      ++count;
      if (sign != best_sign) conflict = true;
    }
  }

  void run(std::vector<int> color) {
    refine(color, *m);
    const int n = int(color.size());
    std::vector<int> size(n, 0);
    for (int c : color) ++size[c];
    int target = -1;
    for (int c = 0; c < n; ++c)
      if (size[c] > 1) {
        target = c;
        break;
      }
    if (target < 0) {
      leaf(color);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (color[v] != target) continue;
      std::vector<int> split(n);
      for (int u = 0; u < n; ++u) split[u] = 2 * color[u] + (u == v ? 0 : 1);
      run(std::move(split));
    }
  }
};

long factorial(int k) {
  long f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

Canonicalization canonicalize(const Graph& g) {
  g.validate();
  if (!g.connected()) throw std::invalid_argument("graph: canonical forms require a connected graph");
  Canonicalization out;
  if (g.half_edges() == 0) {
    out.canonical.graph = g;
    out.canonical.key = {g.flavor == GraphFlavor::ribbon ? 0 : 1, 1};
    out.sign = 1;
    return out;
  }
  Labelling best;
  int best_sign = 0;
  long count = 0;
  bool conflict = false;
  if (g.flavor == GraphFlavor::ribbon) {
    bool have = false;
    for (int r = 0; r < g.half_edges(); ++r) {
      Labelling lab = ribbon_from_root(g, r);
      if (!have || lab.code < best.code) {
        int sign = permutation_sign(lab.half_map) * permutation_sign(lab.vertex_map);
        have = true;
        best = std::move(lab);
        best_sign = sign;
        count = 1;
        conflict = false;
      } else if (lab.code == best.code) {
        ++count;
        int sign = permutation_sign(lab.half_map) * permutation_sign(lab.vertex_map);
        if (sign != best_sign) conflict = true;
      }
    }
  } else {
    auto m = multiplicities(g);
    Search s;
    s.g = &g;
    s.m = &m;
    std::vector<int> color = g.valences();
    s.run(color);
    best = std::move(s.best);
    best_sign = s.best_sign;
    count = s.count;
    conflict = s.conflict;
    for (int i = 0; i < g.vertices; ++i) {
      count *= factorial(m[i][i]) << m[i][i];
      for (int j = i + 1; j < g.vertices; ++j) count *= factorial(m[i][j]);
    }
    if (g.has_loop()) conflict = true;
  }
  SignedGraph rel = relabel(g, best.half_map, best.vertex_map);
  out.canonical.graph = std::move(rel.graph);
  out.canonical.key = std::move(best.code);
  out.canonical.automorphisms = count;
  out.canonical.zero = conflict;
  out.sign = conflict ? 0 : best_sign;
  return out;
}

long automorphism_count(const Graph& g) { return canonicalize(g).canonical.automorphisms; }

GraphKey rooted_key(const Graph& g, int root) {
  g.validate();
  if (!g.connected()) throw std::invalid_argument("graph: rooted codes require a connected graph");
  if (g.flavor == GraphFlavor::ribbon) {
    if (root < 0 || root >= g.half_edges()) throw std::invalid_argument("graph: root is not a half-edge");
    return ribbon_from_root(g, root).code;
  }
  if (root < 0 || root >= g.vertices) throw std::invalid_argument("graph: root is not a vertex");
  auto m = multiplicities(g);
  Search s;
  s.g = &g;
  s.m = &m;
  std::vector<int> color = g.valences();
  for (int v = 0; v < g.vertices; ++v) color[v] = v == root ? 0 : color[v] + 1;
  s.run(color);
  s.best.code.push_back(s.best.vertex_map[root]);
  return s.best.code;
}

int genus(const Graph& g) {
  if (!g.connected()) throw std::invalid_argument("graph: genus requires a connected graph");
  return g.edges() - g.vertices + 1;
}

std::optional<SignedGraph> contract_edge(const Graph& g, int h1) {
  const int nh = g.half_edges();
  if (h1 < 0 || h1 >= nh) throw std::invalid_argument("graph: unknown edge");
  const int h2 = g.partner[h1];
  const int v1 = g.vertex_of[h1];
  const int v2 = g.vertex_of[h2];
  if (v1 == v2) return std::nullopt;
  auto val = g.valences();
  if (val[v1] + val[v2] == 2) return std::nullopt;

  std::vector<int> order_h{h1, h2};
  for (int h = 0; h < nh; ++h)
    if (h != h1 && h != h2) order_h.push_back(h);
  std::vector<int> order_v{v1, v2};
  for (int v = 0; v < g.vertices; ++v)
    if (v != v1 && v != v2) order_v.push_back(v);

  std::vector<int> new_h(nh, -1);
  for (int k = 2; k < nh; ++k) new_h[order_h[k]] = k - 2;
  std::vector<int> new_v(g.vertices, -1);
  new_v[v1] = new_v[v2] = 0;
  for (int k = 2; k < g.vertices; ++k) new_v[order_v[k]] = k - 1;

  SignedGraph out;
  out.sign = permutation_sign(order_h) * permutation_sign(order_v);
  Graph& r = out.graph;
  r.flavor = g.flavor;
  r.vertices = g.vertices - 1;
  r.vertex_of.assign(nh - 2, 0);
  r.partner.assign(nh - 2, 0);
  for (int h = 0; h < nh; ++h) {
    if (new_h[h] < 0) continue;
    r.vertex_of[new_h[h]] = new_v[g.vertex_of[h]];
    r.partner[new_h[h]] = new_h[g.partner[h]];
  }
  if (g.flavor == GraphFlavor::ribbon) {
    r.next.assign(nh - 2, 0);
    for (int h = 0; h < nh; ++h)
      if (new_h[h] >= 0 && g.vertex_of[h] != v1 && g.vertex_of[h] != v2) r.next[new_h[h]] = new_h[g.next[h]];
    // merged cycle (a_1..a_{i-1}, b_1..b_{j-1}) with a_i = h1, b_j = h2
    std::vector<int> cyc;
    for (int h = g.next[h1]; h != h1; h = g.next[h]) cyc.push_back(new_h[h]);
    for (int h = g.next[h2]; h != h2; h = g.next[h]) cyc.push_back(new_h[h]);
    for (std::size_t k = 0; k < cyc.size(); ++k) r.next[cyc[k]] = cyc[(k + 1) % cyc.size()];
  }
  return out;
}

Graph add_leaf(const Graph& g, int v, int after) {
  Graph r = g;
  const int a = g.half_edges();
  const int b = a + 1;
  const int leaf = g.vertices;
  r.vertices += 1;
  r.vertex_of.push_back(v);
  r.vertex_of.push_back(leaf);
  r.partner.push_back(b);
  r.partner.push_back(a);
  if (g.flavor == GraphFlavor::ribbon) {
    r.next.push_back(a);
    r.next.push_back(b);
    if (after >= 0) {
      if (g.vertex_of[after] != v) throw std::invalid_argument("graph: insertion point is not at the vertex");
      r.next[a] = r.next[after];
      r.next[after] = a;
    } else if (g.valence(v) != 0) {
      throw std::invalid_argument("graph: ribbon leaf needs an insertion point");
    }
  }
  return r;
}

namespace {

// Adds an edge u-w. Ribbon insertion points may name the new half-edge at u
// (label 2E) when u == w.
Graph add_edge(const Graph& g, int u, int after_u, int w, int after_w) {
  Graph r = g;
  const int a = g.half_edges();
  const int b = a + 1;
  r.vertex_of.push_back(u);
  r.vertex_of.push_back(w);
  r.partner.push_back(b);
  r.partner.push_back(a);
  if (g.flavor == GraphFlavor::ribbon) {
    r.next.push_back(a);
    r.next.push_back(b);
    if (after_u >= 0) {
      r.next[a] = r.next[after_u];
      r.next[after_u] = a;
    }
    if (after_w >= 0) {
      r.next[b] = r.next[after_w];
      r.next[after_w] = b;
    }
  }
  return r;
}

Graph blank(GraphFlavor flavor, int vertices, int half_edges) {
  Graph g;
  g.flavor = flavor;
  g.vertices = vertices;
  g.vertex_of.assign(half_edges, 0);
  g.partner.assign(half_edges, 0);
  if (flavor == GraphFlavor::ribbon) g.next.assign(half_edges, 0);
  return g;
}

void close_cycles(Graph& g) {
  if (g.flavor != GraphFlavor::ribbon) return;
  for (int v = 0; v < g.vertices; ++v) {
    std::vector<int> hs;
    for (int h = 0; h < g.half_edges(); ++h)
      if (g.vertex_of[h] == v) hs.push_back(h);
    for (std::size_t k = 0; k < hs.size(); ++k) g.next[hs[k]] = hs[(k + 1) % hs.size()];
  }
}

void join(Graph& g, int h, int v, int p, int w) {
  g.vertex_of[h] = v;
  g.vertex_of[p] = w;
  g.partner[h] = p;
  g.partner[p] = h;
}

}  // namespace

Graph segment_graph(GraphFlavor flavor) {
  Graph g = blank(flavor, 2, 2);
  join(g, 0, 0, 1, 1);
  close_cycles(g);
  return g;
}

Graph loop_graph(GraphFlavor flavor) {
  Graph g = blank(flavor, 1, 2);
  join(g, 0, 0, 1, 0);
  close_cycles(g);
  return g;
}

Graph path_graph(GraphFlavor flavor, int vertices) {
  if (vertices < 2) throw std::invalid_argument("graph: a path needs two vertices");
  Graph g = blank(flavor, vertices, 2 * (vertices - 1));
  for (int k = 0; k + 1 < vertices; ++k) join(g, 2 * k, k, 2 * k + 1, k + 1);
  close_cycles(g);
  return g;
}

Graph star_graph(GraphFlavor flavor, int valence) {
  if (valence < 1) throw std::invalid_argument("graph: a star needs a leaf");
  Graph g = blank(flavor, valence + 1, 2 * valence);
  for (int j = 0; j < valence; ++j) join(g, 2 * j, 0, 2 * j + 1, j + 1);
  close_cycles(g);
  return g;
}

Graph theta_graph(GraphFlavor flavor) {
  Graph g = blank(flavor, 2, 6);
  for (int j = 0; j < 3; ++j) join(g, 2 * j, 0, 2 * j + 1, 1);
  close_cycles(g);
  return g;
}

std::vector<CanonicalGraph> enumerate_connected(GraphFlavor flavor, const EnumerationBounds& bounds) {
  if (bounds.max_edges < 1) throw std::invalid_argument("enumeration: max_edges must be positive");
  const int max_vertices = bounds.max_vertices < 0 ? bounds.max_edges + 1 : bounds.max_vertices;
  const int max_genus = bounds.max_genus < 0 ? bounds.max_edges : bounds.max_genus;

  std::map<GraphKey, CanonicalGraph> level;
  {
    Graph point = blank(flavor, 1, 0);
    auto c = canonicalize(point);
    level.emplace(c.canonical.key, c.canonical);
  }
  std::vector<CanonicalGraph> out;
  for (int e = 1; e <= bounds.max_edges; ++e) {
    std::map<GraphKey, CanonicalGraph> next_level;
    auto offer = [&](const Graph& cand) {
      auto c = canonicalize(cand);
      next_level.try_emplace(c.canonical.key, std::move(c.canonical));
    };
    for (auto& [key, cg] : level) {
      const Graph& g = cg.graph;
      const int gen = g.edges() - g.vertices + 1;
      if (g.vertices < max_vertices) {
        for (int v = 0; v < g.vertices; ++v) {
          if (flavor == GraphFlavor::commutative || g.valence(v) == 0) {
            offer(add_leaf(g, v, -1));
          } else {
            for (int h : g.half_edges_at(v)) offer(add_leaf(g, v, h));
          }
        }
      }
      if (gen < max_genus) {
        for (int u = 0; u < g.vertices; ++u)
          for (int w = u; w < g.vertices; ++w) {
            if (flavor == GraphFlavor::commutative) {
              if (u != w) offer(add_edge(g, u, -1, w, -1));
              continue;
            }
            const int a = g.half_edges();
            std::vector<int> at_u = g.half_edges_at(u);
            if (at_u.empty()) at_u.push_back(-1);
            for (int x : at_u) {
              std::vector<int> at_w = g.half_edges_at(w);
              if (u == w) at_w.push_back(a);
              if (at_w.empty()) at_w.push_back(-1);
              for (int y : at_w) {
                offer(add_edge(g, u, x, w, y));
              }
            }
          }
      }
    }
    for (auto& [key, cg] : next_level) {
      if (cg.zero) continue;
      auto val = cg.graph.valences();
      if (*std::min_element(val.begin(), val.end()) < bounds.min_valence) continue;
      out.push_back(cg);
    }
    level = std::move(next_level);
  }
  std::sort(out.begin(), out.end(), [](const CanonicalGraph& a, const CanonicalGraph& b) {
    return std::make_tuple(a.graph.vertices, a.graph.edges(), std::cref(a.key)) <
           std::make_tuple(b.graph.vertices, b.graph.edges(), std::cref(b.key));
  });
  return out;
}

std::string to_text(const Graph& g) {
  std::ostringstream os;
  os << to_string(g.flavor) << ' ' << g.vertices << ' ' << g.half_edges() << '\n';
  for (int h = 0; h < g.half_edges(); ++h) {
    os << g.vertex_of[h] << ' ' << g.partner[h];
    if (g.flavor == GraphFlavor::ribbon) os << ' ' << g.next[h];
    os << '\n';
  }
  return os.str();
}

Graph parse_graph(const std::string& text) {
  std::istringstream is(text);
  std::string flavor;
  int vertices = 0;
  int nh = 0;
  if (!(is >> flavor >> vertices >> nh) || nh < 0) throw std::invalid_argument("graph text: bad header");
  Graph g = blank(parse_graph_flavor(flavor), vertices, nh);
  for (int h = 0; h < nh; ++h) {
    if (!(is >> g.vertex_of[h] >> g.partner[h])) throw std::invalid_argument("graph text: truncated half-edge list");
    if (g.flavor == GraphFlavor::ribbon && !(is >> g.next[h]))
      throw std::invalid_argument("graph text: missing successor");
  }
  std::string extra;
  if (is >> extra) throw std::invalid_argument("graph text: trailing data");
  g.validate();
  return g;
}

std::string to_compact(const Graph& g) {
  std::ostringstream os;
  os << (g.flavor == GraphFlavor::ribbon ? 'r' : 'c') << g.vertices << ':';
  for (int h = 0; h < g.half_edges(); ++h) {
    if (h) os << ',';
    os << g.vertex_of[h] << '.' << g.partner[h];
    if (g.flavor == GraphFlavor::ribbon) os << '.' << g.next[h];
  }
  return os.str();
}

Graph parse_compact(const std::string& text) {
  if (text.size() < 3 || (text[0] != 'r' && text[0] != 'c'))
    throw std::invalid_argument("graph code: bad flavor letter");
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("graph code: missing ':'");
  Graph g;
  g.flavor = text[0] == 'r' ? GraphFlavor::ribbon : GraphFlavor::commutative;
  try {
    g.vertices = std::stoi(text.substr(1, colon - 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("graph code: bad vertex count");
  }
  std::string body = text.substr(colon + 1);
  std::istringstream is(body);
  std::string item;
  while (std::getline(is, item, ',')) {
    std::vector<int> parts;
    std::istringstream ps(item);
    std::string num;
    while (std::getline(ps, num, '.')) {
      try {
        std::size_t used = 0;
        parts.push_back(std::stoi(num, &used));
        if (used != num.size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw std::invalid_argument("graph code: bad number '" + num + "'");
      }
    }
    const std::size_t want = g.flavor == GraphFlavor::ribbon ? 3 : 2;
    if (parts.size() != want) throw std::invalid_argument("graph code: bad half-edge entry '" + item + "'");
    g.vertex_of.push_back(parts[0]);
    g.partner.push_back(parts[1]);
    if (want == 3) g.next.push_back(parts[2]);
  }
  g.validate();
  return g;
}

}  // namespace curvgraph
