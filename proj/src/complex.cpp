#include "curvgraph/complex.hpp"

#include <algorithm>

namespace curvgraph {

void GraphChain::add_key(const GraphKey& key, const CanonicalGraph* g, const Rational& coeff) {
  if (coeff == 0) return;
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, GraphTerm{*g, coeff});
    return;
  }
  it->second.coeff += coeff;
  if (it->second.coeff == 0) terms_.erase(it);
}

void GraphChain::add(const Graph& g, const Rational& coeff) {
  if (g.flavor != flavor_) throw std::invalid_argument("graph chain: flavor mismatch");
  auto c = canonicalize(g);
  if (c.canonical.zero) return;
  add_key(c.canonical.key, &c.canonical, coeff * c.sign);
}

void GraphChain::add(const CanonicalGraph& g, const Rational& coeff) {
  if (g.graph.flavor != flavor_) throw std::invalid_argument("graph chain: flavor mismatch");
  if (g.zero) return;
  add_key(g.key, &g, coeff);
}

Rational GraphChain::coefficient(const Graph& g) const {
  auto c = canonicalize(g);
  if (c.canonical.zero) return 0;
  auto it = terms_.find(c.canonical.key);
  return it == terms_.end() ? Rational(0) : Rational(it->second.coeff * c.sign);
}

GraphChain GraphChain::component(int vertices, int edges) const {
  GraphChain out(flavor_);
  for (auto& [key, t] : terms_)
    if (t.graph.graph.vertices == vertices && t.graph.graph.edges() == edges) out.terms_.emplace(key, t);
  return out;
}

int GraphChain::max_edges() const {
  int m = -1;
  for (auto& [key, t] : terms_) m = std::max(m, t.graph.graph.edges());
  return m;
}

GraphChain& GraphChain::operator+=(const GraphChain& rhs) {
  if (rhs.flavor_ != flavor_) throw std::invalid_argument("graph chain: flavor mismatch");
  for (auto& [key, t] : rhs.terms_) add_key(key, &t.graph, t.coeff);
  return *this;
}

GraphChain& GraphChain::operator-=(const GraphChain& rhs) {
  if (rhs.flavor_ != flavor_) throw std::invalid_argument("graph chain: flavor mismatch");
  for (auto& [key, t] : rhs.terms_) add_key(key, &t.graph, -t.coeff);
  return *this;
}

GraphChain& GraphChain::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, t] : terms_) t.coeff *= s;
  return *this;
}

bool GraphChain::operator==(const GraphChain& rhs) const {
  if (flavor_ != rhs.flavor_ || terms_.size() != rhs.terms_.size()) return false;
  auto a = terms_.begin();
  auto b = rhs.terms_.begin();
  for (; a != terms_.end(); ++a, ++b)
    if (a->first != b->first || a->second.coeff != b->second.coeff) return false;
  return true;
}

std::vector<std::pair<CanonicalGraph, int>> contraction_terms(const CanonicalGraph& g) {
  std::map<GraphKey, std::pair<CanonicalGraph, int>> acc;
  for (int h : g.graph.edge_representatives()) {
    auto r = contract_edge(g.graph, h);
    if (!r) continue;
    auto c = canonicalize(r->graph);
    if (c.canonical.zero) continue;
    const int s = r->sign * c.sign;
    GraphKey key = c.canonical.key;
    auto it = acc.find(key);
    if (it == acc.end()) acc.emplace(std::move(key), std::make_pair(std::move(c.canonical), s));
    else it->second.second += s;
  }
  std::vector<std::pair<CanonicalGraph, int>> out;
  for (auto& [key, term] : acc)
    if (term.second != 0) out.push_back(std::move(term));
  return out;
}

GraphChain differential(const GraphChain& x) {
  GraphChain out(x.flavor());
  for (auto& [key, t] : x.terms())
    for (auto& [g, s] : contraction_terms(t.graph)) out.add(g, t.coeff * s);
  return out;
}

GraphComplex::GraphComplex(GraphFlavor flavor, int min_valence, long basis_cap)
    : flavor_(flavor), min_valence_(min_valence), basis_cap_(basis_cap) {
  if (min_valence != 1 && min_valence != 2) throw std::invalid_argument("graph complex: min_valence must be 1 or 2");
}

void GraphComplex::ensure(int genus, int vertices) {
  if (genus < 0 || vertices < 1) throw std::invalid_argument("graph complex: bad genus or vertex count");
  auto it = enumerated_.find(genus);
  if (it != enumerated_.end() && it->second >= vertices) return;
  const int max_edges = genus + vertices - 1;
  std::vector<CanonicalGraph> all;
  if (max_edges >= 1) {
    EnumerationBounds b;
    b.max_edges = max_edges;
    b.max_vertices = vertices;
    b.max_genus = genus;
    b.min_valence = min_valence_;
    all = enumerate_connected(flavor_, b);
  }
  for (int n = 1; n <= vertices; ++n) {
    bases_[{genus, n}].clear();
    index_[{genus, n}].clear();
  }
  for (auto& cg : all) {
    if (cg.graph.edges() - cg.graph.vertices + 1 != genus) continue;
    auto& list = bases_[{genus, cg.graph.vertices}];
    index_[{genus, cg.graph.vertices}].emplace(cg.key, int(list.size()));
    list.push_back(std::move(cg));
    if (basis_cap_ >= 0 && long(list.size()) > basis_cap_)
      throw resource_limit_error("graph complex: basis in genus " + std::to_string(genus) + " with " +
                                 std::to_string(list.back().graph.vertices) + " vertices exceeds the cap of " +
                                 std::to_string(basis_cap_));
  }
  enumerated_[genus] = vertices;
}

const std::vector<CanonicalGraph>& GraphComplex::basis(int genus, int vertices) {
  ensure(genus, vertices);
  return bases_[{genus, vertices}];
}

int GraphComplex::index_of(int genus, int vertices, const GraphKey& key) {
  ensure(genus, vertices);
  auto& idx = index_[{genus, vertices}];
  auto it = idx.find(key);
  return it == idx.end() ? -1 : it->second;
}

SparseRationalMatrix GraphComplex::differential_matrix(int genus, int vertices) {
  const auto& src = basis(genus, vertices);
  const int rows = vertices >= 2 ? int(basis(genus, vertices - 1).size()) : 0;
  SparseRationalMatrix d(rows, int(src.size()));
  for (int col = 0; col < int(src.size()); ++col)
    for (auto& [g, s] : contraction_terms(src[col])) {
      int row = index_of(genus, vertices - 1, g.key);
      if (row < 0) throw std::logic_error("graph complex: contraction left the basis");
      d.insert(row, col, s);
    }
  return d;
}

HomologyReport GraphComplex::homology(int genus, int max_vertices) {
  if (max_vertices < 2) throw std::invalid_argument("homology: max_vertices must be at least 2");
  HomologyReport rep;
  rep.flavor = flavor_;
  rep.min_valence = min_valence_;
  rep.genus = genus;
  rep.max_vertices = max_vertices;
  ensure(genus, max_vertices);
  std::vector<int> rank(max_vertices + 2, 0);  // rank of d out of degree n
  for (int n = 2; n <= max_vertices; ++n) rank[n] = differential_matrix(genus, n).rank();
  for (int n = 1; n <= max_vertices; ++n) {
    HomologyRow row;
    row.degree = n;
    row.basis_size = long(basis(genus, n).size());
    row.window_valid = n <= max_vertices - 1;
    if (row.window_valid) row.rank = int(row.basis_size) - rank[n] - rank[n + 1];
    rep.rows.push_back(row);
  }
  return rep;
}

std::optional<GraphChain> GraphComplex::solve_boundary(const GraphChain& x, int edge_window) {
  auto w = solve_boundary_modulo(x, {}, edge_window);
  if (!w) return std::nullopt;
  return std::move(w->eta);
}

std::optional<BoundaryWitness> GraphComplex::solve_boundary_modulo(const GraphChain& x,
                                                                   const std::vector<CanonicalGraph>& generators,
                                                                   int edge_window) {
  if (x.flavor() != flavor_) throw std::invalid_argument("boundary: flavor mismatch");
  using Block = std::pair<int, int>;  // genus, vertices of the target
  std::map<Block, std::vector<std::pair<int, Rational>>> targets;
  std::map<Block, std::vector<int>> gens_in;
  auto block_of = [&](const CanonicalGraph& g) {
    const int e = g.graph.edges();
    if (e >= edge_window)
      throw std::invalid_argument("boundary: a term with " + std::to_string(e) + " edges does not fit a window of " +
                                  std::to_string(edge_window) + " edges");
    return Block{e - g.graph.vertices + 1, g.graph.vertices};
  };
  for (auto& [key, t] : x.terms()) {
    Block b = block_of(t.graph);
    int row = index_of(b.first, b.second, key);
    if (row < 0) throw std::invalid_argument("boundary: a term lies outside this graph complex");
    targets[b].emplace_back(row, t.coeff);
  }
  for (int j = 0; j < int(generators.size()); ++j) {
    Block b = block_of(generators[j]);
    if (generators[j].zero || index_of(b.first, b.second, generators[j].key) < 0)
      throw std::invalid_argument("boundary: a generator lies outside this graph complex");
    gens_in[b].push_back(j);
    targets[b];
  }

  BoundaryWitness out;
  out.eta = GraphChain(flavor_);
  out.lambda.assign(generators.size(), 0);
  for (auto& [b, entries] : targets) {
    auto [genus, n] = b;
    const auto& rows = basis(genus, n);
    const auto& cols = basis(genus, n + 1);
    const auto& gens = gens_in[b];
    SparseRationalMatrix d = differential_matrix(genus, n + 1);
    SparseRationalMatrix a(int(rows.size()), int(cols.size() + gens.size()));
    for (auto& [rc, v] : d.entries()) a.insert(rc.first, rc.second, v);
    for (int k = 0; k < int(gens.size()); ++k)
      a.insert(index_of(genus, n, generators[gens[k]].key), int(cols.size()) + k, 1);
    std::vector<Rational> rhs(rows.size());
    for (auto& [row, v] : entries) rhs[row] = v;
    auto sol = a.solve(rhs);
    if (!sol) return std::nullopt;
    for (int c = 0; c < int(cols.size()); ++c)
      if ((*sol)[c] != 0) out.eta.add(cols[c], (*sol)[c]);
    for (int k = 0; k < int(gens.size()); ++k) out.lambda[gens[k]] = (*sol)[cols.size() + k];
    if (!gens.empty() && a.rank() != d.rank() + int(gens.size())) out.lambda_unique = false;
  }
  return out;
}

HomologyReport homology_ranks(GraphFlavor flavor, int min_valence, int genus, int max_vertices, long basis_cap) {
  GraphComplex cx(flavor, min_valence, basis_cap);
  return cx.homology(genus, max_vertices);
}

}  // namespace curvgraph
