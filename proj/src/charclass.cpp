#include "curvgraph/charclass.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace curvgraph {

GraphFlavor graph_flavor_for(Flavor flavor) {
  return flavor == Flavor::associative ? GraphFlavor::ribbon : GraphFlavor::commutative;
}

namespace {

void check_inputs(const Graph& g, const InfinityStructure& s, const InnerProduct& ip) {
  if (g.flavor != graph_flavor_for(s.flavor))
    throw std::invalid_argument("contract_graph: A∞ structures need ribbon graphs, L∞ structures commutative ones");
  if (s.space().dim_odd() != 0) throw std::invalid_argument("contract_graph: only purely even spaces are supported");
  if (!(ip.space() == s.space())) throw std::invalid_argument("contract_graph: inner product on a different space");
  for (int k : g.valences())
    if (k - 1 > s.arity_cap)
      throw std::invalid_argument("contract_graph: valence " + std::to_string(k) + " exceeds the arity cap");
}

// Pairing forms (m_{k-1}(..), -) per needed valence; empty tensor when m_{k-1} = 0.
std::map<int, Tensor> vertex_forms(const Graph& g, const InfinityStructure& s, const InnerProduct& ip) {
  std::map<int, Tensor> out;
  for (int k : g.valences())
    if (!out.count(k)) out.emplace(k, s.m[k - 1].is_zero() ? Tensor() : to_form(s.m[k - 1], ip));
  return out;
}

int grouping_sign(const std::vector<std::vector<int>>& ciliation) {
  std::vector<int> grouped;
  for (auto& c : ciliation) grouped.insert(grouped.end(), c.begin(), c.end());
  return permutation_sign(grouped);
}

struct Contraction {
  const Graph* g;
  const std::vector<std::vector<int>>* cil;
  std::vector<const Tensor*> form;  // per vertex
  std::vector<int> reps;            // one half-edge per edge
  std::vector<std::tuple<int, int, Rational>> f_entries;
  std::vector<int> letter;  // per half-edge
  Rational total = 0;

  void finish(const Rational& weight) {
    Rational value = weight;
    for (int v = 0; v < g->vertices && value != 0; ++v) {
      const auto& c = (*cil)[v];
      std::vector<int> word(c.size());
      for (std::size_t k = 0; k < c.size(); ++k) word[k] = letter[c[k]];
      value *= form[v]->at(word, 0);
    }
    total += value;
  }

  void run(std::size_t e, const Rational& weight) {
    if (e == reps.size()) {
      finish(weight);
      return;
    }
    const int h = reps[e];
    const int p = g->partner[h];
    for (auto& [a, b, f] : f_entries) {
      letter[h] = a;
      letter[p] = b;
      run(e + 1, weight * f);
    }
  }
};

}  // namespace

Rational contract_graph(const Graph& g, const InfinityStructure& s, const InnerProduct& ip) {
  g.validate();
  check_inputs(g, s, ip);
  auto forms = vertex_forms(g, s, ip);
  Contraction c;
  c.g = &g;
  std::vector<std::vector<int>> cil(g.vertices);
  for (int v = 0; v < g.vertices; ++v) {
    const Tensor& t = forms.at(g.valence(v));
    if (t.arity() == 0) return 0;
    c.form.push_back(&t);
    cil[v] = g.half_edges_at(v);
  }
  c.cil = &cil;
  c.reps = g.edge_representatives();
  const auto& f = ip.inverse_pairing();
  for (int a = 0; a < f.rows(); ++a)
    for (int b = 0; b < f.cols(); ++b)
      if (f(a, b) != 0) c.f_entries.emplace_back(a, b, f(a, b));
  c.letter.assign(g.half_edges(), 0);
  c.run(0, Rational(1));
  return c.total * grouping_sign(cil);
}

Rational contract_graph_slow(const Graph& g, const InfinityStructure& s, const InnerProduct& ip,
                             const std::vector<std::vector<int>>& ciliation) {
  g.validate();
  check_inputs(g, s, ip);
  if (int(ciliation.size()) != g.vertices) throw std::invalid_argument("contract_graph: one ciliation per vertex");
  for (int v = 0; v < g.vertices; ++v) {
    auto at = g.half_edges_at(v);
    auto given = ciliation[v];
    if (given.size() != at.size()) throw std::invalid_argument("contract_graph: ciliation misses half-edges");
    if (g.flavor == GraphFlavor::ribbon)
      for (std::size_t k = 0; k + 1 < given.size(); ++k)
        if (g.next[given[k]] != given[k + 1]) throw std::invalid_argument("contract_graph: ciliation breaks the cyclic order");
    std::sort(given.begin(), given.end());
    std::sort(at.begin(), at.end());
    if (given != at) throw std::invalid_argument("contract_graph: ciliation misses half-edges");
  }
  const int n = s.dim();
  const int nh = g.half_edges();
  const auto& f = ip.inverse_pairing();
  std::vector<Tensor> forms;
  for (int v = 0; v < g.vertices; ++v) forms.push_back(to_form(s.m[g.valence(v) - 1], ip));
  std::vector<int> letter(nh, 0);
  Rational total = 0;
  while (true) {
    Rational value = 1;
    for (int h = 0; h < nh && value != 0; ++h)
      if (h < g.partner[h]) value *= f(letter[h], letter[g.partner[h]]);
    for (int v = 0; v < g.vertices && value != 0; ++v) {
      std::vector<int> word;
      for (int h : ciliation[v]) word.push_back(letter[h]);
      value *= forms[v].at(word, 0);
    }
    total += value;
    int pos = 0;
    while (pos < nh && ++letter[pos] == n) letter[pos++] = 0;
    if (pos == nh) break;
  }
  return total * grouping_sign(ciliation);
}

GraphChain characteristic_class(const InfinityStructure& s, const InnerProduct& ip, int max_edges, int min_valence,
                                long basis_cap) {
  const GraphFlavor fl = graph_flavor_for(s.flavor);
  GraphChain out(fl);
  if (max_edges < 1) return out;
  auto basis = enumerate_connected(fl, {.max_edges = max_edges, .min_valence = min_valence});
  if (basis_cap >= 0 && long(basis.size()) > basis_cap)
    throw resource_limit_error("characteristic class: " + std::to_string(basis.size()) +
                               " graphs exceed the cap of " + std::to_string(basis_cap));
  for (auto& cg : basis) {
    bool fits = true;
    for (int k : cg.graph.valences()) fits = fits && k - 1 <= s.arity_cap;
    if (!fits) continue;
    Rational c = contract_graph(cg.graph, s, ip);
    if (c != 0) out.add(cg, c / cg.automorphisms);
  }
  return out;
}

GraphChain cycle_defect(const GraphChain& cls, int arity_cap) {
  GraphChain out(cls.flavor());
  const GraphChain d = differential(cls);
  for (auto& [key, t] : d.terms()) {
    auto val = t.graph.graph.valences();
    if (std::all_of(val.begin(), val.end(), [&](int k) { return k <= arity_cap; })) out.add(t.graph, t.coeff);
  }
  return out;
}

std::vector<CanonicalGraph> curved_generators(GraphFlavor flavor, int edge_window) {
  std::vector<CanonicalGraph> out;
  if (edge_window > 1) out.push_back(canonicalize(segment_graph(flavor)).canonical);
  if (flavor == GraphFlavor::ribbon)
    for (int valence = 3; valence < edge_window; valence += 2)
      out.push_back(canonicalize(star_graph(flavor, valence)).canonical);
  return out;
}

std::optional<GeneratorComparison> compare_to_generators(const GraphChain& cls, int edge_window, long basis_cap) {
  GraphComplex cx(cls.flavor(), 1, basis_cap);
  GeneratorComparison out;
  out.edge_window = edge_window;
  out.generators = curved_generators(cls.flavor(), edge_window);
  auto w = cx.solve_boundary_modulo(cls, out.generators, edge_window);
  if (!w) return std::nullopt;
  out.lambda = w->lambda;
  out.lambda_unique = w->lambda_unique;
  out.witness = std::move(w->eta);
  GraphChain rest = cls;
  for (std::size_t j = 0; j < out.generators.size(); ++j) {
    GraphChain g(cls.flavor());
    g.add(out.generators[j], out.lambda[j]);
    rest -= g;
  }
  out.witness_verified = differential(out.witness) == rest;
  return out;
}

}  // namespace curvgraph
