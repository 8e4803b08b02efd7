#include "curvgraph/infinity.hpp"

#include <stdexcept>
#include <string>

namespace curvgraph {

namespace {

bool all_zero(std::span<const Rational> v) {
  for (const auto& q : v)
    if (q != 0) return false;
  return true;
}

void require_even_vector(const GradedSpace& space, std::span<const Rational> v, const char* what) {
  if (int(v.size()) != space.dim()) throw std::invalid_argument(std::string(what) + ": wrong dimension");
  for (int j = 0; j < space.dim(); ++j)
    if (v[j] != 0 && space.parity(j) != 0) throw std::invalid_argument(std::string(what) + " is not even");
}

Rational apply_functional(std::span<const Rational> eps, std::span<const Rational> v) {
  Rational r = 0;
  for (std::size_t j = 0; j < eps.size(); ++j)
    if (eps[j] != 0 && v[j] != 0) r += eps[j] * v[j];
  return r;
}

MultilinearFamily constant_family(const GradedSpace& space, std::span<const Rational> c) {
  MultilinearFamily f(space, 0);
  for (int j = 0; j < space.dim(); ++j) f[0].at(0, j) = c[j];
  return f;
}

std::string word_text(const std::vector<int>& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s + ")";
}

// Σ_j (-1)^{|x_1..x_{j-1}|} ε(x_j) f(x̂_j) when `all_positions`, else the j = 1 term.
Tensor extract_epsilon(const Tensor& f, std::span<const Rational> eps, const std::vector<Parity>& spar,
                       bool all_positions) {
  const int d = f.dim();
  const int n = f.arity();
  Tensor out = Tensor::map(d, n + 1);
  std::vector<int> word(n + 1);
  f.for_each_nonzero([&](long w, int o, const Rational& v) {
    const auto y = f.decode(w);
    int prefix = 0;
    for (int j = 0; j <= (all_positions ? n : 0); ++j) {
      for (int x = 0; x < d; ++x) {
        if (eps[x] == 0) continue;
        for (int a = 0; a < j; ++a) word[a] = y[a];
        word[j] = x;
        for (int a = j; a < n; ++a) word[a + 1] = y[a];
        const Rational term = eps[x] * v;
        if (prefix & 1)
          out.at(word, o) -= term;
        else
          out.at(word, o) += term;
      }
      if (j < n) prefix += spar[y[j]];
    }
  });
  return out;
}

}  // namespace

InfinityStructure::InfinityStructure(GradedSpace space, Flavor f, int cap)
    : flavor(f), arity_cap(cap), m(std::move(space), cap) {
  if (cap < 0) throw std::invalid_argument("InfinityStructure: negative arity cap");
}

std::vector<Rational> InfinityStructure::curvature() const {
  std::vector<Rational> c(dim());
  for (int j = 0; j < dim(); ++j) c[j] = m[0].at(0, j);
  return c;
}

void InfinityStructure::check_shape() const {
  if (m.max_arity() > arity_cap && m.lowest_nonzero(arity_cap + 1) >= 0)
    throw std::invalid_argument("structure has a component above the arity cap");
  const MultilinearFamily even = m.parity_part(0);
  for (int k = 0; k <= m.max_arity(); ++k) {
    if (!even[k].is_zero())
      throw std::invalid_argument("m_" + std::to_string(k) + " is not odd on the parity-reversed space");
    if (flavor == Flavor::lie && !is_symmetric(m[k], space()))
      throw std::invalid_argument("m_" + std::to_string(k) + " is not graded symmetric");
  }
}

void GaugeElement::check() const {
  if (!xi[0].is_zero() || !xi[1].is_zero())
    throw std::invalid_argument("gauge element has a constant or linear term");
  if (!xi.parity_part(1).is_zero()) throw std::invalid_argument("gauge element is not even");
}

MultilinearFamily mc_residual(const InfinityStructure& s) {
  if (s.arity_cap < 1) return MultilinearFamily(s.space(), -1);
  return compose(s.m, s.m, s.flavor, s.arity_cap - 1);
}

std::optional<CyclicityViolation> find_cyclicity_violation(const InfinityStructure& s, const InnerProduct& ip) {
  if (!(ip.space() == s.space())) throw std::invalid_argument("inner product and structure dimensions differ");
  for (int k = 0; k <= s.m.max_arity(); ++k) {
    if (s.flavor == Flavor::lie && !is_symmetric(s.m[k], s.space())) {
      // Report the first word whose value differs from a symmetric image.
      Tensor sym = symmetrize_inputs(s.m[k], s.space());
      for (long w = 0; w < sym.words(); ++w)
        for (int o = 0; o < sym.out_dim(); ++o) {
          Rational expected = s.m[k].at(w, o);
          // k! copies of a symmetric entry
          for (int j = 2; j <= k; ++j) expected *= j;
          if (sym.at(w, o) != expected) {
            auto word = sym.decode(w);
            word.push_back(o);
            return CyclicityViolation{k, word};
          }
        }
    }
    const Tensor t = to_form(s.m[k], ip);
    const Tensor r = rotate_form(t, s.space());
    for (long w = 0; w < t.words(); ++w)
      if (t.at(w, 0) != r.at(w, 0)) return CyclicityViolation{k, t.decode(w)};
  }
  return std::nullopt;
}

bool is_cyclic(const InfinityStructure& s, const InnerProduct& ip) {
  return !find_cyclicity_violation(s, ip).has_value();
}

InfinityStructure apply_gauge(const InfinityStructure& s, const GaugeElement& g) {
  g.check();
  if (!(g.xi.space() == s.space())) throw std::invalid_argument("apply_gauge: space mismatch");
  InfinityStructure out = s;
  out.m = exp_ad(g.xi, s.m, s.flavor, s.arity_cap);
  if (g.linear) out.m = conjugate_linear(out.m, *g.linear);
  return out;
}

MultilinearFamily curved_differential(const MultilinearFamily& f, std::span<const Rational> c, Flavor flavor,
                                      int cap) {
  require_even_vector(f.space(), c, "curvature");
  if (all_zero(c)) throw std::invalid_argument("curvature is zero");
  return compose(f, constant_family(f.space(), c), flavor, cap);
}

std::vector<Rational> default_epsilon(const GradedSpace& space, std::span<const Rational> c) {
  require_even_vector(space, c, "curvature");
  for (int j = 0; j < space.dim(); ++j)
    if (c[j] != 0) {
      std::vector<Rational> eps(space.dim());
      eps[j] = 1 / c[j];
      return eps;
    }
  throw std::invalid_argument("curvature is zero");
}

MultilinearFamily homotopy_s(const MultilinearFamily& f, std::span<const Rational> epsilon,
                             std::span<const Rational> c, Flavor flavor) {
  const GradedSpace& space = f.space();
  require_even_vector(space, c, "curvature");
  if (int(epsilon.size()) != space.dim()) throw std::invalid_argument("homotopy_s: wrong functional dimension");
  for (int j = 0; j < space.dim(); ++j)
    if (epsilon[j] != 0 && space.parity(j) != 0)
      throw std::invalid_argument("homotopy_s: functional does not vanish on the odd part");
  if (apply_functional(epsilon, c) != 1) throw std::invalid_argument("homotopy_s: epsilon(c) != 1");
  const auto spar = space.shifted_parities();
  MultilinearFamily out(space, f.max_arity() + 1);
  for (int k = 0; k <= f.max_arity(); ++k) {
    if (f[k].is_zero()) continue;
    out[k + 1] = extract_epsilon(f[k], epsilon, spar, flavor == Flavor::lie);
  }
  return out;
}

CyclicSplitting::CyclicSplitting(const InnerProduct& ip, std::vector<Rational> c, std::vector<Rational> cprime)
    : ip_(ip), c_(std::move(c)), cprime_(std::move(cprime)) {
  const GradedSpace& space = ip_.space();
  const int d = space.dim();
  require_even_vector(space, c_, "c");
  require_even_vector(space, cprime_, "c'");
  if (ip_.pair(cprime_, c_) != 1) throw std::invalid_argument("(c', c) != 1");
  eps_.assign(d, Rational(0));
  for (int j = 0; j < d; ++j)
    for (int a = 0; a < d; ++a)
      if (cprime_[a] != 0 && ip_(a, j) != 0) eps_[j] += cprime_[a] * ip_(a, j);
  for (int j = 0; j < d && j0_ < 0; ++j)
    if (eps_[j] != 0) j0_ = j;
  basis_ = RationalMatrix(d, d);
  for (int y = 0; y < d; ++y) {
    if (y == j0_) {
      for (int x = 0; x < d; ++x) basis_(x, y) = c_[x];
    } else {
      basis_(y, y) = 1;
      if (eps_[y] != 0) basis_(j0_, y) = -eps_[y] / eps_[j0_];
    }
  }
  auto inv = basis_.inverse();
  if (!inv) throw std::logic_error("adapted basis is singular");
  basis_inv_ = *inv;
}

Tensor CyclicSplitting::project_form(const Tensor& form, int k) const {
  Tensor adapted = change_form_basis(form, basis_);
  Tensor kept(adapted.dim(), adapted.arity(), adapted.out_dim());
  adapted.for_each_nonzero([&](long w, int o, const Rational& v) {
    const auto letters = adapted.decode(w);
    int others = 0;
    for (int x : letters) others += (x != j0_);
    if (others == k) kept.at(w, o) = v;
  });
  return change_form_basis(kept, basis_inv_);
}

Tensor CyclicSplitting::project_map(const Tensor& f, int k) const {
  return from_form(project_form(to_form(f, ip_), k), ip_);
}

MultilinearFamily CyclicSplitting::sprime(const MultilinearFamily& f) const {
  const GradedSpace& space = ip_.space();
  const int d = space.dim();
  const auto spar = space.shifted_parities();
  MultilinearFamily out(space, f.max_arity() + 1);
  for (int i = 0; i <= f.max_arity(); ++i) {
    if (f[i].is_zero()) continue;
    Tensor r = extract_epsilon(f[i], eps_, spar, true);
    const Tensor t = to_form(f[i], ip_);
    t.for_each_nonzero([&](long w, int, const Rational& v) {
      const auto letters = t.decode(w);
      const bool negate = word_parity(space, letters);
      for (int q = 0; q < d; ++q) {
        if (cprime_[q] == 0) continue;
        if (negate)
          r.at(w, q) -= v * cprime_[q];
        else
          r.at(w, q) += v * cprime_[q];
      }
    });
    out[i + 1] = std::move(r);
  }
  return out;
}

Tensor CyclicSplitting::b0_generator(int arity) const {
  const int d = ip_.space().dim();
  Tensor out = Tensor::map(d, arity);
  for (long w = 0; w < out.words(); ++w) {
    Rational coeff = 1;
    long rest = w;
    for (int slot = 0; slot < arity && coeff != 0; ++slot) {
      coeff *= eps_[rest % d];
      rest /= d;
    }
    if (coeff == 0) continue;
    for (int q = 0; q < d; ++q)
      if (cprime_[q] != 0) out.at(w, q) = coeff * cprime_[q];
  }
  // Cyclic average; the signed rotations cancel in odd arity.
  Tensor t = cyclic_symmetrize_form(to_form(out, ip_), ip_.space());
  t *= Rational(1, arity + 1);
  return from_form(t, ip_);
}

MultilinearFamily cyclic_homotopy_sprime(const MultilinearFamily& f, const InnerProduct& ip,
                                         std::span<const Rational> c, std::span<const Rational> cprime,
                                         Flavor flavor) {
  InfinityStructure probe(f.space(), flavor, f.max_arity());
  probe.m = f;
  if (auto bad = find_cyclicity_violation(probe, ip))
    throw std::invalid_argument("cyclic_homotopy_sprime: input not cyclic at word " + word_text(bad->word));
  CyclicSplitting split(ip, {c.begin(), c.end()}, {cprime.begin(), cprime.end()});
  return split.sprime(f);
}

int sprime_eigenvalue(Flavor flavor, int k) {
  if (k == 0) return 0;
  return flavor == Flavor::associative ? k : 1;
}

std::vector<Rational> default_cprime(const InnerProduct& ip, std::span<const Rational> c) {
  const GradedSpace& space = ip.space();
  require_even_vector(space, c, "curvature");
  const Rational cc = ip.pair(c, c);
  std::vector<Rational> out(space.dim());
  if (cc != 0) {
    for (int j = 0; j < space.dim(); ++j) out[j] = c[j] / cc;
    return out;
  }
  for (int j = 0; j < space.dim_even(); ++j) {
    std::vector<Rational> e(space.dim());
    e[j] = 1;
    const Rational p = ip.pair(c, e);
    if (p != 0) {
      out[j] = 1 / p;
      return out;
    }
  }
  throw std::invalid_argument("curvature is zero");
}

NormalFormResult normal_form_plain(const InfinityStructure& s) {
  const auto c = s.curvature();
  if (all_zero(c)) throw std::domain_error("curvature is zero: theorem inapplicable");
  const auto eps = default_epsilon(s.space(), c);
  GaugeElement g{MultilinearFamily(s.space(), s.arity_cap + 1), std::nullopt};
  InfinityStructure cur = s;
  for (int k = 1; k <= s.arity_cap; ++k) {
    if (cur.m[k].is_zero()) continue;
    MultilinearFamily z(s.space(), -1);
    z[k] = cur.m[k];
    g.xi -= homotopy_s(z, eps, c, s.flavor);
    cur = apply_gauge(s, g);
  }
  for (int k = 1; k <= s.arity_cap; ++k)
    if (!cur.m[k].is_zero())
      throw std::logic_error("normal_form_plain: arity " + std::to_string(k) + " survived reduction");
  return {cur, g, {}, {}};
}

std::vector<Rational> cyclic_invariants(const InfinityStructure& s, const InnerProduct& ip) {
  const auto c = s.curvature();
  std::vector<Rational> out{ip.pair(c, c)};
  for (int i = 1; 2 * i <= s.arity_cap; ++i) {
    std::vector<std::vector<Rational>> args(2 * i, c);
    out.push_back(ip.pair(evaluate(s.m[2 * i], args), c));
  }
  return out;
}

NormalFormResult normal_form_cyclic(const InfinityStructure& s, const InnerProduct& ip,
                                    std::optional<std::vector<Rational>> cprime) {
  if (auto bad = find_cyclicity_violation(s, ip))
    throw std::invalid_argument("cyclicity violated at word " + word_text(bad->word));
  const auto c = s.curvature();
  if (all_zero(c)) throw std::domain_error("curvature is zero: theorem inapplicable");
  if (!cprime) cprime = default_cprime(ip, c);
  CyclicSplitting split(ip, c, *cprime);

  GaugeElement g{MultilinearFamily(s.space(), s.arity_cap + 1), std::nullopt};
  InfinityStructure cur = s;
  for (int k = 1; k <= s.arity_cap; ++k) {
    if (cur.m[k].is_zero()) continue;
    const Tensor zplus = [&] {
      Tensor z = cur.m[k];
      z -= split.project_map(z, 0);
      return z;
    }();
    if (zplus.is_zero()) continue;
    MultilinearFamily y(s.space(), -1);
    y[k] = Tensor::map(s.dim(), k);
    for (int piece = 1; piece <= k + 1; ++piece) {
      Tensor part = split.project_map(zplus, piece);
      part *= Rational(1, sprime_eigenvalue(s.flavor, piece));
      y[k] += part;
    }
    g.xi -= split.sprime(y);
    cur = apply_gauge(s, g);
  }

  // Odd arities vanish; even arities are multiples of the B_0 generator.
  const auto invariants = cyclic_invariants(cur, ip);
  for (int k = 1; k <= s.arity_cap; ++k) {
    Tensor expected = Tensor::map(s.dim(), k);
    if (k % 2 == 0) {
      expected = split.b0_generator(k);
      expected *= invariants[k / 2];
    }
    if (!(cur.m[k] == expected))
      throw std::logic_error("normal_form_cyclic: arity " + std::to_string(k) + " differs from the normal form");
  }
  return {cur, g, invariants, cyclic_invariants(s, ip)};
}

ModelAlgebra model_algebra(ModelKind kind, int i, const std::vector<Rational>& t, Flavor flavor, int arity_cap) {
  if (i < 0) throw std::invalid_argument("model_algebra: negative index");
  const int d = kind == ModelKind::v_prime ? 2 : 1;
  GradedSpace space(d, 0);
  RationalMatrix gram(d, d);
  if (d == 1) {
    gram(0, 0) = 1;
  } else {
    gram(0, 1) = 1;
    gram(1, 0) = 1;
  }
  InfinityStructure s(space, flavor, arity_cap);
  s.m[0].at(0, 0) = 1;
  // Even arity ≥ 2 on a 1-dim odd ΠV is antisymmetric on a repeated letter.
  const bool higher_allowed = flavor == Flavor::associative;
  const long all_c = 0;
  switch (kind) {
    case ModelKind::v_zero:
      break;
    case ModelKind::v_i:
      if (i > 0 && 2 * i <= arity_cap && higher_allowed) s.m[2 * i].at(all_c, 0) = 1;
      break;
    case ModelKind::v_t:
    case ModelKind::v_prime:
      for (std::size_t j = 0; j < t.size(); ++j) {
        const int k = 2 * int(j + 1);
        if (k > arity_cap || !higher_allowed || t[j] == 0) continue;
        s.m[k].at(all_c, kind == ModelKind::v_prime ? 1 : 0) = t[j];
      }
      break;
  }
  return {std::move(s), InnerProduct(space, gram)};
}

GaugeElement random_gauge(const GradedSpace& space, Flavor flavor, int cap, std::mt19937_64& rng,
                          const InnerProduct* ip, double density) {
  const int d = space.dim();
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> value(-2, 2);
  GaugeElement g{MultilinearFamily(space, cap + 1), std::nullopt};
  for (int k = 2; k <= cap + 1; ++k) {
    if (ip) {
      Tensor t = Tensor::form(d, k + 1);
      for (long w = 0; w < t.words(); ++w) {
        if (word_parity(space, t.decode(w)) != 0) continue;
        if (coin(rng) < density) t.at(w, 0) = value(rng);
      }
      t = flavor == Flavor::lie ? symmetrize_inputs(t, space) : cyclic_symmetrize_form(t, space);
      g.xi[k] = from_form(t, *ip);
    } else {
      Tensor f = Tensor::map(d, k);
      for (long w = 0; w < f.words(); ++w) {
        const auto letters = f.decode(w);
        for (int o = 0; o < d; ++o)
          if (entry_parity(space, letters, o) == 0 && coin(rng) < density) f.at(w, o) = value(rng);
      }
      if (flavor == Flavor::lie) f = symmetrize_inputs(f, space);
      g.xi[k] = std::move(f);
    }
  }
  return g;
}

}  // namespace curvgraph
