#include "curvgraph/multilinear.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace curvgraph;

namespace {

Tensor random_map(const GradedSpace& space, int arity, std::mt19937_64& rng, int parity = -1) {
  Tensor t = Tensor::map(space.dim(), arity);
  for (long w = 0; w < t.words(); ++w) {
    const auto letters = t.decode(w);
    for (int o = 0; o < space.dim(); ++o) {
      if (parity >= 0 && entry_parity(space, letters, o) != parity) continue;
      if (rng() % 2) t.at(w, o) = int(rng() % 5) - 2;
    }
  }
  return t;
}

// Every word of the given length, first letter most significant.
std::vector<std::vector<int>> all_words(int dim, int len) {
  std::vector<std::vector<int>> out;
  std::vector<int> w(len, 0);
  while (true) {
    out.push_back(w);
    int i = len - 1;
    while (i >= 0 && ++w[i] == dim) w[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

// (f∘g)(x) = Σ_k (-1)^{|g||x_1..x_k|} f(x_1..x_k, g(x_{k+1}..x_{k+b}), ..), evaluated per word.
Tensor oracle_assoc(const Tensor& f, const Tensor& g, const GradedSpace& space) {
  const int d = space.dim(), a = f.arity(), b = g.arity(), n = a + b - 1;
  Tensor out = Tensor::map(d, n);
  for (const auto& x : all_words(d, n))
    for (int k = 0; k + b <= n; ++k) {
      std::vector<int> inner(x.begin() + k, x.begin() + k + b);
      std::vector<int> pre(x.begin(), x.begin() + k);
      for (int p = 0; p < d; ++p) {
        const Rational gv = g.at(inner, p);
        if (gv == 0) continue;
        const int sign = (entry_parity(space, inner, p) & word_parity(space, pre)) ? -1 : 1;
        std::vector<int> outer = pre;
        outer.push_back(p);
        outer.insert(outer.end(), x.begin() + k + b, x.end());
        for (int o = 0; o < d; ++o) out.at(x, o) += sign * gv * f.at(outer, o);
      }
    }
  return out;
}

// Σ_{σ ∈ S_n} ε(σ) f(g(x_σ(1..b)), x_σ(b+1..n)) / (b!(n-b)!).
Tensor oracle_lie(const Tensor& f, const Tensor& g, const GradedSpace& space) {
  const int d = space.dim(), b = g.arity(), n = f.arity() + b - 1;
  const auto spar = space.shifted_parities();
  Tensor out = Tensor::map(d, n);
  Rational norm = 1;
  for (int j = 2; j <= b; ++j) norm *= j;
  for (int j = 2; j <= n - b; ++j) norm *= j;
  for (const auto& x : all_words(d, n)) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Parity> par(n);
    for (int i = 0; i < n; ++i) par[i] = spar[x[i]];
    do {
      std::vector<int> y(n);
      for (int i = 0; i < n; ++i) y[i] = x[perm[i]];
      const int sign = koszul_sign(perm, par);
      std::vector<int> inner(y.begin(), y.begin() + b);
      for (int p = 0; p < d; ++p) {
        const Rational gv = g.at(inner, p);
        if (gv == 0) continue;
        std::vector<int> outer{p};
        outer.insert(outer.end(), y.begin() + b, y.end());
        for (int o = 0; o < d; ++o) out.at(x, o) += sign * gv * f.at(outer, o) / norm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

MultilinearFamily single(const GradedSpace& space, const Tensor& t) {
  MultilinearFamily f(space, -1);
  f[t.arity()] = t;
  return f;
}

}  // namespace

TEST_CASE("associative composition agrees with the per-word oracle") {
  std::mt19937_64 rng(3);
  for (auto space : {GradedSpace(1, 1), GradedSpace(2, 1), GradedSpace(1, 0)})
    for (int a = 1; a <= 3; ++a)
      for (int b = 0; b <= 3; ++b) {
        Tensor f = random_map(space, a, rng), g = random_map(space, b, rng, int(rng() % 2));
        auto got = compose(single(space, f), single(space, g), Flavor::associative, 10);
        CHECK(got[a + b - 1] == oracle_assoc(f, g, space));
      }
}

TEST_CASE("lie composition agrees with the permutation-sum oracle") {
  std::mt19937_64 rng(5);
  for (auto space : {GradedSpace(1, 1), GradedSpace(2, 1), GradedSpace(0, 2)})
    for (int a = 1; a <= 3; ++a)
      for (int b = 0; b <= 3; ++b) {
        Tensor f = symmetrize_inputs(random_map(space, a, rng), space);
        Tensor g = symmetrize_inputs(random_map(space, b, rng, int(rng() % 2)), space);
        auto got = compose(single(space, f), single(space, g), Flavor::lie, 10);
        CHECK(got[a + b - 1] == oracle_lie(f, g, space));
        CHECK(is_symmetric(got[a + b - 1], space));
      }
}

TEST_CASE("bracket is graded antisymmetric and satisfies Jacobi") {
  std::mt19937_64 rng(9);
  GradedSpace space(1, 1);
  const int cap = 4;
  for (Flavor flavor : {Flavor::associative, Flavor::lie})
    for (int trial = 0; trial < 6; ++trial) {
      auto make = [&](Parity p) {
        MultilinearFamily f(space, -1);
        for (int k = 0; k <= 2; ++k) {
          Tensor t = random_map(space, k, rng, p);
          f[k] = flavor == Flavor::lie ? symmetrize_inputs(t, space) : t;
        }
        return f;
      };
      const Parity px = Parity(rng() % 2), py = Parity(rng() % 2), pz = Parity(rng() % 2);
      auto x = make(px), y = make(py), z = make(pz);
      auto xy = bracket(x, y, flavor, cap), yx = bracket(y, x, flavor, cap);
      if (px && py)
        CHECK(xy == yx);
      else
        CHECK(xy == Rational(-1) * yx);
      // [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
      auto lhs = bracket(x, bracket(y, z, flavor, cap), flavor, cap);
      auto rhs = bracket(xy, z, flavor, cap);
      auto last = bracket(y, bracket(x, z, flavor, cap), flavor, cap);
      if (px && py)
        rhs -= last;
      else
        rhs += last;
      CHECK(lhs == rhs);
    }
}

TEST_CASE("exp_ad is inverted by the negated gauge element") {
  std::mt19937_64 rng(13);
  GradedSpace space(2, 1);
  for (Flavor flavor : {Flavor::associative, Flavor::lie}) {
    MultilinearFamily xi(space, 3), m(space, 3);
    for (int k = 2; k <= 3; ++k) {
      Tensor t = random_map(space, k, rng, 0);
      xi[k] = flavor == Flavor::lie ? symmetrize_inputs(t, space) : t;
    }
    for (int k = 0; k <= 3; ++k) {
      Tensor t = random_map(space, k, rng, 1);
      m[k] = flavor == Flavor::lie ? symmetrize_inputs(t, space) : t;
    }
    auto there = exp_ad(xi, m, flavor, 3);
    auto back = exp_ad(Rational(-1) * xi, there, flavor, 3);
    CHECK(back == m);
    CHECK_THROWS_AS(exp_ad(m, m, flavor, 3), std::invalid_argument);
  }
}

TEST_CASE("linear conjugation round trip and evaluation") {
  std::mt19937_64 rng(17);
  GradedSpace space(2, 1);
  MultilinearFamily m(space, 2);
  for (int k = 0; k <= 2; ++k) m[k] = random_map(space, k, rng);
  RationalMatrix l(3, 3);
  l(0, 0) = 1;
  l(0, 1) = 2;
  l(1, 1) = 1;
  l(2, 2) = -3;
  auto conj = conjugate_linear(m, l);
  CHECK(conjugate_linear(conj, *l.inverse()) == m);
  // L f(L^{-1} x, L^{-1} y) on vectors
  std::vector<Rational> u{1, 2, 0}, v{0, 1, 1};
  auto linv = *l.inverse();
  auto apply = [](const RationalMatrix& a, const std::vector<Rational>& x) {
    std::vector<Rational> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j) r[i] += a(int(i), int(j)) * x[j];
    return r;
  };
  std::vector<std::vector<Rational>> pulled{apply(linv, u), apply(linv, v)}, direct{u, v};
  CHECK(evaluate(conj[2], direct) == apply(l, evaluate(m[2], pulled)));
  RationalMatrix odd_mix(3, 3);
  odd_mix(0, 2) = 1;
  odd_mix(1, 1) = 1;
  odd_mix(2, 0) = 1;
  CHECK_THROWS_AS(conjugate_linear(m, odd_mix), std::invalid_argument);
}

TEST_CASE("form rotation has order n and symmetrizations are invariant") {
  std::mt19937_64 rng(19);
  GradedSpace space(1, 2);
  for (int n = 1; n <= 4; ++n) {
    Tensor t = Tensor::form(space.dim(), n);
    for (long w = 0; w < t.words(); ++w) t.at(w, 0) = int(rng() % 5) - 2;
    Tensor r = t;
    for (int j = 0; j < n; ++j) r = rotate_form(r, space);
    CHECK(r == t);
    Tensor cyc = cyclic_symmetrize_form(t, space);
    CHECK(rotate_form(cyc, space) == cyc);
    CHECK(is_symmetric(symmetrize_inputs(t, space), space));
  }
}

TEST_CASE("forms and maps convert through the pairing") {
  std::mt19937_64 rng(23);
  GradedSpace space(1, 2);
  InnerProduct ip = InnerProduct::standard(space);
  for (int k = 0; k <= 3; ++k) {
    Tensor f = random_map(space, k, rng);
    CHECK(from_form(to_form(f, ip), ip) == f);
  }
  RationalMatrix basis(3, 3);
  basis(0, 0) = 2;
  basis(1, 1) = 1;
  basis(2, 1) = 1;
  basis(2, 2) = 1;
  Tensor t = to_form(random_map(space, 2, rng), ip);
  CHECK(change_form_basis(change_form_basis(t, basis), *basis.inverse()) == t);
}

TEST_CASE("symmetrization agrees with the sum over all permutations") {
  std::mt19937_64 rng(23);
  for (auto space : {GradedSpace(1, 1), GradedSpace(2, 1), GradedSpace(0, 2), GradedSpace(3, 0)})
    for (int n = 0; n <= 5; ++n) {
      Tensor t = random_map(space, n, rng);
      const auto spar = space.shifted_parities();
      Tensor expect = Tensor::map(space.dim(), n);
      std::vector<int> perm(static_cast<std::size_t>(n)), x(static_cast<std::size_t>(n));
      std::vector<Parity> par(static_cast<std::size_t>(n));
      t.for_each_nonzero([&](long w, int o, const Rational& v) {
        const auto y = t.decode(w);
        for (int i = 0; i < n; ++i) par[std::size_t(i)] = spar[std::size_t(y[std::size_t(i)])];
        std::iota(perm.begin(), perm.end(), 0);
        do {
          for (int a = 0; a < n; ++a) x[std::size_t(a)] = y[std::size_t(perm[std::size_t(a)])];
          expect.at(x, o) += koszul_sign(perm, par) * v;
        } while (std::next_permutation(perm.begin(), perm.end()));
      });
      CHECK(symmetrize_inputs(t, space) == expect);
    }
}
