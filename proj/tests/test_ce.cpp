#include "curvgraph/ce.hpp"

#include <doctest.h>

#include <random>

using namespace curvgraph;

namespace {

InnerProduct unit_pairing(const GradedSpace& v) {
  RationalMatrix g(v.dim(), v.dim());
  for (int i = 0; i < v.dim(); ++i) g(i, i) = 1;
  return InnerProduct(v, g);
}

std::vector<DerivationAlgebra> small_algebras(int cap) {
  std::vector<DerivationAlgebra> out;
  for (auto fl : {Flavor::associative, Flavor::lie})
    for (auto sp : {GradedSpace(1, 0), GradedSpace(0, 1), GradedSpace(2, 0), GradedSpace(1, 1), GradedSpace(0, 2)}) {
      out.emplace_back(sp, fl, cap, true);
      if (sp.dim_odd() % 2 == 0) out.emplace_back(sp, fl, cap, true, InnerProduct::standard(sp));
    }
  return out;
}

// [x, y] in coordinates through the cached structure constants.
std::map<int, Rational> bracket_coords(const DerivationAlgebra& g, const std::map<int, Rational>& x,
                                       const std::map<int, Rational>& y) {
  std::map<int, Rational> out;
  for (auto& [i, a] : x)
    for (auto& [j, b] : y)
      for (auto& [k, c] : g.bracket(i, j)) out[k] += a * b * c;
  std::erase_if(out, [](auto& kv) { return kv.second == 0; });
  return out;
}

CEChain random_chain(const DerivationAlgebra& g, int degree, int bound, std::mt19937_64& rng, int terms) {
  CEChain c;
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int t = 0; t < 40 * terms && int(c.size()) < terms; ++t) {
    std::vector<int> f;
    for (int k = 0; k < degree; ++k) f.push_back(int(rng() % std::size_t(g.size())));
    CEChain m;
    m.add(g, f, coef(rng));
    c += ce_window(g, m, bound);
  }
  return c;
}

CEChain degree_part(const CEChain& c, int n) {
  CEChain out;
  for (auto& [m, v] : c.terms())
    if (int(m.size()) == n) out.add_sorted(m, v);
  return out;
}

}  // namespace

TEST_CASE("derivation algebra bases") {
  CHECK(DerivationAlgebra(GradedSpace(1, 0), Flavor::associative, 4, true).size() == 5);
  CHECK(DerivationAlgebra(GradedSpace(1, 0), Flavor::associative, 4, false).size() == 4);
  // cyclic forms on one odd letter need odd length
  DerivationAlgebra cyc(GradedSpace(1, 0), Flavor::associative, 4, true, unit_pairing(GradedSpace(1, 0)));
  REQUIRE(cyc.size() == 3);
  for (int i = 0; i < cyc.size(); ++i) CHECK(cyc.arity(i) % 2 == 0);
  DerivationAlgebra so3(GradedSpace(3, 0), Flavor::lie, 5, false, unit_pairing(GradedSpace(3, 0)));
  CHECK(so3.size() == 4);
  for (int i = 0; i + 1 < cyc.size(); ++i) CHECK(cyc.weight(i) <= cyc.weight(i + 1));
  CHECK_THROWS_AS(DerivationAlgebra(GradedSpace(1, 0), Flavor::associative, 4, true, unit_pairing(GradedSpace(2, 0))),
                  std::invalid_argument);
  MultilinearFamily outside(GradedSpace(1, 0), 1);
  outside[1].at(0L, 0) = 1;
  CHECK_THROWS_AS(cyc.coordinates(outside), std::invalid_argument);
  MultilinearFamily high(GradedSpace(1, 0), 5);
  high[5].at(0L, 0) = 1;
  CHECK_THROWS_AS(DerivationAlgebra(GradedSpace(1, 0), Flavor::associative, 4, true).coordinates(high),
                  std::invalid_argument);
}

TEST_CASE("bracket antisymmetry and Jacobi within the cap") {
  const int cap = 4;
  for (auto& g : small_algebras(cap)) {
    const int n = g.size();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::map<int, Rational> a, b;
        for (auto& [k, c] : g.bracket(i, j)) a[k] += c;
        for (auto& [k, c] : g.bracket(j, i)) b[k] -= (g.parity(i) && g.parity(j) ? -1 : 1) * c;
        CHECK(a == b);
      }
    long checked = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          const int ai = g.arity(i), aj = g.arity(j), ak = g.arity(k);
          // every intermediate bracket must stay within the cap
          if (ai + aj > cap + 1 || aj + ak > cap + 1 || ai + ak > cap + 1 || ai + aj + ak - 2 > cap) continue;
          std::map<int, Rational> x{{i, 1}}, y{{j, 1}}, z{{k, 1}};
          auto lhs = bracket_coords(g, x, bracket_coords(g, y, z));
          auto rhs = bracket_coords(g, bracket_coords(g, x, y), z);
          const int s = g.parity(i) && g.parity(j) ? -1 : 1;
          for (auto& [t, c] : bracket_coords(g, y, bracket_coords(g, x, z))) rhs[t] += s * c;
          std::erase_if(rhs, [](auto& kv) { return kv.second == 0; });
          ++checked;
          CHECK(lhs == rhs);
        }
    CHECK(checked > 0);
  }
}

TEST_CASE("CE differential on small chains") {
  DerivationAlgebra g(GradedSpace(1, 0), Flavor::associative, 4, true);
  for (int i = 0; i < g.size(); ++i) {
    CEChain c;
    c.add_sorted({i}, 1);
    CHECK(ce_differential(g, c).is_zero());
  }
  // Πx Πy ↦ (-1)^{|x|} Π[x, y]
  for (int i = 0; i < g.size(); ++i)
    for (int j = 0; j < g.size(); ++j) {
      if (g.arity(i) + g.arity(j) > 5) continue;
      CEChain c;
      c.add(g, {i, j}, 1);
      CEChain expect;
      if (!c.is_zero())
        for (auto& [k, v] : g.bracket(i, j)) expect.add_sorted({k}, (g.parity(i) ? -1 : 1) * v);
      CHECK(ce_differential(g, c) == expect);
    }
  CEChain too_heavy;
  too_heavy.add(g, {4, 4}, 1);
  CHECK_THROWS_AS(ce_differential(g, too_heavy), std::invalid_argument);
}

TEST_CASE("d_CE squares to zero") {
  const int cap = 4;
  for (auto& g : small_algebras(cap)) {
    if (g.space().dim() > 1) continue;
    // every block where d and d² are exact
    for (int n = 2; n <= 4; ++n)
      for (int w = -n; w + n - 1 <= cap; ++w)
        for (auto& m : ce_block(g, w, n)) {
          CEChain c;
          c.add_sorted(m, 1);
          CHECK(ce_differential(g, ce_differential(g, c)).is_zero());
        }
  }
  std::mt19937_64 rng(21);
  for (auto& g : small_algebras(cap))
    for (int trial = 0; trial < 5; ++trial) {
      auto c = random_chain(g, 4, cap + 1, rng, 6);
      CHECK(ce_differential(g, ce_differential(g, c)).is_zero());
    }
}

TEST_CASE("MC exponentials are cycles") {
  DerivationAlgebra g(GradedSpace(1, 0), Flavor::associative, 4, true);
  auto zero = mc_exponential(g, MultilinearFamily(GradedSpace(1, 0), 0), 4);
  REQUIRE(zero.size() == 1);
  CHECK(zero.coefficient({}) == 1);

  auto v0 = model_algebra(ModelKind::v_zero, 0, {}, Flavor::associative, 4);
  auto e0 = mc_exponential(g, v0.structure.m, 4);
  CHECK(ce_differential(g, degree_part(e0, 2)).is_zero());
  CHECK(degree_part(e0, 2).size() == 1);

  std::mt19937_64 rng(22);
  for (auto kind : {ModelKind::v_i, ModelKind::v_t}) {
    auto v = model_algebra(kind, 1, {Rational(3), Rational(-1)}, Flavor::associative, 4);
    for (int k = 0; k < 5; ++k) {
      MultilinearFamily xi(GradedSpace(1, 0), 3);
      xi[3].at(0L, 0) = int(rng() % 5) - 2;
      auto x = exp_ad(xi, v.structure.m, Flavor::associative, 4);
      auto e = mc_exponential(g, x, 5);
      CHECK(ce_differential(g, e).is_zero());
      for (int n = 0; n <= 5; ++n) CHECK(ce_differential(g, degree_part(e, n)).is_zero());
    }
  }
  // a product on a 2-dim space that is not associative
  DerivationAlgebra g2(GradedSpace(2, 0), Flavor::associative, 4, true);
  MultilinearFamily bad(GradedSpace(2, 0), 2);
  bad[2].at(std::vector<int>{0, 0}, 1) = 1;
  bad[2].at(std::vector<int>{1, 0}, 0) = 1;
  CHECK_THROWS_AS(mc_exponential(g2, bad, 2), std::invalid_argument);
  MultilinearFamily even(GradedSpace(1, 0), 1);
  even[1].at(0L, 0) = 1;
  CHECK_THROWS_AS(mc_exponential(g, even, 2), std::invalid_argument);
}

TEST_CASE("gauge-equivalent MC elements give homologous exponentials") {
  const int cap = 5;
  DerivationAlgebra g(GradedSpace(1, 0), Flavor::associative, cap, true);
  std::mt19937_64 rng(23);
  for (auto kind : {ModelKind::v_zero, ModelKind::v_i, ModelKind::v_t}) {
    auto v = model_algebra(kind, 1, {Rational(2)}, Flavor::associative, cap);
    for (int k = 0; k < 3; ++k) {
      MultilinearFamily xi(GradedSpace(1, 0), 5);
      xi[3].at(0L, 0) = int(rng() % 5) - 2;
      xi[5].at(0L, 0) = int(rng() % 5) - 2;
      auto moved = exp_ad(xi, v.structure.m, Flavor::associative, cap);
      auto diff = ce_window(g, mc_exponential(g, moved, 4) - mc_exponential(g, v.structure.m, 4), cap - 1);
      auto r = is_ce_boundary(g, diff);
      CHECK(r.boundary);
      CHECK(ce_differential(g, r.witness) == diff);
    }
  }
}

TEST_CASE("stabilization") {
  const int cap = 4;
  const GradedSpace v(1, 0), w(1, 0);
  DerivationAlgebra gv(v, Flavor::associative, cap, true);
  DerivationAlgebra gvw(v.direct_sum(w, nullptr, nullptr), Flavor::associative, cap, true);
  Stabilization same(gv, gv, GradedSpace(0, 0));
  std::mt19937_64 rng(24);
  for (int n = 1; n <= 3; ++n) {
    auto c = random_chain(gv, n, cap, rng, 5);
    CHECK(same.apply(c) == c);
  }

  Stabilization phi(gv, gvw, w);
  for (int n = 1; n <= 4; ++n) {
    auto c = random_chain(gv, n, cap + 1, rng, 6);
    CHECK(phi.apply(ce_differential(gv, c)) == ce_differential(gvw, phi.apply(c)));
  }
  for (int n = 1; n <= 3; ++n)
    for (int wt = -n; wt + n <= cap; ++wt) CHECK(phi.block_image_rank(wt, n) == int(ce_block(gv, wt, n).size()));

  auto v0 = model_algebra(ModelKind::v_zero, 0, {}, Flavor::associative, cap);
  auto e = mc_exponential(gv, v0.structure.m, 4);
  CHECK(phi.apply(e) == mc_exponential(gvw, phi.extend(v0.structure.m), 4));

  DerivationAlgebra other_cap(v.direct_sum(w, nullptr, nullptr), Flavor::associative, cap + 1, true);
  CHECK_THROWS_AS(Stabilization(gv, other_cap, w), std::invalid_argument);
  CHECK_THROWS_AS(Stabilization(gv, gvw, GradedSpace(0, 1)), std::invalid_argument);
}

TEST_CASE("CE boundary solver") {
  DerivationAlgebra g(GradedSpace(1, 0), Flavor::associative, 5, true);
  auto r0 = is_ce_boundary(g, CEChain());
  CHECK(r0.boundary);
  CHECK(r0.witness.is_zero());
  std::mt19937_64 rng(25);
  for (int n = 2; n <= 3; ++n) {
    auto y = random_chain(g, n, g.weight_cap(), rng, 5);
    auto dy = ce_differential(g, y);
    auto r = is_ce_boundary(g, dy);
    CHECK(r.boundary);
    CHECK(ce_differential(g, r.witness) == dy);
  }
  CEChain heavy;
  heavy.add(g, {3, 4}, 1);
  CHECK_THROWS_AS(is_ce_boundary(g, heavy), std::invalid_argument);
  CEChain lone;
  lone.add_sorted({0}, 1);
  CHECK_THROWS_AS(is_ce_boundary(g, lone, 0), resource_limit_error);
}

TEST_CASE("central element kills the stabilized unstable class") {
  const int cap = 5;
  const GradedSpace v(1, 0), w(1, 0);
  const InnerProduct ipv = unit_pairing(v);
  const InnerProduct ipvw = ipv.direct_sum(unit_pairing(w));
  DerivationAlgebra g0(v, Flavor::associative, cap, false, ipv);
  DerivationAlgebra g(v, Flavor::associative, cap, true, ipv);
  DerivationAlgebra h0(ipvw.space(), Flavor::associative, cap, false, ipvw);
  DerivationAlgebra h(ipvw.space(), Flavor::associative, cap, true, ipvw);
  MultilinearFamily x(v, 2);
  x[2].at(0L, 0) = 1;
  Stabilization to_g(g0, g, GradedSpace(0, 0)), to_h0(g0, h0, w), to_h(g0, h, w);

  // the constant derivation with value in W commutes with the extended structure
  std::vector<int> from_w;
  v.direct_sum(w, nullptr, &from_w);
  MultilinearFamily c(ipvw.space(), 0);
  c[0].at(0L, from_w[0]) = 1;
  CHECK(bracket(c, to_h.extend(x), Flavor::associative, cap).is_zero());

  auto x2 = degree_part(mc_exponential(g0, x, 2), 2);
  REQUIRE_FALSE(x2.is_zero());
  CHECK(ce_differential(g0, x2).is_zero());
  CHECK_FALSE(is_ce_boundary(g0, x2).boundary);
  CHECK_FALSE(is_ce_boundary(g, to_g.apply(x2)).boundary);
  CHECK_FALSE(is_ce_boundary(h0, to_h0.apply(x2)).boundary);
  auto r = is_ce_boundary(h, to_h.apply(x2));
  CHECK(r.boundary);
  CHECK(ce_differential(h, r.witness) == to_h.apply(x2));
}
