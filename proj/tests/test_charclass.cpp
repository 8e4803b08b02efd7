#include "curvgraph/charclass.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace curvgraph;

namespace {

ModelAlgebra uncurved_m2() {
  GradedSpace sp(1, 0);
  RationalMatrix g(1, 1);
  g(0, 0) = 1;
  InfinityStructure s(sp, Flavor::associative, 4);
  s.m[2].at(0, 0) = 1;
  return {s, InnerProduct(sp, g)};
}

ModelAlgebra so3() {
  GradedSpace sp(3, 0);
  InfinityStructure s(sp, Flavor::lie, 4);
  for (int i = 0; i < 3; ++i) {
    std::vector<int> w{i, (i + 1) % 3};
    s.m[2].at(w, (i + 2) % 3) = 1;
    std::vector<int> r{(i + 1) % 3, i};
    s.m[2].at(r, (i + 2) % 3) = -1;
  }
  return {s, InnerProduct(sp, RationalMatrix::identity(3))};
}

// Models and cyclic gauge transforms of them.
std::vector<ModelAlgebra> sample_algebras(Flavor flavor, int cap, int gauged, std::mt19937_64& rng) {
  std::vector<ModelAlgebra> out;
  out.push_back(model_algebra(ModelKind::v_zero, 0, {}, flavor, cap));
  out.push_back(model_algebra(ModelKind::v_i, 1, {}, flavor, cap));
  out.push_back(model_algebra(ModelKind::v_prime, 0, {Rational(1), Rational(-2)}, flavor, cap));
  const std::size_t models = out.size();
  for (int k = 0; k < gauged; ++k) {
    const auto& base = out[std::size_t(k) % models];
    auto g = random_gauge(base.structure.space(), flavor, cap - 1, rng, &base.inner_product, 0.4);
    out.push_back({apply_gauge(base.structure, g), base.inner_product});
  }
  return out;
}

std::vector<std::vector<int>> random_ciliation(const Graph& g, std::mt19937_64& rng) {
  std::vector<std::vector<int>> out(g.vertices);
  for (int v = 0; v < g.vertices; ++v) {
    auto at = g.half_edges_at(v);
    if (g.flavor == GraphFlavor::ribbon)
      std::rotate(at.begin(), at.begin() + long(rng() % at.size()), at.end());
    else
      std::shuffle(at.begin(), at.end(), rng);
    out[v] = at;
  }
  return out;
}

SignedGraph random_relabel(const Graph& g, std::mt19937_64& rng) {
  std::vector<int> hm(g.half_edges()), vm(g.vertices);
  std::iota(hm.begin(), hm.end(), 0);
  std::iota(vm.begin(), vm.end(), 0);
  std::shuffle(hm.begin(), hm.end(), rng);
  std::shuffle(vm.begin(), vm.end(), rng);
  return relabel(g, hm, vm);
}

}  // namespace

TEST_CASE("contraction values") {
  auto v0 = model_algebra(ModelKind::v_zero, 0, {}, Flavor::associative, 4);
  CHECK(contract_graph(segment_graph(GraphFlavor::ribbon), v0.structure, v0.inner_product) == 1);
  auto v1 = model_algebra(ModelKind::v_i, 1, {}, Flavor::associative, 4);
  CHECK(abs(contract_graph(star_graph(GraphFlavor::ribbon, 3), v1.structure, v1.inner_product)) == 1);
  // the path has a bivalent vertex and m_1 = 0
  CHECK(contract_graph(path_graph(GraphFlavor::ribbon, 3), v1.structure, v1.inner_product) == 0);
  auto l0 = model_algebra(ModelKind::v_zero, 0, {}, Flavor::lie, 4);
  CHECK(contract_graph(segment_graph(GraphFlavor::commutative), l0.structure, l0.inner_product) == 1);

  CHECK_THROWS_AS(contract_graph(segment_graph(GraphFlavor::commutative), v0.structure, v0.inner_product),
                  std::invalid_argument);
  CHECK_THROWS_AS(contract_graph(star_graph(GraphFlavor::ribbon, 7), v1.structure, v1.inner_product),
                  std::invalid_argument);
  GradedSpace mixed(1, 2);
  InfinityStructure s(mixed, Flavor::associative, 2);
  CHECK_THROWS_AS(contract_graph(segment_graph(GraphFlavor::ribbon), s, InnerProduct::standard(mixed)),
                  std::invalid_argument);
}

TEST_CASE("contraction is independent of all choices") {
  std::mt19937_64 rng(11);
  for (auto flavor : {Flavor::associative, Flavor::lie}) {
    auto algs = sample_algebras(flavor, 4, 3, rng);
    auto basis = enumerate_connected(graph_flavor_for(flavor), {.max_edges = 4});
    // the Lie V' has isotropic curvature and only m_0, so every c_Γ vanishes there
    long nonzero = 0;
    for (auto& a : algs) {
      for (auto& cg : basis) {
        bool fits = true;
        for (int k : cg.graph.valences()) fits = fits && k - 1 <= a.structure.arity_cap;
        if (!fits) continue;
        Rational c = contract_graph(cg.graph, a.structure, a.inner_product);
        nonzero += c != 0;
        CHECK(contract_graph_slow(cg.graph, a.structure, a.inner_product, random_ciliation(cg.graph, rng)) == c);
        auto rel = random_relabel(cg.graph, rng);
        CHECK(rel.sign * contract_graph(rel.graph, a.structure, a.inner_product) == c);
        // swapping two half-edge labels reverses the orientation
        std::vector<int> hm(cg.graph.half_edges()), vm(cg.graph.vertices);
        std::iota(hm.begin(), hm.end(), 0);
        std::iota(vm.begin(), vm.end(), 0);
        std::swap(hm[0], hm[1]);
        CHECK(contract_graph(relabel(cg.graph, hm, vm).graph, a.structure, a.inner_product) == -c);
      }
    }
    CHECK(nonzero > 0);
  }
}

TEST_CASE("uncurved contractions") {
  // trivalent graphs only: leaves see m_0 = 0
  std::mt19937_64 rng(15);
  for (auto a : {uncurved_m2(), so3()}) {
    long nonzero = 0;
    for (auto& cg : enumerate_connected(graph_flavor_for(a.structure.flavor), {.max_edges = 6, .min_valence = 3})) {
      if (std::ranges::max(cg.graph.valences()) > 3) continue;
      Rational c = contract_graph(cg.graph, a.structure, a.inner_product);
      nonzero += c != 0;
      CHECK(contract_graph_slow(cg.graph, a.structure, a.inner_product, random_ciliation(cg.graph, rng)) == c);
    }
    CHECK(nonzero > 0);
  }
}

TEST_CASE("orientation-reversing automorphisms force c to vanish") {
  std::mt19937_64 rng(12);
  for (auto flavor : {Flavor::associative, Flavor::lie}) {
    const GraphFlavor gf = graph_flavor_for(flavor);
    auto algs = sample_algebras(flavor, 4, 3, rng);
    long zeros = 0;
    for (auto& cg : enumerate_connected(gf, {.max_edges = 3}))
      for (int v = 0; v < cg.graph.vertices; ++v)
        for (int h : cg.graph.half_edges_at(v)) {
          Graph g = add_leaf(cg.graph, v, gf == GraphFlavor::ribbon ? h : -1);
          if (!canonicalize(g).canonical.zero || std::ranges::max(g.valences()) > 5) continue;
          ++zeros;
          for (auto& a : algs) CHECK(contract_graph(g, a.structure, a.inner_product) == 0);
        }
    CHECK(zeros > 0);
  }
}

TEST_CASE("characteristic classes of the models") {
  auto v0 = model_algebra(ModelKind::v_zero, 0, {}, Flavor::associative, 4);
  auto c0 = characteristic_class(v0.structure, v0.inner_product, 3);
  REQUIRE(c0.size() == 1);
  CHECK(c0.coefficient(segment_graph(GraphFlavor::ribbon)) == Rational(1, 2));

  InfinityStructure zero(GradedSpace(2, 0), Flavor::associative, 4);
  auto vp = model_algebra(ModelKind::v_prime, 0, {Rational(1)}, Flavor::associative, 4);
  CHECK(characteristic_class(zero, vp.inner_product, 4).is_zero());

  auto v1 = model_algebra(ModelKind::v_i, 1, {}, Flavor::associative, 4);
  auto c1 = characteristic_class(v1.structure, v1.inner_product, 4);
  auto star = star_graph(GraphFlavor::ribbon, 3);
  CHECK(c1.coefficient(star) == contract_graph(star, v1.structure, v1.inner_product) / 3);
  CHECK(c1.coefficient(segment_graph(GraphFlavor::ribbon)) == Rational(1, 2));
  CHECK_THROWS_AS(characteristic_class(v1.structure, v1.inner_product, 4, 1, 3), resource_limit_error);
}

TEST_CASE("classes are cycles") {
  std::mt19937_64 rng(13);
  for (auto flavor : {Flavor::associative, Flavor::lie}) {
    auto algs = sample_algebras(flavor, 4, 6, rng);
    for (auto& a : algs) {
      REQUIRE(mc_residual(a.structure).is_zero());
      REQUIRE(is_cyclic(a.structure, a.inner_product));
      auto cls = characteristic_class(a.structure, a.inner_product, 5);
      CHECK(cycle_defect(cls, a.structure.arity_cap).is_zero());
    }
  }
  for (auto a : {uncurved_m2(), so3()}) {
    REQUIRE(mc_residual(a.structure).is_zero());
    REQUIRE(is_cyclic(a.structure, a.inner_product));
    CHECK(cycle_defect(characteristic_class(a.structure, a.inner_product, 5, 2), a.structure.arity_cap).is_zero());
  }
}

TEST_CASE("gauge transforms change the class by a boundary") {
  std::mt19937_64 rng(14);
  for (auto flavor : {Flavor::associative, Flavor::lie}) {
    auto algs = sample_algebras(flavor, 4, 0, rng);
    for (auto& a : algs) {
      auto g = random_gauge(a.structure.space(), flavor, 3, rng, &a.inner_product, 0.4);
      auto moved = apply_gauge(a.structure, g);
      auto diff = characteristic_class(moved, a.inner_product, 4) - characteristic_class(a.structure, a.inner_product, 4);
      GraphComplex cx(graph_flavor_for(flavor), 1);
      auto eta = cx.solve_boundary(diff, 5);
      REQUIRE(eta.has_value());
      CHECK(differential(*eta) == diff);
    }
  }
}

TEST_CASE("generator coefficients") {
  for (auto flavor : {Flavor::associative, Flavor::lie}) {
    auto v0 = model_algebra(ModelKind::v_zero, 0, {}, flavor, 4);
    auto cmp = compare_to_generators(characteristic_class(v0.structure, v0.inner_product, 4), 5);
    REQUIRE(cmp.has_value());
    CHECK(cmp->witness_verified);
    CHECK(cmp->lambda_unique);
    CHECK(cmp->lambda[0] == Rational(1, 2));
  }
  for (int i : {1, 2}) {
    auto v = model_algebra(ModelKind::v_i, i, {}, Flavor::associative, 4);
    auto cmp = compare_to_generators(characteristic_class(v.structure, v.inner_product, 5), 6);
    REQUIRE(cmp.has_value());
    REQUIRE(cmp->generators.size() == 3);
    CHECK(cmp->witness_verified);
    CHECK(cmp->lambda_unique);
    CHECK(cmp->lambda[0] == Rational(1, 2));
    CHECK(abs(cmp->lambda[std::size_t(i)]) == Rational(1, 2 * i + 1));
  }
  auto v1 = model_algebra(ModelKind::v_i, 1, {}, Flavor::associative, 4);
  CHECK_THROWS_AS(compare_to_generators(characteristic_class(v1.structure, v1.inner_product, 5), 5),
                  std::invalid_argument);
}

TEST_CASE("uncurved classes die in the stub complex") {
  for (auto a : {uncurved_m2(), so3()}) {
    auto cls = characteristic_class(a.structure, a.inner_product, 4, 2);
    REQUIRE_FALSE(cls.is_zero());
    GraphComplex uncurved(cls.flavor(), 2), curved(cls.flavor(), 1);
    CHECK_FALSE(uncurved.solve_boundary(cls, 5).has_value());
    auto eta = curved.solve_boundary(cls, 5);
    REQUIRE(eta.has_value());
    CHECK(differential(*eta) == cls);
  }
}
