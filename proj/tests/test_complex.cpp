#include "curvgraph/complex.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace curvgraph;

namespace {

std::vector<int> ranks_in_window(const HomologyReport& rep) {
  std::vector<int> out;
  for (auto& row : rep.rows)
    if (row.window_valid) out.push_back(row.rank);
  return out;
}

}  // namespace

TEST_CASE("differential examples") {
  GraphChain seg(GraphFlavor::ribbon);
  seg.add(segment_graph(GraphFlavor::ribbon), 1);
  CHECK(seg.size() == 1);
  CHECK(differential(seg).is_zero());
  GraphChain star(GraphFlavor::ribbon);
  star.add(star_graph(GraphFlavor::ribbon, 3), 1);
  CHECK(differential(star).is_zero());
  GraphChain path(GraphFlavor::ribbon);
  path.add(path_graph(GraphFlavor::ribbon, 3), 5);
  CHECK(path.is_zero());
}

TEST_CASE("chain coefficients follow orientation") {
  Graph star = star_graph(GraphFlavor::ribbon, 5);
  GraphChain x(GraphFlavor::ribbon);
  x.add(star, Rational(2, 3));
  CHECK(x.coefficient(star) == Rational(2, 3));
  std::vector<int> hm(star.half_edges());
  std::iota(hm.begin(), hm.end(), 0);
  std::swap(hm[1], hm[3]);
  std::vector<int> vm(star.vertices);
  std::iota(vm.begin(), vm.end(), 0);
  auto rel = relabel(star, hm, vm);
  CHECK(rel.sign == -1);
  CHECK(x.coefficient(rel.graph) == Rational(-2, 3));
  x.add(rel.graph, Rational(2, 3));
  CHECK(x.is_zero());
}

TEST_CASE("d squares to zero on all small bases") {
  for (auto fl : {GraphFlavor::ribbon, GraphFlavor::commutative})
    for (int minval : {1, 2}) {
      long checked = 0;
      for (auto& cg : enumerate_connected(fl, {.max_edges = 4, .min_valence = minval})) {
        GraphChain x(fl);
        x.add(cg, 1);
        auto dx = differential(x);
        CHECK(differential(dx).is_zero());
        for (auto& [key, t] : dx.terms()) {
          CHECK(t.graph.graph.vertices == cg.graph.vertices - 1);
          CHECK(t.graph.graph.edges() == cg.graph.edges() - 1);
          CHECK(genus(t.graph.graph) == genus(cg.graph));
          auto val = t.graph.graph.valences();
          CHECK(*std::min_element(val.begin(), val.end()) >= minval);
        }
        ++checked;
      }
      CHECK(checked > 0);
    }
}

TEST_CASE("curved ribbon homology in genus 0 and 1") {
  auto g0 = homology_ranks(GraphFlavor::ribbon, 1, 0, 7);
  CHECK(ranks_in_window(g0) == std::vector<int>{0, 1, 0, 1, 0, 1});
  CHECK_FALSE(g0.rows.back().window_valid);
  CHECK(g0.rows.back().rank == -1);
  auto g1 = homology_ranks(GraphFlavor::ribbon, 1, 1, 5);
  for (int r : ranks_in_window(g1)) CHECK(r == 0);
}

TEST_CASE("curved commutative homology") {
  auto g0 = homology_ranks(GraphFlavor::commutative, 1, 0, 6);
  CHECK(ranks_in_window(g0) == std::vector<int>{0, 1, 0, 0, 0});
  auto g1 = homology_ranks(GraphFlavor::commutative, 1, 1, 5);
  for (int r : ranks_in_window(g1)) CHECK(r == 0);
}

TEST_CASE("homology ranks do not depend on basis order") {
  GraphComplex cx(GraphFlavor::ribbon, 1);
  std::mt19937_64 rng(3);
  for (int n = 2; n <= 6; ++n) {
    auto d = cx.differential_matrix(1, n);
    std::vector<int> rp(d.rows()), cp(d.cols());
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(cp.begin(), cp.end(), 0);
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    SparseRationalMatrix s(d.rows(), d.cols());
    for (auto& [rc, v] : d.entries()) s.insert(rp[rc.first], cp[rc.second], v);
    CHECK(s.rank() == d.rank());
  }
}

TEST_CASE("basis cap raises a resource error") {
  GraphComplex cx(GraphFlavor::ribbon, 1, 3);
  CHECK_THROWS_AS(cx.homology(1, 5), resource_limit_error);
}

TEST_CASE("boundary solving") {
  GraphComplex cx(GraphFlavor::ribbon, 1);
  auto zero = cx.solve_boundary(GraphChain(GraphFlavor::ribbon), 4);
  REQUIRE(zero.has_value());
  CHECK(zero->is_zero());

  GraphChain seg(GraphFlavor::ribbon);
  seg.add(segment_graph(GraphFlavor::ribbon), 1);
  CHECK_FALSE(cx.solve_boundary(seg, 4).has_value());
  CHECK_THROWS_AS(cx.solve_boundary(seg, 1), std::invalid_argument);

  GraphComplex cc(GraphFlavor::commutative, 1);
  GraphChain cseg(GraphFlavor::commutative);
  cseg.add(segment_graph(GraphFlavor::commutative), 1);
  CHECK_FALSE(cc.solve_boundary(cseg, 4).has_value());

  std::mt19937_64 rng(5);
  for (auto fl : {GraphFlavor::ribbon, GraphFlavor::commutative}) {
    GraphComplex c(fl, 1);
    auto all = enumerate_connected(fl, {.max_edges = 4, .max_genus = 1});
    for (int t = 0; t < 10; ++t) {
      GraphChain x(fl);
      for (int k = 0; k < 3; ++k) x.add(all[rng() % all.size()], frac(long(rng() % 7) - 3, 1 + long(rng() % 3)));
      auto dx = differential(x);
      auto eta = c.solve_boundary(dx, 4);
      REQUIRE(eta.has_value());
      CHECK(differential(*eta) == dx);
    }
  }
}

TEST_CASE("boundary modulo generators recovers the coefficient") {
  GraphComplex cx(GraphFlavor::ribbon, 1);
  auto star = canonicalize(star_graph(GraphFlavor::ribbon, 3)).canonical;
  auto all = enumerate_connected(GraphFlavor::ribbon, {.max_edges = 5, .max_genus = 0});
  GraphChain x(GraphFlavor::ribbon);
  x.add(star, Rational(3, 7));
  GraphChain extra(GraphFlavor::ribbon);
  for (auto& cg : all)
    if (cg.graph.edges() == 4) extra.add(cg, 1);
  x += differential(extra);
  auto w = cx.solve_boundary_modulo(x, {star}, 5);
  REQUIRE(w.has_value());
  CHECK(w->lambda_unique);
  CHECK(w->lambda[0] == Rational(3, 7));
  GraphChain gen(GraphFlavor::ribbon);
  gen.add(star, w->lambda[0]);
  CHECK(differential(w->eta) == x - gen);
}
