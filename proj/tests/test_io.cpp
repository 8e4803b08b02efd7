#include "curvgraph/algebra_io.hpp"
#include "curvgraph/charclass.hpp"
#include "curvgraph/report.hpp"

#include <doctest.h>

#include <random>

using namespace curvgraph;

namespace {

std::string with(const std::string& base, const std::string& from, const std::string& to) {
  std::string s = base;
  auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  s.replace(pos, from.size(), to);
  return s;
}

const char* kMinimal = R"({"flavor": "ainf", "dim_even": 1, "dim_odd": 0, "arity_cap": 2,
  "inner_product": [["1"]],
  "ops": {"0": [{"inputs": [], "output": 0, "coeff": "1"}], "2": [{"inputs": [0, 0], "output": 0, "coeff": "3/6"}]}})";

}  // namespace

TEST_CASE("algebra files round trip bit-exactly") {
  std::mt19937_64 rng(31);
  for (auto flavor : {Flavor::associative, Flavor::lie})
    for (auto kind : {ModelKind::v_zero, ModelKind::v_i, ModelKind::v_prime, ModelKind::v_t}) {
      auto a = model_algebra(kind, 1, {Rational(5), frac(-2, 3)}, flavor, 4);
      auto g = random_gauge(a.structure.space(), flavor, 3, rng, &a.inner_product, 0.5);
      for (const auto& s : {a.structure, apply_gauge(a.structure, g)}) {
        const std::string text = write_algebra(s, &a.inner_product);
        auto back = read_algebra(text);
        CHECK(back.structure.m == s.m);
        CHECK(back.structure.flavor == s.flavor);
        CHECK(back.structure.arity_cap == s.arity_cap);
        REQUIRE(back.inner_product.has_value());
        CHECK(back.inner_product->gram() == a.inner_product.gram());
        CHECK(write_algebra(back.structure, &*back.inner_product) == text);
      }
    }
  auto parsed = read_algebra(kMinimal);
  CHECK(parsed.structure.m[2].at(0L, 0) == frac(1, 2));
  // rationals come back reduced
  CHECK(write_algebra(parsed.structure, &*parsed.inner_product).find("\"1/2\"") != std::string::npos);
  auto no_ip = read_algebra(with(kMinimal, R"("inner_product": [["1"]],)", ""));
  CHECK_FALSE(no_ip.inner_product.has_value());
}

TEST_CASE("algebra files are validated") {
  auto rejects = [](const std::string& text, const std::string& needle) {
    try {
      read_algebra(text);
      FAIL("accepted: " << text);
    } catch (const std::invalid_argument& e) {
      CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos, e.what());
    }
  };
  rejects("{", "not valid JSON");
  rejects(with(kMinimal, "\"ainf\"", "\"dga\""), "flavor");
  rejects(with(kMinimal, "\"arity_cap\": 2", "\"arity_cap\": 1"), "exceeds arity_cap");
  rejects(with(kMinimal, "\"output\": 0, \"coeff\": \"1\"", "\"output\": 3, \"coeff\": \"1\""), "output index");
  rejects(with(kMinimal, "\"3/6\"", "\"3/0\""), "malformed rational");
  rejects(with(kMinimal, "[0, 0]", "[0]"), "expected 2 inputs");
  rejects(with(kMinimal, "[[\"1\"]]", "[[\"1\", \"0\"]]"), "inner_product");
  rejects(with(kMinimal, "\"dim_even\": 1", "\"dim_even\": -1"), "dim_even");
  rejects(with(kMinimal, "\"ops\"", "\"opz\""), "missing field 'ops'");
  rejects(with(kMinimal, "[{\"inputs\": [0, 0], \"output\": 0, \"coeff\": \"3/6\"}]",
               "[{\"inputs\": [0, 0], \"output\": 0, \"coeff\": \"1\"}, {\"inputs\": [0, 0], \"output\": 0, \"coeff\": \"1\"}]"),
          "repeated entry");
  // m_1 on one odd letter is even
  rejects(with(kMinimal, "\"2\": [{\"inputs\": [0, 0]", "\"1\": [{\"inputs\": [0]"), "not odd");
  rejects(R"({"flavor": "linf", "dim_even": 2, "dim_odd": 0, "arity_cap": 2,
    "ops": {"2": [{"inputs": [0, 1], "output": 0, "coeff": "1"}]}})",
          "symmetric");
  rejects(R"({"flavor": "ainf", "dim_even": 1, "dim_odd": 1, "arity_cap": 0,
    "inner_product": [["1", "1"], ["1", "0"]], "ops": {}})",
          "not even");
}

TEST_CASE("graph chain JSON") {
  auto v1 = model_algebra(ModelKind::v_i, 1, {}, Flavor::associative, 4);
  auto cls = characteristic_class(v1.structure, v1.inner_product, 4);
  auto doc = chain_to_json(cls);
  REQUIRE(doc.size() == cls.size());
  CHECK(doc[0].at("coeff").is_string());
  CHECK(chain_from_json(doc, GraphFlavor::ribbon) == cls);
  CHECK(chain_to_json(chain_from_json(doc, GraphFlavor::ribbon)).dump() == doc.dump());
  CHECK_THROWS_AS(chain_from_json(doc, GraphFlavor::commutative), std::invalid_argument);
  CHECK_THROWS_AS(chain_from_json(nlohmann::json::object(), GraphFlavor::ribbon), std::invalid_argument);
}

TEST_CASE("homology tables") {
  auto r = homology_ranks(GraphFlavor::ribbon, 1, 0, 4);
  auto csv = homology_csv({r});
  CHECK(csv.rfind("flavor,min_valence,genus,degree,rank,basis_size,window_valid\n", 0) == 0);
  CHECK(csv.find("ribbon,1,0,2,1,") != std::string::npos);
  CHECK(csv.find("ribbon,1,0,4,,") != std::string::npos);
  auto doc = homology_json({r});
  REQUIRE(doc.size() == 1);
  CHECK(doc[0].at("rows").size() == r.rows.size());
  CHECK(doc[0].at("rows").back().at("rank").is_null());
}
