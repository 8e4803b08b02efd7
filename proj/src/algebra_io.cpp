#include "curvgraph/algebra_io.hpp"

#include <set>
#include <stdexcept>

namespace curvgraph {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument("algebra file: " + what); }

int get_int(const json& doc, const char* key, int min) {
  if (!doc.contains(key)) fail(std::string("missing field '") + key + "'");
  const json& v = doc.at(key);
  if (!v.is_number_integer()) fail(std::string("field '") + key + "' is not an integer");
  const long long x = v.get<long long>();
  if (x < min || x > 1 << 20) fail(std::string("field '") + key + "' out of range");
  return int(x);
}

Rational get_rational(const json& v, const std::string& where) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::invalid_argument&) {
      fail(where + ": malformed rational '" + v.get<std::string>() + "'");
    }
  }
  if (v.is_number_integer()) return Rational(v.get<long>());
  fail(where + ": rationals are strings \"p/q\"");
}

}  // namespace

namespace {

json ops_json(const MultilinearFamily& f) {
  json ops = json::object();
  for (int a = 0; a <= f.max_arity(); ++a) {
    const Tensor& t = f[a];
    json entries = json::array();
    t.for_each_nonzero([&](long w, int o, const Rational& v) {
      entries.push_back({{"inputs", t.decode(w)}, {"output", o}, {"coeff", to_string(v)}});
    });
    if (!entries.empty()) ops[std::to_string(a)] = entries;
  }
  return ops;
}

json matrix_json(const RationalMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

json algebra_to_json(const InfinityStructure& s, const InnerProduct* ip) {
  json doc = json::object();
  doc["flavor"] = s.flavor == Flavor::associative ? "ainf" : "linf";
  doc["dim_even"] = s.space().dim_even();
  doc["dim_odd"] = s.space().dim_odd();
  doc["arity_cap"] = s.arity_cap;
  if (ip) doc["inner_product"] = matrix_json(ip->gram());
  doc["ops"] = ops_json(s.m.truncated(s.arity_cap));
  return doc;
}

json gauge_to_json(const GaugeElement& g) {
  json doc = json::object();
  doc["dim_even"] = g.xi.space().dim_even();
  doc["dim_odd"] = g.xi.space().dim_odd();
  doc["xi"] = ops_json(g.xi);
  doc["linear"] = g.linear ? matrix_json(*g.linear) : json(nullptr);
  return doc;
}

AlgebraFile algebra_from_json(const json& doc) {
  if (!doc.is_object()) fail("top level is not an object");
  if (!doc.contains("flavor") || !doc.at("flavor").is_string()) fail("missing field 'flavor'");
  const std::string fl = doc.at("flavor").get<std::string>();
  if (fl != "ainf" && fl != "linf") fail("flavor must be \"ainf\" or \"linf\", got \"" + fl + "\"");
  const Flavor flavor = fl == "ainf" ? Flavor::associative : Flavor::lie;
  const int de = get_int(doc, "dim_even", 0);
  const int dodd = get_int(doc, "dim_odd", 0);
  const int cap = get_int(doc, "arity_cap", 0);
  GradedSpace space(de, dodd);
  const int d = space.dim();
  AlgebraFile out{InfinityStructure(space, flavor, cap), std::nullopt};

  if (doc.contains("inner_product") && !doc.at("inner_product").is_null()) {
    const json& rows = doc.at("inner_product");
    if (!rows.is_array() || int(rows.size()) != d) fail("inner_product must have dim_even + dim_odd rows");
    RationalMatrix g(d, d);
    for (int i = 0; i < d; ++i) {
      if (!rows[i].is_array() || int(rows[i].size()) != d) fail("inner_product row " + std::to_string(i) + " has the wrong length");
      for (int j = 0; j < d; ++j)
        g(i, j) = get_rational(rows[i][j], "inner_product[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
    try {
      out.inner_product.emplace(space, g);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }

  if (!doc.contains("ops")) fail("missing field 'ops'");
  const json& ops = doc.at("ops");
  if (!ops.is_object()) fail("'ops' is not an object keyed by arity");
  for (auto& [key, entries] : ops.items()) {
    int a = -1;
    try {
      std::size_t used = 0;
      a = std::stoi(key, &used);
      if (used != key.size()) a = -1;
    } catch (const std::exception&) {
    }
    if (a < 0) fail("ops key '" + key + "' is not an arity");
    if (a > cap) fail("ops arity " + key + " exceeds arity_cap " + std::to_string(cap));
    if (!entries.is_array()) fail("ops[" + key + "] is not a list");
    Tensor& t = out.structure.m[a];
    std::set<std::pair<long, int>> seen;
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const json& e = entries[k];
      const std::string where = "ops[" + key + "][" + std::to_string(k) + "]";
      if (!e.is_object() || !e.contains("inputs") || !e.contains("output") || !e.contains("coeff"))
        fail(where + " needs inputs, output and coeff");
      const json& in = e.at("inputs");
      if (!in.is_array() || int(in.size()) != a) fail(where + ": expected " + std::to_string(a) + " inputs");
      std::vector<int> letters;
      for (const json& x : in) {
        if (!x.is_number_integer() || x.get<long>() < 0 || x.get<long>() >= d) fail(where + ": input index out of range");
        letters.push_back(x.get<int>());
      }
      const json& o = e.at("output");
      if (!o.is_number_integer() || o.get<long>() < 0 || o.get<long>() >= d) fail(where + ": output index out of range");
      const long w = t.encode(letters);
      if (!seen.emplace(w, o.get<int>()).second) fail(where + ": repeated entry");
      t.at(w, o.get<int>()) = get_rational(e.at("coeff"), where);
    }
  }
  try {
    out.structure.check_shape();
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  return out;
}

std::string write_algebra(const InfinityStructure& s, const InnerProduct* ip) {
  return algebra_to_json(s, ip).dump(2) + "\n";
}

AlgebraFile read_algebra(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("not valid JSON (") + e.what() + ")");
  }
  return algebra_from_json(doc);
}

}  // namespace curvgraph
