#include "curvgraph/report.hpp"

#include <sstream>
#include <stdexcept>

namespace curvgraph {

using nlohmann::json;

std::string homology_csv(const std::vector<HomologyReport>& reports) {
  std::ostringstream out;
  out << "flavor,min_valence,genus,degree,rank,basis_size,window_valid\n";
  for (auto& r : reports)
    for (auto& row : r.rows) {
      out << to_string(r.flavor) << ',' << r.min_valence << ',' << r.genus << ',' << row.degree << ',';
      if (row.window_valid) out << row.rank;
      out << ',' << row.basis_size << ',' << (row.window_valid ? "true" : "false") << '\n';
    }
  return out.str();
}

json homology_json(const std::vector<HomologyReport>& reports) {
  json out = json::array();
  for (auto& r : reports) {
    json rows = json::array();
    for (auto& row : r.rows)
      rows.push_back({{"degree", row.degree},
                      {"rank", row.window_valid ? json(row.rank) : json(nullptr)},
                      {"basis_size", row.basis_size},
                      {"window_valid", row.window_valid}});
    out.push_back({{"flavor", to_string(r.flavor)},
                   {"min_valence", r.min_valence},
                   {"genus", r.genus},
                   {"max_vertices", r.max_vertices},
                   {"rows", rows}});
  }
  return out;
}

json chain_to_json(const GraphChain& c) {
  json out = json::array();
  for (auto& [key, t] : c.terms())
    out.push_back({{"graph", to_compact(t.graph.graph)}, {"coeff", to_string(t.coeff)}});
  return out;
}

GraphChain chain_from_json(const json& doc, GraphFlavor flavor) {
  if (!doc.is_array()) throw std::invalid_argument("graph chain: expected a list of terms");
  GraphChain out(flavor);
  for (auto& e : doc) {
    if (!e.is_object() || !e.contains("graph") || !e.contains("coeff") || !e.at("graph").is_string() ||
        !e.at("coeff").is_string())
      throw std::invalid_argument("graph chain: each term needs string fields graph and coeff");
    Graph g = parse_compact(e.at("graph").get<std::string>());
    if (g.flavor != flavor) throw std::invalid_argument("graph chain: flavor mismatch");
    out.add(g, parse_rational(e.at("coeff").get<std::string>()));
  }
  return out;
}

json ce_chain_to_json(const DerivationAlgebra& g, const CEChain& c) {
  json out = json::array();
  for (auto& [m, v] : c.terms())
    out.push_back({{"factors", m}, {"weight", ce_weight(g, m)}, {"degree", m.size()}, {"coeff", to_string(v)}});
  return out;
}

}  // namespace curvgraph
