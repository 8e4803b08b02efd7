#pragma once

#include "curvgraph/ce.hpp"
#include "curvgraph/complex.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace curvgraph {

/// Columns: flavor, min_valence, genus, degree, rank, basis_size,
/// window_valid. Ranks outside the window are left empty.
std::string homology_csv(const std::vector<HomologyReport>& reports);
nlohmann::json homology_json(const std::vector<HomologyReport>& reports);

/// List of {graph: compact canonical form, coeff: "p/q"} in key order.
nlohmann::json chain_to_json(const GraphChain& c);
/// Throws std::invalid_argument on malformed entries.
GraphChain chain_from_json(const nlohmann::json& doc, GraphFlavor flavor);

/// List of {factors: [basis indices], weight, degree, coeff: "p/q"}.
nlohmann::json ce_chain_to_json(const DerivationAlgebra& g, const CEChain& c);

}  // namespace curvgraph
