#pragma once

#include "curvgraph/infinity.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace curvgraph {

struct AlgebraFile {
  InfinityStructure structure;
  std::optional<InnerProduct> inner_product;
};

/// JSON document: flavor ("ainf" | "linf"), dim_even, dim_odd, arity_cap,
/// optional inner_product (rows of rational strings), and ops mapping each
/// arity to entries {inputs, output, coeff} in storage order.
nlohmann::json algebra_to_json(const InfinityStructure& s, const InnerProduct* ip = nullptr);

/// {dim_even, dim_odd, xi: arity -> entries as in ops, linear: rows or null}.
/// The gauge acts by e^{ad ξ} first, then by the linear map.
nlohmann::json gauge_to_json(const GaugeElement& g);

/// Throws std::invalid_argument naming the offending field or entry.
AlgebraFile algebra_from_json(const nlohmann::json& doc);

std::string write_algebra(const InfinityStructure& s, const InnerProduct* ip = nullptr);
AlgebraFile read_algebra(const std::string& text);

}  // namespace curvgraph
