#pragma once

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace curvgraph {

struct VerifyOptions {
  std::uint64_t seed = 20240601;
  long basis_cap = -1;
};

/// Outcome of one acceptance check. `details` holds only exact data (counts,
/// ranks, rational strings), never timings, so reports are reproducible.
struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  nlohmann::json details = nlohmann::json::object();
};

CheckResult check_d_squared(const VerifyOptions& opt);
CheckResult check_ribbon_homology(const VerifyOptions& opt);
CheckResult check_commutative_homology(const VerifyOptions& opt);
CheckResult check_classes_are_cycles(const VerifyOptions& opt);
CheckResult check_generator_coefficients(const VerifyOptions& opt);
CheckResult check_uncurved_classes_die(const VerifyOptions& opt);
CheckResult check_normal_forms(const VerifyOptions& opt);
CheckResult check_homotopies(const VerifyOptions& opt);
CheckResult check_interior_vertex_homotopy(const VerifyOptions& opt);
/// The stabilized unstable class verdict is reported under details but does
/// not affect `passed`.
CheckResult check_ce_layer(const VerifyOptions& opt);

struct NamedCheck {
  int id;
  std::function<CheckResult(const VerifyOptions&)> run;
};

/// Checks 1..10 in order.
std::vector<NamedCheck> verify_checks();

/// {"seed", "checks": [...], "passed"} with deterministic key order.
nlohmann::json verify_report(const VerifyOptions& opt, const std::vector<CheckResult>& results);

}  // namespace curvgraph
