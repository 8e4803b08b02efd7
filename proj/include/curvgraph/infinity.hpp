#pragma once

#include "curvgraph/multilinear.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace curvgraph {

/// Curved A∞ (associative) or L∞ (lie) structure on ΠV, truncated at arity_cap.
struct InfinityStructure {
  Flavor flavor = Flavor::associative;
  int arity_cap = 0;
  MultilinearFamily m;

  InfinityStructure() = default;
  InfinityStructure(GradedSpace space, Flavor flavor, int arity_cap);

  const GradedSpace& space() const { return m.space(); }
  int dim() const { return m.dim(); }
  /// m_0 as a coordinate vector of V.
  std::vector<Rational> curvature() const;

  /// Throws std::invalid_argument when some m_i is not odd, or a lie-flavor
  /// m_i is not symmetric, or a component exceeds the cap.
  void check_shape() const;
};

/// e^{ad ξ} followed by conjugation with an optional even linear isomorphism.
struct GaugeElement {
  MultilinearFamily xi;
  std::optional<RationalMatrix> linear;

  /// Throws std::invalid_argument when ξ has a constant or linear term or is not even.
  void check() const;
};

/// Components of m∘m in arities 0..A-1.
MultilinearFamily mc_residual(const InfinityStructure& s);

struct CyclicityViolation {
  int arity;
  std::vector<int> word;  // inputs followed by the paired basis vector
};

/// First basis word where (m_i(x_1..x_i), x_{i+1}) fails signed cyclic
/// invariance (or, lie flavor, Koszul symmetry), or nullopt.
std::optional<CyclicityViolation> find_cyclicity_violation(const InfinityStructure& s, const InnerProduct& ip);
bool is_cyclic(const InfinityStructure& s, const InnerProduct& ip);

InfinityStructure apply_gauge(const InfinityStructure& s, const GaugeElement& g);

/// d f = f∘c for the curvature c (coordinates in V, even, nonzero).
MultilinearFamily curved_differential(const MultilinearFamily& f, std::span<const Rational> c, Flavor flavor,
                                      int cap);

/// The functional dual to c in the basis obtained from the standard one by
/// replacing e_{j0} with c, where j0 is the lowest even index with c_{j0} ≠ 0.
std::vector<Rational> default_epsilon(const GradedSpace& space, std::span<const Rational> c);

/// s f(x_1..x_{n+1}) = ε(x_1) f(x_2..x_{n+1}) (associative) or its Koszul
/// symmetric version Σ_j ± ε(x_j) f(x̂_j) (lie). Requires ε(c) = 1 and ε = 0 on V_1.
MultilinearFamily homotopy_s(const MultilinearFamily& f, std::span<const Rational> epsilon,
                             std::span<const Rational> c, Flavor flavor);

/// Data for the cyclic homotopy: c, c′ with (c′, c) = 1, ε = (c′, -), and a
/// homogeneous basis {c} ∪ ker ε used to split forms into pieces B_k.
class CyclicSplitting {
 public:
  CyclicSplitting(const InnerProduct& ip, std::vector<Rational> c, std::vector<Rational> cprime);

  const InnerProduct& inner_product() const { return ip_; }
  const std::vector<Rational>& c() const { return c_; }
  const std::vector<Rational>& cprime() const { return cprime_; }
  const std::vector<Rational>& epsilon() const { return eps_; }
  int c_slot() const { return j0_; }

  /// Component of a form in B_k: words in the adapted basis with exactly k
  /// letters different from c.
  Tensor project_form(const Tensor& form, int k) const;
  /// Same, applied to maps through the pairing.
  Tensor project_map(const Tensor& f, int k) const;

  /// s′f(x_1..x_{i+1}) = Σ_j ± ε(x_j) f(x̂_j) + (-1)^{|x_1..x_{i+1}|} (f(x_1..x_i), x_{i+1}) c′.
  MultilinearFamily sprime(const MultilinearFamily& f) const;

  /// The cyclic average of ε^{i+1} c′ as a map of arity i: the generator of
  /// B_0 in arity i, zero for odd i.
  Tensor b0_generator(int arity) const;

 private:
  InnerProduct ip_;
  std::vector<Rational> c_;
  std::vector<Rational> cprime_;
  std::vector<Rational> eps_;
  int j0_ = -1;
  RationalMatrix basis_;
  RationalMatrix basis_inv_;
};

/// s′ for cyclic f; throws std::invalid_argument when f is not cyclic.
MultilinearFamily cyclic_homotopy_sprime(const MultilinearFamily& f, const InnerProduct& ip,
                                         std::span<const Rational> c, std::span<const Rational> cprime,
                                         Flavor flavor);

/// Eigenvalue of s′d + ds′ on B_k in the given flavor.
int sprime_eigenvalue(Flavor flavor, int k);

/// c/(c,c) when (c,c) ≠ 0, else a rescaled lowest even basis vector e_j with (c, e_j) ≠ 0.
std::vector<Rational> default_cprime(const InnerProduct& ip, std::span<const Rational> c);

struct NormalFormResult {
  InfinityStructure normal_form;
  GaugeElement gauge;
  /// Cyclic mode only: (m_0, m_0) followed by t_i = (m'_{2i}(c..c), c) for
  /// 2i ≤ A, read off the normal form m'. These are the gauge invariants.
  std::vector<Rational> invariants;
  /// Cyclic mode only: the same evaluation on the input structure. It agrees
  /// with `invariants` on normal forms but is not gauge invariant in general.
  std::vector<Rational> input_evaluation;
};

/// Throws std::domain_error when the curvature vanishes.
NormalFormResult normal_form_plain(const InfinityStructure& s);

/// Throws std::invalid_argument when s is not cyclic, std::domain_error when
/// the curvature vanishes.
NormalFormResult normal_form_cyclic(const InfinityStructure& s, const InnerProduct& ip,
                                    std::optional<std::vector<Rational>> cprime = std::nullopt);

/// (m_0, m_0), then (m_{2i}(c..c), c) for 2i ≤ A.
std::vector<Rational> cyclic_invariants(const InfinityStructure& s, const InnerProduct& ip);

enum class ModelKind {
  v_i,      // 1-dim even, (c,c) = 1, m_0 = c, m_{2i}(c..c) = c
  v_zero,   // m_0 = c only
  v_prime,  // 2-dim even, hyperbolic, m_0 = c, m_{2i}(c..c) = t_i c′
  v_t,      // 1-dim even, (c,c) = 1, m_0 = c, m_{2i}(c..c) = t_i c
};

struct ModelAlgebra {
  InfinityStructure structure;
  InnerProduct inner_product;
};

/// Models truncated at arity_cap; t lists t_1, t_2, ... .
ModelAlgebra model_algebra(ModelKind kind, int i, const std::vector<Rational>& t, Flavor flavor, int arity_cap);

/// Random even gauge element with arities 2..cap+1 and small integer entries;
/// cyclic for ip when given, symmetric in the lie flavor.
GaugeElement random_gauge(const GradedSpace& space, Flavor flavor, int cap, std::mt19937_64& rng,
                          const InnerProduct* ip = nullptr, double density = 0.5);

}  // namespace curvgraph
