#pragma once

#include "curvgraph/complex.hpp"
#include "curvgraph/infinity.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace curvgraph {

/// Derivations of the completed tensor (associative) or symmetric (lie)
/// algebra on ΠV, i.e. families of maps (ΠV)^{⊗a} → ΠV with a ≤ weight_cap,
/// under the graded commutator. Optional restrictions: cyclic (pairing forms
/// cyclically invariant, resp. symmetric) and no constant term.
///
/// Weight of an arity-a element is a - 1. The bracket adds weights, so the
/// truncation is exact on every bracket whose result has arity ≤ weight_cap.
class DerivationAlgebra {
 public:
  /// Cyclic iff ip is given. Throws std::invalid_argument for ip on another space.
  DerivationAlgebra(GradedSpace space, Flavor flavor, int weight_cap, bool with_constants,
                    std::optional<InnerProduct> ip = std::nullopt);

  const GradedSpace& space() const { return space_; }
  Flavor flavor() const { return flavor_; }
  int weight_cap() const { return cap_; }
  bool with_constants() const { return with_constants_; }
  bool cyclic() const { return ip_.has_value(); }
  const std::optional<InnerProduct>& inner_product() const { return ip_; }

  int size() const { return int(basis_.size()); }
  const MultilinearFamily& element(int i) const { return basis_[std::size_t(i)]; }
  int arity(int i) const { return arity_[std::size_t(i)]; }
  int weight(int i) const { return arity_[std::size_t(i)] - 1; }
  /// Parity as a map on ΠV; the CE generator Πb_i has the opposite parity.
  Parity parity(int i) const { return parity_[std::size_t(i)]; }
  Parity shifted_parity(int i) const { return Parity(1 - parity_[std::size_t(i)]); }

  /// Coordinates of f in the basis; throws std::invalid_argument when f has
  /// a component above the cap or outside the subalgebra.
  std::vector<std::pair<int, Rational>> coordinates(const MultilinearFamily& f) const;
  MultilinearFamily combination(const std::vector<std::pair<int, Rational>>& coords) const;

  /// Coordinates of [b_i, b_j], cached; components above the cap are dropped.
  const std::vector<std::pair<int, Rational>>& bracket(int i, int j) const;

 private:
  GradedSpace space_;
  Flavor flavor_;
  int cap_;
  bool with_constants_;
  std::optional<InnerProduct> ip_;
  std::vector<MultilinearFamily> basis_;
  std::vector<int> arity_;
  std::vector<Parity> parity_;
  // per arity: (pivot entry, basis index) in pivot order
  std::vector<std::vector<std::pair<long, int>>> pivots_;
  mutable std::map<std::pair<int, int>, std::vector<std::pair<int, Rational>>> brackets_;
};

/// Graded-symmetric word in the CE generators Πb_i: sorted basis indices,
/// odd generators at most once.
using CEMonomial = std::vector<int>;

/// Element of the truncated Chevalley-Eilenberg chains S(Πg).
class CEChain {
 public:
  const std::map<CEMonomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coefficient(const CEMonomial& m) const;

  /// Adds coeff times the product of the given generators in this order.
  void add(const DerivationAlgebra& g, std::vector<int> factors, const Rational& coeff);
  /// Adds coeff times an already sorted monomial.
  void add_sorted(const CEMonomial& m, const Rational& coeff);

  CEChain& operator+=(const CEChain& rhs);
  CEChain& operator-=(const CEChain& rhs);
  CEChain& operator*=(const Rational& s);
  friend CEChain operator+(CEChain a, const CEChain& b) { return a += b; }
  friend CEChain operator-(CEChain a, const CEChain& b) { return a -= b; }
  friend CEChain operator*(const Rational& s, CEChain a) { return a *= s; }
  bool operator==(const CEChain&) const = default;

 private:
  std::map<CEMonomial, Rational> terms_;
};

int ce_weight(const DerivationAlgebra& g, const CEMonomial& m);

/// Graded-commutative product in S(Πg).
CEChain ce_product(const DerivationAlgebra& g, const CEChain& a, const CEChain& b);

/// The degree-one chain Πx for x in g.
CEChain ce_generator(const DerivationAlgebra& g, const MultilinearFamily& x);

/// Monomials with weight + degree ≤ bound.
CEChain ce_window(const DerivationAlgebra& g, const CEChain& c, int bound);

/// d(y_1..y_n) = Σ_{i<j} ± l(y_i, y_j) y_1..ŷ_i..ŷ_j..y_n with
/// l(Πa, Πb) = (-1)^{|a|} Π[a, b]. Exact on monomials of weight W and degree
/// n with W + n - 1 ≤ weight_cap; throws std::invalid_argument otherwise.
CEChain ce_differential(const DerivationAlgebra& g, const CEChain& c);

/// All monomials of the given weight and degree (ordered).
std::vector<CEMonomial> ce_block(const DerivationAlgebra& g, int weight, int degree);

/// Σ_{n ≤ max_degree} x^n / n! restricted to weight + degree ≤ weight_cap,
/// where d is exact. Throws std::invalid_argument when x is not odd, or when
/// [x, x] has a nonzero component of arity below the cap (the only ones the
/// kept blocks see).
CEChain mc_exponential(const DerivationAlgebra& g, const MultilinearFamily& x, int max_degree);

/// Induced by V → V ⊕ W extending derivations by zero, composed with the
/// inclusion of the source algebra into the target (e.g. constant-free into
/// all derivations). W may be zero.
class Stabilization {
 public:
  /// Throws std::invalid_argument unless target lives on source.space() ⊕ w
  /// with the same flavor and weight cap, and the extended source basis lies
  /// in the target.
  Stabilization(const DerivationAlgebra& source, const DerivationAlgebra& target, const GradedSpace& w);

  MultilinearFamily extend(const MultilinearFamily& f) const;
  CEChain apply(const CEChain& c) const;
  /// Rank of the image of the (weight, degree) block; equals the block size iff injective there.
  int block_image_rank(int weight, int degree) const;

 private:
  const DerivationAlgebra* source_;
  const DerivationAlgebra* target_;
  std::vector<int> from_v_;
  std::vector<std::vector<std::pair<int, Rational>>> images_;
};

struct CEBoundaryResult {
  bool boundary = false;
  CEChain witness;  // d(witness) == chain when boundary
  /// (weight, degree) of each target block solved. A block is closed under
  /// d and complete once weight + degree + 1 ≤ weight_cap, so a failed
  /// solve proves the chain is not a boundary.
  std::vector<std::pair<int, int>> blocks;
  long unknowns = 0;
};

/// Exact solve of d(y) = chain blockwise. Throws std::invalid_argument
/// ("window too small") when some term has weight + degree + 1 > weight_cap,
/// and resource_limit_error when a preimage block exceeds max_block.
CEBoundaryResult is_ce_boundary(const DerivationAlgebra& g, const CEChain& chain, long max_block = -1);

}  // namespace curvgraph
