#pragma once

#include "curvgraph/rational.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace curvgraph {

/// 0 = even, 1 = odd.
using Parity = std::uint8_t;

/// Sign of the permutation `perm`, given as the list of images 0..n-1.
int permutation_sign(std::span<const int> perm);

/// Koszul sign picked up when homogeneous elements with the given parities,
/// sitting in slots 0..n-1, are rearranged so that slot k receives the element
/// previously in slot perm[k].
int koszul_sign(std::span<const int> perm, std::span<const Parity> parities);

/// Small dense matrix with exact entries.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols) {}
  static RationalMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int r, int c) { return data_[std::size_t(r) * cols_ + c]; }
  const Rational& operator()(int r, int c) const { return data_[std::size_t(r) * cols_ + c]; }

  RationalMatrix operator*(const RationalMatrix& rhs) const;
  bool operator==(const RationalMatrix&) const = default;

  /// Exact inverse by Gauss-Jordan; nullopt when singular or not square.
  std::optional<RationalMatrix> inverse() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

/// Finite-dimensional Z/2-graded space over Q. Even basis vectors come first.
class GradedSpace {
 public:
  GradedSpace() = default;
  GradedSpace(int dim_even, int dim_odd);

  int dim() const { return dim_even_ + dim_odd_; }
  int dim_even() const { return dim_even_; }
  int dim_odd() const { return dim_odd_; }
  Parity parity(int i) const { return parities_[i]; }
  const std::vector<Parity>& parities() const { return parities_; }

  /// Parity of basis vector i viewed in the parity reversion.
  Parity shifted_parity(int i) const { return Parity(1 - parities_[i]); }
  std::vector<Parity> shifted_parities() const;

  /// Parity reversion keeps labels and flips every parity. The result is
  /// reordered so that even vectors come first; `relabel` maps old to new.
  GradedSpace reversed(std::vector<int>* relabel = nullptr) const;

  /// V ⊕ W with evens of V, evens of W, odds of V, odds of W. The two index
  /// maps send the summands' basis indices into the sum.
  GradedSpace direct_sum(const GradedSpace& w, std::vector<int>* from_v, std::vector<int>* from_w) const;

  bool operator==(const GradedSpace&) const = default;

 private:
  int dim_even_ = 0;
  int dim_odd_ = 0;
  std::vector<Parity> parities_;
};

/// Even, supersymmetric, nondegenerate bilinear form on a GradedSpace.
class InnerProduct {
 public:
  /// Throws std::invalid_argument naming the violated invariant.
  InnerProduct(GradedSpace space, RationalMatrix gram);

  const GradedSpace& space() const { return space_; }
  const RationalMatrix& gram() const { return gram_; }
  const Rational& operator()(int i, int j) const { return gram_(i, j); }

  /// The two-tensor f = sum f^{ab} e_a (x) e_b with sum_b f^{ab} (e_b, e_c) = delta_ac.
  const RationalMatrix& inverse_pairing() const { return inverse_; }

  /// (u, v) for coordinate vectors.
  Rational pair(std::span<const Rational> u, std::span<const Rational> v) const;

  InnerProduct direct_sum(const InnerProduct& w) const;

  /// Identity on the even block, standard symplectic pairs on the odd block
  /// (the odd dimension must be even).
  static InnerProduct standard(const GradedSpace& space);

 private:
  GradedSpace space_;
  RationalMatrix gram_;
  RationalMatrix inverse_;
};

}  // namespace curvgraph
