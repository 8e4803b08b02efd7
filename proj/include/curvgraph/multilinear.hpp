#pragma once

#include "curvgraph/graded.hpp"

#include <functional>
#include <span>
#include <vector>

namespace curvgraph {

enum class Flavor { associative, lie };

/// A multilinear map (ΠV)^{⊗arity} → ΠV (out_dim = dim) or a multilinear
/// form (out_dim = 1), stored densely on basis words. Words are read with the
/// first input as the most significant digit.
class Tensor {
 public:
  Tensor() = default;
  Tensor(int dim, int arity, int out_dim);
  static Tensor map(int dim, int arity) { return Tensor(dim, arity, dim); }
  static Tensor form(int dim, int arity) { return Tensor(dim, arity, 1); }

  int dim() const { return dim_; }
  int arity() const { return arity_; }
  int out_dim() const { return out_dim_; }
  long words() const { return words_; }

  Rational& at(long word, int out) { return data_[std::size_t(word) * out_dim_ + out]; }
  const Rational& at(long word, int out) const { return data_[std::size_t(word) * out_dim_ + out]; }
  Rational& at(std::span<const int> letters, int out) { return at(encode(letters), out); }
  const Rational& at(std::span<const int> letters, int out) const { return at(encode(letters), out); }

  long encode(std::span<const int> letters) const;
  std::vector<int> decode(long word) const;

  bool is_zero() const;
  Tensor& operator+=(const Tensor& rhs);
  Tensor& operator-=(const Tensor& rhs);
  Tensor& operator*=(const Rational& s);
  bool operator==(const Tensor& rhs) const;

  /// Visits (word, out, value) for every nonzero entry in storage order.
  void for_each_nonzero(const std::function<void(long, int, const Rational&)>& fn) const;

 private:
  int dim_ = 0;
  int arity_ = 0;
  int out_dim_ = 0;
  long words_ = 1;
  std::vector<Rational> data_;
};

/// Arity-indexed family of multilinear maps on ΠV: a (co)derivation of the
/// completed tensor or symmetric coalgebra, truncated at max_arity().
class MultilinearFamily {
 public:
  MultilinearFamily() = default;
  explicit MultilinearFamily(GradedSpace space, int max_arity = -1);

  const GradedSpace& space() const { return space_; }
  int dim() const { return space_.dim(); }
  int max_arity() const { return int(comps_.size()) - 1; }

  /// Component of the given arity; grows the family with zeros if needed.
  Tensor& operator[](int arity);
  /// Zero tensor when arity exceeds max_arity().
  const Tensor& operator[](int arity) const;

  bool is_zero() const;
  MultilinearFamily truncated(int cap) const;
  /// Components of the given total parity as maps of ΠV.
  MultilinearFamily parity_part(Parity p) const;
  /// Index of the lowest nonzero component at or above `from`, or -1.
  int lowest_nonzero(int from = 0) const;

  MultilinearFamily& operator+=(const MultilinearFamily& rhs);
  MultilinearFamily& operator-=(const MultilinearFamily& rhs);
  MultilinearFamily& operator*=(const Rational& s);
  friend MultilinearFamily operator+(MultilinearFamily a, const MultilinearFamily& b) { return a += b; }
  friend MultilinearFamily operator-(MultilinearFamily a, const MultilinearFamily& b) { return a -= b; }
  friend MultilinearFamily operator*(const Rational& s, MultilinearFamily a) { return a *= s; }
  bool operator==(const MultilinearFamily& rhs) const;

 private:
  GradedSpace space_;
  std::vector<Tensor> comps_;
};

/// Sum of ΠV parities of the letters of a word, mod 2.
Parity word_parity(const GradedSpace& space, std::span<const int> letters);

/// Parity of a basis entry of a map: output parity minus input parities on ΠV.
Parity entry_parity(const GradedSpace& space, std::span<const int> inputs, int output);

/// The pre-Lie composition f∘g: insertion of g into every slot of f with the
/// Koszul sign (associative flavor), or the unshuffle-sum insertion of g into
/// f (Lie flavor, f and g symmetric). Components above `cap` are dropped.
MultilinearFamily compose(const MultilinearFamily& f, const MultilinearFamily& g, Flavor flavor, int cap);

/// Graded commutator f∘g - (-1)^{|f||g|} g∘f, evaluated on homogeneous parts.
MultilinearFamily bracket(const MultilinearFamily& f, const MultilinearFamily& g, Flavor flavor, int cap);

/// e^{ad ξ} m = Σ_j ad_ξ^j m / j!, truncated at `cap`. Requires ξ to have no
/// components of arity 0 or 1 so that each step raises the arity.
MultilinearFamily exp_ad(const MultilinearFamily& xi, const MultilinearFamily& m, Flavor flavor, int cap);

/// L ∘ f ∘ (L^{-1})^{⊗k} componentwise for an even invertible linear map L of V.
MultilinearFamily conjugate_linear(const MultilinearFamily& f, const RationalMatrix& l);

/// f(v_1, ..., v_k) for coordinate vectors.
std::vector<Rational> evaluate(const Tensor& f, std::span<const std::vector<Rational>> args);

/// Koszul-signed symmetrization Σ_σ ε σ·f over the inputs (no 1/k! factor).
Tensor symmetrize_inputs(const Tensor& f, const GradedSpace& space);
bool is_symmetric(const Tensor& f, const GradedSpace& space);

/// Pairing form T(x_1..x_{k+1}) = (f(x_1..x_k), x_{k+1}) and its inverse.
Tensor to_form(const Tensor& f, const InnerProduct& ip);
Tensor from_form(const Tensor& t, const InnerProduct& ip);

/// (ρT)(x_1, ..., x_n) = (-1)^{|x_1|(|x_2|+...+|x_n|)} T(x_2, ..., x_n, x_1).
Tensor rotate_form(const Tensor& t, const GradedSpace& space);
/// Σ_{j<n} ρ^j T.
Tensor cyclic_symmetrize_form(const Tensor& t, const GradedSpace& space);

/// T evaluated on the basis given by the columns of `basis` in every slot.
Tensor change_form_basis(const Tensor& t, const RationalMatrix& basis);

}  // namespace curvgraph
