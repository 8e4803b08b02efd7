#include "curvgraph/graded.hpp"

#include <stdexcept>
#include <string>

namespace curvgraph {

int permutation_sign(std::span<const int> perm) {
  const int n = int(perm.size());
  std::vector<char> seen(n, 0);
  int sign = 1;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = perm[j]) {
      seen[j] = 1;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

int koszul_sign(std::span<const int> perm, std::span<const Parity> parities) {
  if (perm.size() != parities.size())
    throw std::invalid_argument("koszul_sign: permutation and parity lengths differ");
  const int n = int(perm.size());
  // Pairs of odd elements whose relative order is reversed.
  int odd_inversions = 0;
  for (int a = 0; a < n; ++a) {
    if (!parities[perm[a]]) continue;
    for (int b = a + 1; b < n; ++b)
      if (parities[perm[b]] && perm[b] < perm[a]) ++odd_inversions;
  }
  return odd_inversions % 2 ? -1 : 1;
}

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  RationalMatrix out(rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (int j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

std::optional<RationalMatrix> RationalMatrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  const int n = rows_;
  RationalMatrix a(*this);
  RationalMatrix inv = identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (a(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return std::nullopt;
    if (pivot != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    const Rational p = a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0) continue;
      const Rational f = a(r, col);
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

GradedSpace::GradedSpace(int dim_even, int dim_odd) : dim_even_(dim_even), dim_odd_(dim_odd) {
  if (dim_even < 0 || dim_odd < 0) throw std::invalid_argument("GradedSpace: negative dimension");
  parities_.assign(dim_even, 0);
  parities_.resize(std::size_t(dim_even) + dim_odd, 1);
}

std::vector<Parity> GradedSpace::shifted_parities() const {
  std::vector<Parity> out(parities_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = Parity(1 - parities_[i]);
  return out;
}

GradedSpace GradedSpace::reversed(std::vector<int>* relabel) const {
  if (relabel) {
    relabel->assign(dim(), 0);
    for (int i = 0; i < dim(); ++i)
      (*relabel)[i] = parities_[i] ? i - dim_even_ : dim_odd_ + i;
  }
  return GradedSpace(dim_odd_, dim_even_);
}

GradedSpace GradedSpace::direct_sum(const GradedSpace& w, std::vector<int>* from_v,
                                    std::vector<int>* from_w) const {
  GradedSpace sum(dim_even_ + w.dim_even_, dim_odd_ + w.dim_odd_);
  if (from_v) {
    from_v->resize(dim());
    for (int i = 0; i < dim(); ++i) (*from_v)[i] = parities_[i] ? w.dim_even_ + i : i;
  }
  if (from_w) {
    from_w->resize(w.dim());
    for (int i = 0; i < w.dim(); ++i)
      (*from_w)[i] = w.parities_[i] ? dim_even_ + w.dim_even_ + dim_odd_ + (i - w.dim_even_)
                                    : dim_even_ + i;
  }
  return sum;
}

InnerProduct::InnerProduct(GradedSpace space, RationalMatrix gram)
    : space_(std::move(space)), gram_(std::move(gram)) {
  const int n = space_.dim();
  if (gram_.rows() != n || gram_.cols() != n)
    throw std::invalid_argument("inner product: gram matrix does not match the space dimension");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (gram_(i, j) != 0 && space_.parity(i) != space_.parity(j))
        throw std::invalid_argument("inner product: not even (pairs basis vectors " +
                                    std::to_string(i) + " and " + std::to_string(j) + ")");
      const int sign = (space_.parity(i) & space_.parity(j)) ? -1 : 1;
      if (gram_(j, i) != sign * gram_(i, j))
        throw std::invalid_argument("inner product: not supersymmetric at (" + std::to_string(i) +
                                    ", " + std::to_string(j) + ")");
    }
  auto inv = gram_.inverse();
  if (!inv) throw std::invalid_argument("inner product: degenerate");
  inverse_ = std::move(*inv);
}

Rational InnerProduct::pair(std::span<const Rational> u, std::span<const Rational> v) const {
  Rational acc = 0;
  for (int i = 0; i < space_.dim(); ++i) {
    if (u[i] == 0) continue;
    for (int j = 0; j < space_.dim(); ++j)
      if (gram_(i, j) != 0 && v[j] != 0) acc += u[i] * gram_(i, j) * v[j];
  }
  return acc;
}

InnerProduct InnerProduct::direct_sum(const InnerProduct& w) const {
  std::vector<int> fv, fw;
  GradedSpace sum = space_.direct_sum(w.space_, &fv, &fw);
  RationalMatrix g(sum.dim(), sum.dim());
  for (int i = 0; i < space_.dim(); ++i)
    for (int j = 0; j < space_.dim(); ++j) g(fv[i], fv[j]) = gram_(i, j);
  for (int i = 0; i < w.space_.dim(); ++i)
    for (int j = 0; j < w.space_.dim(); ++j) g(fw[i], fw[j]) = w.gram_(i, j);
  return InnerProduct(sum, g);
}

InnerProduct InnerProduct::standard(const GradedSpace& space) {
  if (space.dim_odd() % 2)
    throw std::invalid_argument("standard inner product needs an even-dimensional odd part");
  RationalMatrix g(space.dim(), space.dim());
  for (int i = 0; i < space.dim_even(); ++i) g(i, i) = 1;
  for (int k = space.dim_even(); k < space.dim(); k += 2) {
    g(k, k + 1) = 1;
    g(k + 1, k) = -1;
  }
  return InnerProduct(space, g);
}

}  // namespace curvgraph
