#pragma once

#include "curvgraph/rational.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace curvgraph {

/// Exact sparse matrix over Q in coordinate form.
class SparseRationalMatrix {
 public:
  struct Entry {
    int row;
    int col;
    Rational value;
  };

  SparseRationalMatrix(int rows, int cols) : rows_(rows), cols_(cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t nonzeros() const { return entries_.size(); }

  /// Throws std::out_of_range outside the bounds and std::invalid_argument on
  /// a repeated coordinate. Zero values are ignored.
  void insert(int row, int col, const Rational& value);

  const Rational& at(int row, int col) const;
  const std::map<std::pair<int, int>, Rational>& entries() const { return entries_; }

  std::vector<Rational> multiply(const std::vector<Rational>& x) const;

  int rank() const;

  /// Some x with A x = b, or nullopt when the system is inconsistent.
  std::optional<std::vector<Rational>> solve(const std::vector<Rational>& b) const;

 private:
  int rows_;
  int cols_;
  std::map<std::pair<int, int>, Rational> entries_;
};

}  // namespace curvgraph
