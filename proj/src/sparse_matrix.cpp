#include "curvgraph/sparse_matrix.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>

namespace curvgraph {

namespace {

using Row = std::vector<std::pair<int, Integer>>;

struct Pivot {
  int col;
  Row row;
};

struct Elimination {
  std::vector<Pivot> pivots;
  std::vector<Row> leftover;  // rows that never became pivots
};

// Rows over Z, divided by their content.
void normalize(Row& row) {
  Integer g = 0;
  for (auto& [c, v] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

const Integer* find(const Row& row, int col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const auto& e, int c) { return e.first < c; });
  return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

// target <- p*target - a*pivot, with a = target[col], p = pivot[col].
Row combine(const Row& target, const Row& pivot, const Integer& p, const Integer& a) {
  Row out;
  out.reserve(target.size() + pivot.size());
  auto i = target.begin();
  auto j = pivot.begin();
  while (i != target.end() || j != pivot.end()) {
    if (j == pivot.end() || (i != target.end() && i->first < j->first)) {
      out.emplace_back(i->first, p * i->second);
      ++i;
    } else if (i == target.end() || j->first < i->first) {
      out.emplace_back(j->first, -a * j->second);
      ++j;
    } else {
      Integer v = p * i->second - a * j->second;
      if (v != 0) out.emplace_back(i->first, std::move(v));
      ++i;
      ++j;
    }
  }
  normalize(out);
  return out;
}

// Fraction-free sparse elimination with a Markowitz-style choice: the
// column with the fewest active entries, then its shortest row. Columns
// >= `pivot_limit` are never chosen as pivots.
Elimination eliminate(std::vector<Row> rows, int ncols, int pivot_limit) {
  std::vector<std::set<int>> col_rows(ncols);
  for (int r = 0; r < int(rows.size()); ++r)
    for (auto& [c, v] : rows[r]) col_rows[c].insert(r);

  using Key = std::pair<std::size_t, int>;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> queue;
  for (int c = 0; c < pivot_limit; ++c)
    if (!col_rows[c].empty()) queue.emplace(col_rows[c].size(), c);

  std::vector<char> active(rows.size(), 1);
  std::vector<char> done(ncols, 0);
  Elimination out;
  while (!queue.empty()) {
    auto [count, col] = queue.top();
    queue.pop();
    if (done[col] || col_rows[col].empty()) continue;
    if (count != col_rows[col].size()) {
      queue.emplace(col_rows[col].size(), col);
      continue;
    }
    int prow = -1;
    for (int r : col_rows[col])
      if (prow < 0 || rows[r].size() < rows[prow].size()) prow = r;
    done[col] = 1;
    active[prow] = 0;
    for (auto& [c, v] : rows[prow]) col_rows[c].erase(prow);
    const Integer p = *find(rows[prow], col);
    const std::vector<int> targets(col_rows[col].begin(), col_rows[col].end());
    for (int r : targets) {
      const Integer a = *find(rows[r], col);
      for (auto& [c, v] : rows[r]) col_rows[c].erase(r);
      rows[r] = combine(rows[r], rows[prow], p, a);
      for (auto& [c, v] : rows[r]) {
        col_rows[c].insert(r);
        if (c < pivot_limit && !done[c]) queue.emplace(col_rows[c].size(), c);
      }
    }
    out.pivots.push_back({col, std::move(rows[prow])});
  }
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (active[r] && !rows[r].empty()) out.leftover.push_back(std::move(rows[r]));
  return out;
}

Row scaled_row(const std::vector<std::pair<int, Rational>>& entries) {
  Integer lcm = 1;
  for (auto& [c, v] : entries) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
  Row row;
  row.reserve(entries.size());
  for (auto& [c, v] : entries) {
    Integer n = v.get_num() * (lcm / v.get_den());
    row.emplace_back(c, std::move(n));
  }
  std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return row;
}

}  // namespace

void SparseRationalMatrix::insert(int row, int col, const Rational& value) {
  if (row < 0 || row >= rows_ || col < 0 || col >= cols_)
    throw std::out_of_range("sparse matrix: coordinate out of bounds");
  if (value == 0) return;
  if (!entries_.emplace(std::make_pair(row, col), value).second)
    throw std::invalid_argument("sparse matrix: duplicate coordinate");
}

const Rational& SparseRationalMatrix::at(int row, int col) const {
  static const Rational zero = 0;
  auto it = entries_.find({row, col});
  return it == entries_.end() ? zero : it->second;
}

std::vector<Rational> SparseRationalMatrix::multiply(const std::vector<Rational>& x) const {
  std::vector<Rational> y(rows_);
  for (auto& [rc, v] : entries_) y[rc.first] += v * x[rc.second];
  return y;
}

int SparseRationalMatrix::rank() const {
  std::vector<std::vector<std::pair<int, Rational>>> raw(rows_);
  for (auto& [rc, v] : entries_) raw[rc.first].emplace_back(rc.second, v);
  std::vector<Row> rows;
  rows.reserve(rows_);
  for (auto& r : raw)
    if (!r.empty()) rows.push_back(scaled_row(r));
  return int(eliminate(std::move(rows), cols_, cols_).pivots.size());
}

std::optional<std::vector<Rational>> SparseRationalMatrix::solve(const std::vector<Rational>& b) const {
  if (int(b.size()) != rows_) throw std::invalid_argument("sparse solve: right-hand side length");
  std::vector<std::vector<std::pair<int, Rational>>> raw(rows_);
  for (auto& [rc, v] : entries_) raw[rc.first].emplace_back(rc.second, v);
  for (int r = 0; r < rows_; ++r)
    if (b[r] != 0) raw[r].emplace_back(cols_, b[r]);
  std::vector<Row> rows;
  for (auto& r : raw)
    if (!r.empty()) rows.push_back(scaled_row(r));
  Elimination el = eliminate(std::move(rows), cols_ + 1, cols_);
  for (auto& row : el.leftover)
    if (!row.empty()) return std::nullopt;  // only the right-hand column survives

  std::vector<Rational> x(cols_);
  for (auto it = el.pivots.rbegin(); it != el.pivots.rend(); ++it) {
    Rational acc = 0;
    Rational diag = 0;
    for (auto& [c, v] : it->row) {
      if (c == cols_)
        acc += Rational(v);
      else if (c == it->col)
        diag = Rational(v);
      else
        acc -= Rational(v) * x[c];
    }
    x[it->col] = acc / diag;
  }
  return x;
}

}  // namespace curvgraph
