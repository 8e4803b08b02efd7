#include "curvgraph/ce.hpp"

#include "curvgraph/sparse_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace curvgraph {

namespace {

using SparseRow = std::map<long, Rational>;

SparseRow to_row(const Tensor& t) {
  SparseRow row;
  t.for_each_nonzero([&](long w, int o, const Rational& v) { row.emplace(w * t.out_dim() + o, v); });
  return row;
}

void axpy(SparseRow& y, const Rational& a, const SparseRow& x) {
  for (auto& [k, v] : x) {
    auto [it, fresh] = y.emplace(k, 0);
    it->second += a * v;
    if (it->second == 0) y.erase(it);
  }
}

// Spanning set of the arity-a part of the algebra, as maps.
std::vector<Tensor> candidates(const GradedSpace& space, Flavor flavor, const std::optional<InnerProduct>& ip, int a) {
  const int d = space.dim();
  std::vector<Tensor> out;
  if (!ip) {
    Tensor probe = Tensor::map(d, a);
    for (long w = 0; w < probe.words(); ++w) {
      auto letters = probe.decode(w);
      if (flavor == Flavor::lie && !std::is_sorted(letters.begin(), letters.end())) continue;
      for (int o = 0; o < d; ++o) {
        Tensor e = Tensor::map(d, a);
        e.at(w, o) = 1;
        out.push_back(flavor == Flavor::lie ? symmetrize_inputs(e, space) : e);
      }
    }
    return out;
  }
  Tensor probe = Tensor::form(d, a + 1);
  for (long w = 0; w < probe.words(); ++w) {
    auto letters = probe.decode(w);
    if (flavor == Flavor::lie) {
      if (!std::is_sorted(letters.begin(), letters.end())) continue;
    } else {
      bool least = true;
      auto rot = letters;
      for (std::size_t r = 1; r < rot.size() && least; ++r) {
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        least = !(rot < letters);
      }
      if (!least) continue;
    }
    Tensor t = Tensor::form(d, a + 1);
    t.at(w, 0) = 1;
    t = flavor == Flavor::lie ? symmetrize_inputs(t, space) : cyclic_symmetrize_form(t, space);
    if (!t.is_zero()) out.push_back(from_form(t, *ip));
  }
  return out;
}

// Koszul sign of sorting `factors` in place, or 0 when an odd generator repeats.
int sort_factors(const DerivationAlgebra& g, std::vector<int>& factors) {
  int sign = 1;
  for (std::size_t i = 1; i < factors.size(); ++i)
    for (std::size_t j = i; j > 0 && factors[j - 1] >= factors[j]; --j) {
      const int x = factors[j - 1], y = factors[j];
      if (x == y) {
        if (g.shifted_parity(x)) return 0;
        break;
      }
      if (g.shifted_parity(x) && g.shifted_parity(y)) sign = -sign;
      std::swap(factors[j - 1], factors[j]);
    }
  return sign;
}

}  // namespace

DerivationAlgebra::DerivationAlgebra(GradedSpace space, Flavor flavor, int weight_cap, bool with_constants,
                                     std::optional<InnerProduct> ip)
    : space_(std::move(space)), flavor_(flavor), cap_(weight_cap), with_constants_(with_constants), ip_(std::move(ip)) {
  if (cap_ < 1) throw std::invalid_argument("derivation algebra: the weight cap must be positive");
  if (ip_ && !(ip_->space() == space_)) throw std::invalid_argument("derivation algebra: inner product on another space");
  pivots_.resize(std::size_t(cap_) + 1);
  const int d = space_.dim();
  for (int a = with_constants_ ? 0 : 1; a <= cap_; ++a) {
    // incremental reduced row echelon form over the flattened entries
    std::vector<std::pair<long, SparseRow>> rows;
    for (const Tensor& t : candidates(space_, flavor_, ip_, a)) {
      SparseRow r = to_row(t);
      for (auto& [p, row] : rows) {
        auto it = r.find(p);
        if (it != r.end()) axpy(r, -Rational(it->second), row);
      }
      if (r.empty()) continue;
      const long p = r.begin()->first;
      const Rational lead = r.begin()->second;
      for (auto& [k, v] : r) v /= lead;
      for (auto& [q, row] : rows) {
        auto it = row.find(p);
        if (it != row.end()) axpy(row, -Rational(it->second), r);
      }
      rows.emplace_back(p, std::move(r));
    }
    std::sort(rows.begin(), rows.end(), [](auto& x, auto& y) { return x.first < y.first; });
    for (auto& [p, row] : rows) {
      MultilinearFamily f(space_, a);
      Tensor& t = f[a];
      int parity = -1;
      for (auto& [k, v] : row) {
        const long w = k / d;
        const int o = int(k % d);
        t.at(w, o) = v;
        const int ep = entry_parity(space_, t.decode(w), o);
        if (parity >= 0 && ep != parity) throw std::logic_error("derivation algebra: inhomogeneous basis element");
        parity = ep;
      }
      pivots_[std::size_t(a)].emplace_back(p, size());
      basis_.push_back(std::move(f));
      arity_.push_back(a);
      parity_.push_back(Parity(parity));
    }
  }
}

std::vector<std::pair<int, Rational>> DerivationAlgebra::coordinates(const MultilinearFamily& f) const {
  if (!(f.space() == space_)) throw std::invalid_argument("derivation algebra: element on another space");
  std::vector<std::pair<int, Rational>> out;
  const int d = space_.dim();
  for (int a = 0; a <= f.max_arity(); ++a) {
    const Tensor& t = f[a];
    if (t.is_zero()) continue;
    if (a > cap_) throw std::invalid_argument("derivation algebra: component of arity " + std::to_string(a) + " above the cap");
    SparseRow rest = to_row(t);
    for (auto& [p, idx] : pivots_[std::size_t(a)]) {
      const Rational c = t.at(p / d, int(p % d));
      if (c == 0) continue;
      out.emplace_back(idx, c);
      axpy(rest, -c, to_row(basis_[std::size_t(idx)][a]));
    }
    if (!rest.empty())
      throw std::invalid_argument("derivation algebra: arity " + std::to_string(a) + " component outside the algebra");
  }
  return out;
}

MultilinearFamily DerivationAlgebra::combination(const std::vector<std::pair<int, Rational>>& coords) const {
  MultilinearFamily out(space_, cap_);
  for (auto& [i, c] : coords) out += c * basis_[std::size_t(i)];
  return out;
}

const std::vector<std::pair<int, Rational>>& DerivationAlgebra::bracket(int i, int j) const {
  auto it = brackets_.find({i, j});
  if (it != brackets_.end()) return it->second;
  auto b = curvgraph::bracket(basis_[std::size_t(i)], basis_[std::size_t(j)], flavor_, cap_);
  return brackets_.emplace(std::make_pair(i, j), coordinates(b)).first->second;
}

Rational CEChain::coefficient(const CEMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void CEChain::add_sorted(const CEMonomial& m, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, fresh] = terms_.emplace(m, 0);
  it->second += coeff;
  if (it->second == 0) terms_.erase(it);
}

void CEChain::add(const DerivationAlgebra& g, std::vector<int> factors, const Rational& coeff) {
  for (int f : factors)
    if (f < 0 || f >= g.size()) throw std::out_of_range("CE chain: generator index out of range");
  const int s = sort_factors(g, factors);
  if (s != 0) add_sorted(factors, s * coeff);
}

CEChain& CEChain::operator+=(const CEChain& rhs) {
  for (auto& [m, c] : rhs.terms_) add_sorted(m, c);
  return *this;
}

CEChain& CEChain::operator-=(const CEChain& rhs) {
  for (auto& [m, c] : rhs.terms_) add_sorted(m, -c);
  return *this;
}

CEChain& CEChain::operator*=(const Rational& s) {
  if (s == 0) terms_.clear();
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

int ce_weight(const DerivationAlgebra& g, const CEMonomial& m) {
  int w = 0;
  for (int i : m) w += g.weight(i);
  return w;
}

CEChain ce_product(const DerivationAlgebra& g, const CEChain& a, const CEChain& b) {
  CEChain out;
  for (auto& [ma, ca] : a.terms())
    for (auto& [mb, cb] : b.terms()) {
      std::vector<int> f = ma;
      f.insert(f.end(), mb.begin(), mb.end());
      out.add(g, std::move(f), ca * cb);
    }
  return out;
}

CEChain ce_generator(const DerivationAlgebra& g, const MultilinearFamily& x) {
  CEChain out;
  for (auto& [i, c] : g.coordinates(x)) out.add_sorted({i}, c);
  return out;
}

CEChain ce_window(const DerivationAlgebra& g, const CEChain& c, int bound) {
  CEChain out;
  for (auto& [m, v] : c.terms())
    if (ce_weight(g, m) + int(m.size()) <= bound) out.add_sorted(m, v);
  return out;
}

CEChain ce_differential(const DerivationAlgebra& g, const CEChain& c) {
  CEChain out;
  for (auto& [m, coeff] : c.terms()) {
    const int n = int(m.size());
    if (ce_weight(g, m) + n - 1 > g.weight_cap())
      throw std::invalid_argument("ce_differential: monomial beyond the weight cap");
    std::vector<int> before(std::size_t(n) + 1, 0);  // parity of y_1..y_{k}
    for (int k = 0; k < n; ++k) before[k + 1] = before[k] ^ g.shifted_parity(m[k]);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const int pi = g.shifted_parity(m[i]);
        const int pj = g.shifted_parity(m[j]);
        int flips = pi * before[i] + pj * (before[j] ^ pi);
        flips += g.parity(m[i]);  // l(Πa, Πb) = (-1)^{|a|} Π[a, b]
        const Rational s = (flips % 2 ? -1 : 1) * coeff;
        std::vector<int> rest;
        for (int k = 0; k < n; ++k)
          if (k != i && k != j) rest.push_back(m[k]);
        for (auto& [b, v] : g.bracket(m[i], m[j])) {
          std::vector<int> f{b};
          f.insert(f.end(), rest.begin(), rest.end());
          out.add(g, std::move(f), s * v);
        }
      }
  }
  return out;
}

std::vector<CEMonomial> ce_block(const DerivationAlgebra& g, int weight, int degree) {
  std::vector<CEMonomial> out;
  if (degree < 0 || g.size() == 0) {
    if (degree == 0 && weight == 0) out.emplace_back();
    return out;
  }
  // weights are nondecreasing in the basis index
  const int wmax = g.weight(g.size() - 1);
  CEMonomial cur;
  auto rec = [&](auto&& self, int from, int left, int r) -> void {
    if (r == 0) {
      if (left == 0) out.push_back(cur);
      return;
    }
    for (int i = from; i < g.size(); ++i) {
      if (g.weight(i) * r > left) break;
      if (wmax * r < left) return;
      if (!cur.empty() && cur.back() == i && g.shifted_parity(i)) continue;
      cur.push_back(i);
      self(self, i, left - g.weight(i), r - 1);
      cur.pop_back();
    }
  };
  rec(rec, 0, weight, degree);
  return out;
}

CEChain mc_exponential(const DerivationAlgebra& g, const MultilinearFamily& x, int max_degree) {
  const auto coords = g.coordinates(x);
  for (auto& [i, c] : coords)
    if (g.parity(i) != 1) throw std::invalid_argument("mc_exponential: x is not odd");
  // the kept blocks only see components of [x, x] below the cap
  const MultilinearFamily xx = curvgraph::bracket(x, x, g.flavor(), g.weight_cap() - 1);
  if (!xx.is_zero()) throw std::invalid_argument("mc_exponential: MC residual [x, x] nonzero below the cap");
  CEChain gen;
  for (auto& [i, c] : coords) gen.add_sorted({i}, c);
  CEChain power;
  power.add_sorted({}, 1);
  CEChain out = power;
  // weight + degree never decreases under multiplication, so pruning is exact
  for (int n = 1; n <= max_degree; ++n) {
    power = ce_window(g, ce_product(g, power, gen), g.weight_cap());
    power *= Rational(1, n);
    out += power;
  }
  return out;
}

Stabilization::Stabilization(const DerivationAlgebra& source, const DerivationAlgebra& target, const GradedSpace& w)
    : source_(&source), target_(&target) {
  if (source.flavor() != target.flavor()) throw std::invalid_argument("stabilize: flavor mismatch");
  if (source.weight_cap() != target.weight_cap()) throw std::invalid_argument("stabilize: weight cap mismatch");
  if (!(source.space().direct_sum(w, &from_v_, nullptr) == target.space()))
    throw std::invalid_argument("stabilize: target space is not V ⊕ W");
  if (source.cyclic() && target.cyclic() &&
      !(source.inner_product()->space().direct_sum(w, nullptr, nullptr) == target.inner_product()->space()))
    throw std::invalid_argument("stabilize: inner products do not match");
  for (int i = 0; i < source.size(); ++i) images_.push_back(target.coordinates(extend(source.element(i))));
}

MultilinearFamily Stabilization::extend(const MultilinearFamily& f) const {
  MultilinearFamily out(target_->space(), f.max_arity());
  for (int a = 0; a <= f.max_arity(); ++a) {
    const Tensor& t = f[a];
    Tensor& u = out[a];
    t.for_each_nonzero([&](long w, int o, const Rational& v) {
      auto letters = t.decode(w);
      for (int& x : letters) x = from_v_[std::size_t(x)];
      u.at(letters, from_v_[std::size_t(o)]) = v;
    });
  }
  return out;
}

CEChain Stabilization::apply(const CEChain& c) const {
  CEChain out;
  for (auto& [m, coeff] : c.terms()) {
    CEChain prod;
    prod.add_sorted({}, coeff);
    for (int i : m) {
      CEChain img;
      for (auto& [k, v] : images_[std::size_t(i)]) img.add_sorted({k}, v);
      prod = ce_product(*target_, prod, img);
    }
    out += prod;
  }
  return out;
}

int Stabilization::block_image_rank(int weight, int degree) const {
  auto block = ce_block(*source_, weight, degree);
  std::map<CEMonomial, int> rows;
  std::vector<CEChain> cols;
  for (auto& m : block) {
    CEChain c;
    c.add_sorted(m, 1);
    cols.push_back(apply(c));
    for (auto& [t, v] : cols.back().terms()) rows.emplace(t, int(rows.size()));
  }
  SparseRationalMatrix a(int(rows.size()), int(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (auto& [t, v] : cols[j].terms()) a.insert(rows.at(t), int(j), v);
  return a.rank();
}

CEBoundaryResult is_ce_boundary(const DerivationAlgebra& g, const CEChain& chain, long max_block) {
  std::map<std::pair<int, int>, CEChain> blocks;
  for (auto& [m, c] : chain.terms()) {
    const int w = ce_weight(g, m);
    const int n = int(m.size());
    if (w + n + 1 > g.weight_cap())
      throw std::invalid_argument("is_ce_boundary: window too small for weight " + std::to_string(w) + " degree " +
                                  std::to_string(n));
    blocks[{w, n}].add_sorted(m, c);
  }
  CEBoundaryResult out;
  out.boundary = true;
  for (auto& [key, target] : blocks) {
    out.blocks.push_back(key);
    const auto pre = ce_block(g, key.first, key.second + 1);
    if (max_block >= 0 && long(pre.size()) > max_block)
      throw resource_limit_error("is_ce_boundary: block of " + std::to_string(pre.size()) + " monomials exceeds the cap");
    out.unknowns += long(pre.size());
    std::map<CEMonomial, int> rows;
    for (auto& [m, c] : target.terms()) rows.emplace(m, int(rows.size()));
    std::vector<CEChain> cols;
    for (auto& m : pre) {
      CEChain c;
      c.add_sorted(m, 1);
      cols.push_back(ce_differential(g, c));
      for (auto& [t, v] : cols.back().terms()) rows.emplace(t, int(rows.size()));
    }
    SparseRationalMatrix a(int(rows.size()), int(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (auto& [t, v] : cols[j].terms()) a.insert(rows.at(t), int(j), v);
    std::vector<Rational> b(rows.size(), 0);
    for (auto& [m, c] : target.terms()) b[std::size_t(rows.at(m))] = c;
    auto x = a.solve(b);
    if (!x) {
      out.boundary = false;
      out.witness = CEChain();
      return out;
    }
    for (std::size_t j = 0; j < pre.size(); ++j) out.witness.add_sorted(pre[j], (*x)[j]);
  }
  if (!(ce_differential(g, out.witness) == chain)) throw std::logic_error("is_ce_boundary: witness fails to reproduce the chain");
  return out;
}

}  // namespace curvgraph
