#include "curvgraph/multilinear.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace curvgraph {

namespace {

long ipow(int base, int exp) {
  long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// ΠV parity of each letter of `word` (length `len`, base `dim`).
Parity packed_parity(const std::vector<Parity>& spar, long word, int len, int dim) {
  int p = 0;
  for (int i = 0; i < len; ++i) {
    p += spar[word % dim];
    word /= dim;
  }
  return Parity(p & 1);
}

// Parity of each homogeneous part of a map, entrywise.
MultilinearFamily split_parity(const MultilinearFamily& f, Parity p) { return f.parity_part(p); }

}  // namespace

Tensor::Tensor(int dim, int arity, int out_dim)
    : dim_(dim), arity_(arity), out_dim_(out_dim), words_(ipow(dim, arity)) {
  if (dim < 0 || arity < 0 || out_dim < 0) throw std::invalid_argument("Tensor: negative shape");
  data_.assign(std::size_t(words_) * out_dim_, Rational(0));
}

long Tensor::encode(std::span<const int> letters) const {
  if (int(letters.size()) != arity_) throw std::invalid_argument("Tensor: word length differs from arity");
  long w = 0;
  for (int x : letters) {
    if (x < 0 || x >= dim_) throw std::out_of_range("Tensor: basis index out of range");
    w = w * dim_ + x;
  }
  return w;
}

std::vector<int> Tensor::decode(long word) const {
  std::vector<int> letters(arity_);
  for (int i = arity_ - 1; i >= 0; --i) {
    letters[i] = int(word % dim_);
    word /= dim_;
  }
  return letters;
}

bool Tensor::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return q == 0; });
}

Tensor& Tensor::operator+=(const Tensor& rhs) {
  if (data_.size() != rhs.data_.size()) throw std::invalid_argument("Tensor: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (rhs.data_[i] != 0) data_[i] += rhs.data_[i];
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& rhs) {
  if (data_.size() != rhs.data_.size()) throw std::invalid_argument("Tensor: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (rhs.data_[i] != 0) data_[i] -= rhs.data_[i];
  return *this;
}

Tensor& Tensor::operator*=(const Rational& s) {
  for (auto& q : data_)
    if (q != 0) q *= s;
  return *this;
}

bool Tensor::operator==(const Tensor& rhs) const {
  return dim_ == rhs.dim_ && arity_ == rhs.arity_ && out_dim_ == rhs.out_dim_ && data_ == rhs.data_;
}

void Tensor::for_each_nonzero(const std::function<void(long, int, const Rational&)>& fn) const {
  for (long w = 0; w < words_; ++w)
    for (int o = 0; o < out_dim_; ++o) {
      const Rational& q = data_[std::size_t(w) * out_dim_ + o];
      if (q != 0) fn(w, o, q);
    }
}

MultilinearFamily::MultilinearFamily(GradedSpace space, int max_arity) : space_(std::move(space)) {
  for (int k = 0; k <= max_arity; ++k) comps_.push_back(Tensor::map(space_.dim(), k));
}

Tensor& MultilinearFamily::operator[](int arity) {
  while (int(comps_.size()) <= arity) comps_.push_back(Tensor::map(space_.dim(), int(comps_.size())));
  return comps_[arity];
}

const Tensor& MultilinearFamily::operator[](int arity) const {
  if (arity < int(comps_.size())) return comps_[arity];
  // Map nodes are stable, so returned references stay valid.
  thread_local std::map<std::pair<int, int>, Tensor> zeros;
  auto [it, fresh] = zeros.try_emplace({space_.dim(), arity});
  if (fresh) it->second = Tensor::map(space_.dim(), arity);
  return it->second;
}

bool MultilinearFamily::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const Tensor& t) { return t.is_zero(); });
}

MultilinearFamily MultilinearFamily::truncated(int cap) const {
  MultilinearFamily out(space_, -1);
  for (int k = 0; k <= std::min(cap, max_arity()); ++k) out.comps_.push_back(comps_[k]);
  return out;
}

MultilinearFamily MultilinearFamily::parity_part(Parity p) const {
  MultilinearFamily out(space_, max_arity());
  const auto spar = space_.shifted_parities();
  const int d = dim();
  for (int k = 0; k <= max_arity(); ++k)
    comps_[k].for_each_nonzero([&](long w, int o, const Rational& q) {
      if (((packed_parity(spar, w, k, d) + spar[o]) & 1) == p) out.comps_[k].at(w, o) = q;
    });
  return out;
}

int MultilinearFamily::lowest_nonzero(int from) const {
  for (int k = std::max(from, 0); k <= max_arity(); ++k)
    if (!comps_[k].is_zero()) return k;
  return -1;
}

MultilinearFamily& MultilinearFamily::operator+=(const MultilinearFamily& rhs) {
  if (!(space_ == rhs.space_)) throw std::invalid_argument("MultilinearFamily: space mismatch");
  for (int k = 0; k <= rhs.max_arity(); ++k) (*this)[k] += rhs.comps_[k];
  return *this;
}

MultilinearFamily& MultilinearFamily::operator-=(const MultilinearFamily& rhs) {
  if (!(space_ == rhs.space_)) throw std::invalid_argument("MultilinearFamily: space mismatch");
  for (int k = 0; k <= rhs.max_arity(); ++k) (*this)[k] -= rhs.comps_[k];
  return *this;
}

MultilinearFamily& MultilinearFamily::operator*=(const Rational& s) {
  for (auto& t : comps_) t *= s;
  return *this;
}

bool MultilinearFamily::operator==(const MultilinearFamily& rhs) const {
  if (!(space_ == rhs.space_)) return false;
  const int top = std::max(max_arity(), rhs.max_arity());
  for (int k = 0; k <= top; ++k)
    if (!((*this)[k] == rhs[k])) return false;
  return true;
}

Parity word_parity(const GradedSpace& space, std::span<const int> letters) {
  int p = 0;
  for (int x : letters) p += space.shifted_parity(x);
  return Parity(p & 1);
}

Parity entry_parity(const GradedSpace& space, std::span<const int> inputs, int output) {
  return Parity((word_parity(space, inputs) + space.shifted_parity(output)) & 1);
}

namespace {

// Adds f∘_slot g over every slot (associative) with the Koszul sign of moving
// g past the preceding inputs, or only the first slot without sign (Lie).
void insert_into(const Tensor& f, const Tensor& g, const std::vector<Parity>& spar, bool all_slots,
                 Tensor& out) {
  const int d = f.dim();
  const int a = f.arity();
  const int b = g.arity();
  if (a == 0) return;
  const int last_slot = all_slots ? a - 1 : 0;
  g.for_each_nonzero([&](long gw, int p, const Rational& gv) {
    const Parity gpar = Parity((packed_parity(spar, gw, b, d) + spar[p]) & 1);
    for (int k = 0; k <= last_slot; ++k) {
      const int tail = a - 1 - k;
      const long npre = ipow(d, k);
      const long ntail = ipow(d, tail);
      const long gwords = ipow(d, b);
      for (long pre = 0; pre < npre; ++pre) {
        const bool negate = gpar && packed_parity(spar, pre, k, d);
        for (long suf = 0; suf < ntail; ++suf) {
          const long fw = (pre * d + p) * ntail + suf;
          const long rw = (pre * gwords + gw) * ntail + suf;
          for (int o = 0; o < f.out_dim(); ++o) {
            const Rational& fv = f.at(fw, o);
            if (fv == 0) continue;
            if (negate)
              out.at(rw, o) -= fv * gv;
            else
              out.at(rw, o) += fv * gv;
          }
        }
      }
    }
  });
}

// Σ over size-b position subsets S: x_S ← y[0..b), x_{S^c} ← y[b..n), with the
// Koszul sign of sorting x into (x_S, x_{S^c}).
Tensor unshuffle_sum(const Tensor& h, int b, const std::vector<Parity>& spar) {
  const int n = h.arity();
  const int d = h.dim();
  Tensor out(d, n, h.out_dim());
  std::vector<int> y(n), x(n);
  h.for_each_nonzero([&](long w, int o, const Rational& v) {
    y = h.decode(w);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (std::popcount(mask) != b) continue;
      int si = 0, ci = b;
      int sign_bits = 0;
      int odd_complement_seen = 0;
      for (int pos = 0; pos < n; ++pos) {
        if (mask >> pos & 1) {
          x[pos] = y[si++];
          if (spar[x[pos]]) sign_bits += odd_complement_seen;
        } else {
          x[pos] = y[ci++];
          if (spar[x[pos]]) ++odd_complement_seen;
        }
      }
      if (sign_bits & 1)
        out.at(x, o) -= v;
      else
        out.at(x, o) += v;
    }
  });
  return out;
}

}  // namespace

MultilinearFamily compose(const MultilinearFamily& f, const MultilinearFamily& g, Flavor flavor, int cap) {
  if (!(f.space() == g.space())) throw std::invalid_argument("compose: space mismatch");
  const auto spar = f.space().shifted_parities();
  const int d = f.dim();
  MultilinearFamily out(f.space(), cap);
  for (int a = 1; a <= f.max_arity(); ++a) {
    if (f[a].is_zero()) continue;
    for (int b = 0; b <= g.max_arity(); ++b) {
      const int n = a + b - 1;
      if (n > cap || n < 0) continue;
      if (g[b].is_zero()) continue;
      if (flavor == Flavor::associative) {
        insert_into(f[a], g[b], spar, true, out[n]);
      } else {
        Tensor h = Tensor::map(d, n);
        insert_into(f[a], g[b], spar, false, h);
        out[n] += unshuffle_sum(h, b, spar);
      }
    }
  }
  return out;
}

MultilinearFamily bracket(const MultilinearFamily& f, const MultilinearFamily& g, Flavor flavor, int cap) {
  MultilinearFamily out(f.space(), cap);
  for (Parity pf = 0; pf < 2; ++pf) {
    const MultilinearFamily fp = split_parity(f, pf);
    if (fp.is_zero()) continue;
    for (Parity pg = 0; pg < 2; ++pg) {
      const MultilinearFamily gp = split_parity(g, pg);
      if (gp.is_zero()) continue;
      out += compose(fp, gp, flavor, cap);
      if (pf && pg)
        out += compose(gp, fp, flavor, cap);
      else
        out -= compose(gp, fp, flavor, cap);
    }
  }
  return out;
}

MultilinearFamily exp_ad(const MultilinearFamily& xi, const MultilinearFamily& m, Flavor flavor, int cap) {
  if (!xi[0].is_zero() || !xi[1].is_zero())
    throw std::invalid_argument("exp_ad: gauge element has a constant or linear term");
  MultilinearFamily out = m.truncated(cap);
  MultilinearFamily term = out;
  for (int j = 1; j <= cap + 1 && !term.is_zero(); ++j) {
    term = bracket(xi, term, flavor, cap);
    term *= Rational(1, j);
    out += term;
  }
  return out;
}

MultilinearFamily conjugate_linear(const MultilinearFamily& f, const RationalMatrix& l) {
  const int d = f.dim();
  if (l.rows() != d || l.cols() != d) throw std::invalid_argument("conjugate_linear: shape mismatch");
  const auto inv = l.inverse();
  if (!inv) throw std::invalid_argument("conjugate_linear: linear map is not invertible");
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (l(i, j) != 0 && f.space().parity(i) != f.space().parity(j))
        throw std::invalid_argument("conjugate_linear: linear map is not even");
  MultilinearFamily out(f.space(), f.max_arity());
  for (int k = 0; k <= f.max_arity(); ++k) {
    // Mode products: each input slot by L^{-1}, then the output by L.
    Tensor cur = f[k];
    for (int slot = 0; slot < k; ++slot) {
      Tensor next = Tensor::map(d, k);
      cur.for_each_nonzero([&](long w, int o, const Rational& v) {
        auto letters = cur.decode(w);
        const int x = letters[slot];
        // f'(.., e_y, ..) = Σ_x (L^{-1})_{x y} f(.., e_x, ..)
        for (int y = 0; y < d; ++y) {
          const Rational& c = (*inv)(x, y);
          if (c == 0) continue;
          letters[slot] = y;
          next.at(letters, o) += c * v;
        }
      });
      cur = std::move(next);
    }
    Tensor& target = out[k];
    cur.for_each_nonzero([&](long w, int o, const Rational& v) {
      for (int r = 0; r < d; ++r)
        if (l(r, o) != 0) target.at(w, r) += l(r, o) * v;
    });
  }
  return out;
}

std::vector<Rational> evaluate(const Tensor& f, std::span<const std::vector<Rational>> args) {
  if (int(args.size()) != f.arity()) throw std::invalid_argument("evaluate: wrong number of arguments");
  std::vector<Rational> out(f.out_dim());
  f.for_each_nonzero([&](long w, int o, const Rational& v) {
    Rational coeff = v;
    long rest = w;
    for (int slot = f.arity() - 1; slot >= 0 && coeff != 0; --slot) {
      coeff *= args[slot][rest % f.dim()];
      rest /= f.dim();
    }
    if (coeff != 0) out[o] += coeff;
  });
  return out;
}

Tensor symmetrize_inputs(const Tensor& f, const GradedSpace& space) {
  const int n = f.arity();
  const auto spar = space.shifted_parities();
  Tensor out(f.dim(), n, f.out_dim());
  // Sum over all n! rearrangements, grouped by the distinct words they
  // produce: a letter repeated m times contributes m! if even in ΠV and
  // kills the term if odd.
  auto odd_inversions = [&](const std::vector<int>& w) {
    int inv = 0;
    for (int a = 0; a < n; ++a)
      if (spar[w[a]])
        for (int b = a + 1; b < n; ++b) inv += spar[w[b]] && w[b] < w[a];
    return inv;
  };
  f.for_each_nonzero([&](long w, int o, const Rational& v) {
    auto x = f.decode(w);
    const int to_sorted = odd_inversions(x);
    std::sort(x.begin(), x.end());
    long mult = 1;
    for (int a = 0, run = 1; a < n; ++a, ++run) {
      if (a + 1 < n && x[a + 1] == x[a]) continue;
      if (run > 1 && spar[x[a]]) return;
      for (int k = 2; k <= run; ++k) mult *= k;
      run = 0;
    }
    const Rational base = v * mult;
    do {
      if ((to_sorted + odd_inversions(x)) % 2)
        out.at(x, o) -= base;
      else
        out.at(x, o) += base;
    } while (std::next_permutation(x.begin(), x.end()));
  });
  return out;
}

bool is_symmetric(const Tensor& f, const GradedSpace& space) {
  const int n = f.arity();
  if (n < 2) return true;
  const auto spar = space.shifted_parities();
  std::vector<int> x;
  bool ok = true;
  // Adjacent transpositions generate; check each on every word.
  for (long w = 0; w < f.words() && ok; ++w) {
    x = f.decode(w);
    for (int i = 0; i + 1 < n && ok; ++i) {
      std::swap(x[i], x[i + 1]);
      const long w2 = f.encode(x);
      const bool negate = spar[x[i]] && spar[x[i + 1]];
      for (int o = 0; o < f.out_dim(); ++o) {
        const Rational& a = f.at(w, o);
        const Rational& b = f.at(w2, o);
        if (negate ? a != -b : a != b) {
          ok = false;
          break;
        }
      }
      std::swap(x[i], x[i + 1]);
    }
  }
  return ok;
}

Tensor to_form(const Tensor& f, const InnerProduct& ip) {
  const int d = f.dim();
  Tensor t = Tensor::form(d, f.arity() + 1);
  f.for_each_nonzero([&](long w, int o, const Rational& v) {
    for (int y = 0; y < d; ++y)
      if (ip(o, y) != 0) t.at(w * d + y, 0) += v * ip(o, y);
  });
  return t;
}

Tensor from_form(const Tensor& t, const InnerProduct& ip) {
  const int d = t.dim();
  if (t.arity() < 1) throw std::invalid_argument("from_form: form of arity zero");
  const auto& inv = ip.inverse_pairing();
  Tensor f = Tensor::map(d, t.arity() - 1);
  t.for_each_nonzero([&](long w, int, const Rational& v) {
    const int y = int(w % d);
    const long x = w / d;
    for (int o = 0; o < d; ++o)
      if (inv(y, o) != 0) f.at(x, o) += v * inv(y, o);
  });
  return f;
}

Tensor rotate_form(const Tensor& t, const GradedSpace& space) {
  const int n = t.arity();
  Tensor out(t.dim(), n, t.out_dim());
  if (n == 0) return t;
  const auto spar = space.shifted_parities();
  t.for_each_nonzero([&](long w, int o, const Rational& v) {
    // v = T(y_0..y_{n-1}) lands at x = (y_{n-1}, y_0, .., y_{n-2}).
    auto y = t.decode(w);
    int rest = 0;
    for (int i = 0; i + 1 < n; ++i) rest += spar[y[i]];
    const bool negate = spar[y[n - 1]] && (rest & 1);
    std::rotate(y.begin(), y.end() - 1, y.end());
    if (negate)
      out.at(y, o) -= v;
    else
      out.at(y, o) += v;
  });
  return out;
}

Tensor cyclic_symmetrize_form(const Tensor& t, const GradedSpace& space) {
  Tensor out = t;
  Tensor cur = t;
  for (int j = 1; j < t.arity(); ++j) {
    cur = rotate_form(cur, space);
    out += cur;
  }
  return out;
}

Tensor change_form_basis(const Tensor& t, const RationalMatrix& basis) {
  const int d = t.dim();
  Tensor cur = t;
  for (int slot = 0; slot < t.arity(); ++slot) {
    Tensor next(d, t.arity(), t.out_dim());
    cur.for_each_nonzero([&](long w, int o, const Rational& v) {
      auto letters = cur.decode(w);
      const int x = letters[slot];
      // T'(.., b_y, ..) = Σ_x basis(x, y) T(.., e_x, ..)
      for (int y = 0; y < d; ++y) {
        const Rational& c = basis(x, y);
        if (c == 0) continue;
        letters[slot] = y;
        next.at(letters, o) += c * v;
      }
    });
    cur = std::move(next);
  }
  return cur;
}

}  // namespace curvgraph
