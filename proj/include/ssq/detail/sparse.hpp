#pragma once

// Sparse vectors over a domain and the column echelon used everywhere: columns are
// reduced until their pivots (largest row index) are distinct. Over Z a pivot clash
// that is not a divisibility is resolved by a unimodular gcd step on both columns.

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ssq/detail/domain.hpp"
#include "ssq/matrix.hpp"

namespace ssq::detail {

template <class T>
using SVec = std::vector<std::pair<std::uint32_t, T>>;

template <class D>
SVec<typename D::T> to_svec(const D& d, const SparseColumn& c) {
  SVec<typename D::T> out;
  out.reserve(c.size());
  for (auto& [i, v] : c) {
    auto x = d.from(v);
    if (!d.is_zero(x)) out.emplace_back(i, std::move(x));
  }
  return out;
}

template <class D>
SparseColumn from_svec(const D& d, const SVec<typename D::T>& v) {
  SparseColumn out;
  out.reserve(v.size());
  for (auto& [i, x] : v) out.emplace_back(i, d.to(x));
  return out;
}

// a*y + b*x
template <class D>
SVec<typename D::T> lincomb(const D& d, const typename D::T& a, const SVec<typename D::T>& y, const typename D::T& b,
                            const SVec<typename D::T>& x) {
  SVec<typename D::T> out;
  out.reserve(y.size() + x.size());
  std::size_t i = 0, j = 0;
  bool a_one = a == d.one(), b_one = b == d.one();
  while (i < y.size() || j < x.size()) {
    if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
      auto v = a_one ? y[i].second : d.mul(a, y[i].second);
      if (!d.is_zero(v)) out.emplace_back(y[i].first, std::move(v));
      ++i;
    } else if (i == y.size() || x[j].first < y[i].first) {
      auto v = b_one ? x[j].second : d.mul(b, x[j].second);
      if (!d.is_zero(v)) out.emplace_back(x[j].first, std::move(v));
      ++j;
    } else {
      auto v = d.add(a_one ? y[i].second : d.mul(a, y[i].second), b_one ? x[j].second : d.mul(b, x[j].second));
      if (!d.is_zero(v)) out.emplace_back(y[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

// y + c*x
template <class D>
SVec<typename D::T> axpy(const D& d, const SVec<typename D::T>& y, const typename D::T& c,
                         const SVec<typename D::T>& x) {
  return lincomb(d, d.one(), y, c, x);
}

template <class D>
typename D::T entry(const SVec<typename D::T>& v, std::uint32_t i, const D& d) {
  auto it = std::lower_bound(v.begin(), v.end(), i, [](const auto& e, std::uint32_t k) { return e.first < k; });
  if (it != v.end() && it->first == i) return it->second;
  return d.zero();
}

template <class D>
SVec<typename D::T> scale(const D& d, const SVec<typename D::T>& v, const typename D::T& c) {
  SVec<typename D::T> out;
  out.reserve(v.size());
  for (auto& [i, x] : v) {
    auto y = d.mul(c, x);
    if (!d.is_zero(y)) out.emplace_back(i, std::move(y));
  }
  return out;
}

// Sum of c_k * cols[k] for a sparse coefficient vector.
template <class D>
SVec<typename D::T> combine(const D& d, const SVec<typename D::T>& coeffs, const std::vector<SVec<typename D::T>>& cols) {
  SVec<typename D::T> acc;
  for (auto& [k, c] : coeffs) acc = axpy(d, acc, c, cols[k]);
  return acc;
}

template <class D>
class Echelon {
 public:
  using T = typename D::T;
  using V = SVec<T>;

  Echelon(D d, bool track) : dom(d), track_(track) {}

  /** Inserts a column with its tracking vector and reduces it. Returns its slot. */
  std::size_t insert(V col, V comb = {}) {
    std::size_t slot = R.size();
    R.push_back(std::move(col));
    if (track_) C.push_back(std::move(comb));
    reduce_slot(slot);
    return slot;
  }

  /** Inserts a column already known to reduce to zero, e.g. by clearing. */
  std::size_t insert_zero(V comb) {
    R.emplace_back();
    if (track_) C.push_back(std::move(comb));
    return R.size() - 1;
  }

  /**
   * Reduces y by the stored columns using exact divisions only. On return, y is the
   * remainder and coeffs (if given) holds c with y_in = y_out + sum c_k R_k.
   */
  void reduce(V& y, V* coeffs) const {
    std::vector<std::pair<std::uint32_t, T>> acc;
    while (!y.empty()) {
      auto it = owner.find(y.back().first);
      if (it == owner.end()) break;
      const V& x = R[it->second];
      const T& a = x.back().second;
      const T& b = y.back().second;
      if (!dom.divides(a, b)) break;
      T q = dom.quot(b, a);
      y = axpy(dom, y, dom.neg(q), x);
      if (coeffs) acc.emplace_back(it->second, q);
    }
    if (coeffs) {
      std::sort(acc.begin(), acc.end(), [](const auto& u, const auto& v) { return u.first < v.first; });
      V out;
      for (auto& e : acc) {
        if (!out.empty() && out.back().first == e.first) out.back().second = dom.add(out.back().second, e.second);
        else out.push_back(std::move(e));
      }
      coeffs->clear();
      for (auto& e : out)
        if (!dom.is_zero(e.second)) coeffs->push_back(std::move(e));
    }
  }

  bool pivot_owned(std::uint32_t row) const { return owner.count(row) != 0; }
  std::size_t size() const { return R.size(); }

  D dom;
  std::vector<V> R;
  std::vector<V> C;
  std::unordered_map<std::uint32_t, std::uint32_t> owner;

 private:
  void reduce_slot(std::size_t j) {
    while (!R[j].empty()) {
      std::uint32_t piv = R[j].back().first;
      auto it = owner.find(piv);
      if (it == owner.end()) {
        owner.emplace(piv, static_cast<std::uint32_t>(j));
        return;
      }
      std::size_t i = it->second;
      T a = R[i].back().second;
      T b = R[j].back().second;
      if (dom.divides(a, b)) {
        T q = dom.neg(dom.quot(b, a));
        R[j] = axpy(dom, R[j], q, R[i]);
        if (track_) C[j] = axpy(dom, C[j], q, C[i]);
        continue;
      }
      auto [g, s, t] = dom.gcdext(a, b);
      T ag = dom.quot(a, g), bg = dom.quot(b, g);
      V ri = lincomb(dom, s, R[i], t, R[j]);
      V rj = lincomb(dom, ag, R[j], dom.neg(bg), R[i]);
      R[i] = std::move(ri);
      R[j] = std::move(rj);
      if (track_) {
        V ci = lincomb(dom, s, C[i], t, C[j]);
        V cj = lincomb(dom, ag, C[j], dom.neg(bg), C[i]);
        C[i] = std::move(ci);
        C[j] = std::move(cj);
      }
    }
  }

  bool track_;
};

}  // namespace ssq::detail
