#pragma once

// Sparse subquotient V/W with a coordinate map. V and W are given by generators in a
// common ambient space; V additionally carries lifts (elements of some other space
// mapping onto the V generators) so representatives can be reported upstairs.
//
// Route: echelon basis of V; W in that basis gives a relation matrix X; X is column
// echeloned, unit pivots are eliminated sparsely, and only the leftover rows touched
// by non-unit relations go through a dense Smith form.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "ssq/detail/snf.hpp"
#include "ssq/detail/sparse.hpp"
#include "ssq/error.hpp"

namespace ssq::detail {

template <class D>
class QuotientT {
 public:
  using T = typename D::T;
  using V = SVec<T>;

  QuotientT(D d, std::vector<V> vgens, std::vector<V> lifts, const std::vector<V>& wgens) : d_(d), ev_(d, true) {
    lifts_ = std::move(lifts);
    for (std::size_t j = 0; j < vgens.size(); ++j) ev_.insert(std::move(vgens[j]), V{{static_cast<std::uint32_t>(j), d_.one()}});
    for (std::size_t s = 0; s < ev_.R.size(); ++s)
      if (!ev_.R[s].empty()) {
        slot_to_basis_[s] = static_cast<std::uint32_t>(basis_slots_.size());
        basis_slots_.push_back(s);
      }
    const std::size_t k = basis_slots_.size();

    Echelon<D> ex(d_, false);
    for (const auto& w : wgens) {
      auto x = in_basis(w);
      if (!x) throw Error(ErrorKind::NotContained, "a generator of the denominator is not in the numerator");
      ex.insert(std::move(*x));
    }
    for (auto& col : ex.R) {
      if (col.empty()) continue;
      if (d_.is_unit(col.back().second)) {
        unit_row_[col.back().first] = units_.size();
        units_.push_back(std::move(col));
      } else {
        nonunit_.push_back(std::move(col));
      }
    }
    std::set<std::uint32_t> srows;
    for (auto& c : nonunit_) {
      c = project(std::move(c));
      for (auto& e : c) srows.insert(e.first);
    }
    srows_.assign(srows.begin(), srows.end());
    for (std::size_t a = 0; a < srows_.size(); ++a) spos_[srows_[a]] = a;

    const std::size_t m = srows_.size(), n = nonunit_.size();
    typename DenseSnf<D>::Mat Y(m, std::vector<T>(n, d_.zero()));
    for (std::size_t j = 0; j < n; ++j)
      for (auto& [i, v] : nonunit_[j]) Y[spos_[i]][j] = v;
    snf_ = snf_dense(d_, std::move(Y), m, n, true);

    // Generators: non-unit torsion from the dense block, then free ones.
    for (std::size_t a = 0; a < m; ++a) {
      T dia = a < std::min(m, n) ? snf_.A[a][a] : d_.zero();
      if (!d_.is_zero(dia) && !d_.is_unit(dia)) gens_.push_back({true, a, d_.canon(dia)});
    }
    for (std::size_t a = 0; a < m; ++a) {
      T dia = a < std::min(m, n) ? snf_.A[a][a] : d_.zero();
      if (d_.is_zero(dia)) gens_.push_back({true, a, d_.zero()});
    }
    for (std::uint32_t i = 0; i < k; ++i)
      if (!unit_row_.count(i) && !spos_.count(i)) gens_.push_back({false, i, d_.zero()});
  }

  std::size_t ngens() const { return gens_.size(); }
  std::size_t basis_size() const { return basis_slots_.size(); }

  std::vector<Int> factors() const {
    std::vector<Int> f;
    for (auto& g : gens_) f.push_back(d_.factor(g.order));
    return f;
  }
  const T& order(std::size_t g) const { return gens_[g].order; }

  /** Coordinates of y in the generators (reduced modulo orders), or nullopt if y is not in V. */
  std::optional<std::vector<T>> coords(V y) const {
    auto x = in_basis(std::move(y));
    if (!x) return std::nullopt;
    V px = project(std::move(*x));
    std::vector<T> xs(srows_.size(), d_.zero());
    std::map<std::uint32_t, T> rest;
    for (auto& [i, v] : px) {
      auto it = spos_.find(i);
      if (it != spos_.end()) xs[it->second] = v;
      else rest[i] = v;
    }
    std::vector<T> out;
    out.reserve(gens_.size());
    for (auto& g : gens_) {
      if (g.dense) {
        T acc = d_.zero();
        for (std::size_t b = 0; b < xs.size(); ++b)
          if (!d_.is_zero(xs[b])) acc = d_.add(acc, d_.mul(snf_.P[g.index][b], xs[b]));
        out.push_back(d_.mod(acc, g.order));
      } else {
        auto it = rest.find(static_cast<std::uint32_t>(g.index));
        out.push_back(it == rest.end() ? d_.zero() : it->second);
      }
    }
    return out;
  }

  /** Representative of generator g in the ambient space of V. */
  V rep(std::size_t g) const { return expand(g, false); }
  /** Representative of generator g in the lift space. */
  V rep_lift(std::size_t g) const { return expand(g, true); }

 private:
  struct Gen {
    bool dense;
    std::size_t index;  // position in srows_ when dense, else basis row
    T order;
  };

  std::optional<V> in_basis(V y) const {
    V coeffs;
    ev_.reduce(y, &coeffs);
    if (!y.empty()) return std::nullopt;
    V x;
    for (auto& [s, c] : coeffs) x.emplace_back(slot_to_basis_.at(s), c);
    std::sort(x.begin(), x.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return x;
  }

  // Eliminates all rows owned by unit relations, top down.
  V project(V x) const {
    std::size_t pos = x.size();
    while (pos > 0) {
      --pos;
      auto it = unit_row_.find(x[pos].first);
      if (it == unit_row_.end()) continue;
      const V& u = units_[it->second];
      T q = d_.neg(d_.quot(x[pos].second, u.back().second));
      std::uint32_t row = x[pos].first;
      x = axpy(d_, x, q, u);
      pos = static_cast<std::size_t>(std::lower_bound(x.begin(), x.end(), row, [](const auto& e, std::uint32_t r) { return e.first < r; }) -
                                     x.begin());
    }
    return x;
  }

  V expand(std::size_t g, bool lift) const {
    V z;
    const Gen& gen = gens_[g];
    if (gen.dense) {
      for (std::size_t b = 0; b < srows_.size(); ++b)
        if (!d_.is_zero(snf_.Pinv[b][gen.index])) z.emplace_back(srows_[b], snf_.Pinv[b][gen.index]);
      std::sort(z.begin(), z.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    } else {
      z.emplace_back(static_cast<std::uint32_t>(gen.index), d_.one());
    }
    V out;
    for (auto& [b, c] : z) {
      std::size_t s = basis_slots_[b];
      if (lift) {
        for (auto& [j, cj] : ev_.C[s]) out = axpy(d_, out, d_.mul(c, cj), lifts_[j]);
      } else {
        out = axpy(d_, out, c, ev_.R[s]);
      }
    }
    return out;
  }

  D d_;
  Echelon<D> ev_;
  std::vector<V> lifts_;
  std::vector<std::size_t> basis_slots_;
  std::map<std::size_t, std::uint32_t> slot_to_basis_;
  std::vector<V> units_;
  std::map<std::uint32_t, std::size_t> unit_row_;
  std::vector<V> nonunit_;
  std::vector<std::uint32_t> srows_;
  std::map<std::uint32_t, std::size_t> spos_;
  DenseSnf<D> snf_;
  std::vector<Gen> gens_;
};

}  // namespace ssq::detail
