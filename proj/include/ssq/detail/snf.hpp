#pragma once

// Dense Smith normal form with transforms: P * A * Q = diag. Over Z the pivot is the
// entry of minimal absolute value, which keeps coefficient growth down at desk scale.

#include <utility>
#include <vector>

#include "ssq/detail/domain.hpp"

namespace ssq::detail {

template <class D>
struct DenseSnf {
  using T = typename D::T;
  using Mat = std::vector<std::vector<T>>;
  Mat A;     // becomes the diagonal form
  Mat P;     // m x m
  Mat Pinv;  // m x m, maintained only when requested
  Mat Q;     // n x n
  std::size_t rank = 0;
};

template <class D>
class SnfWorker {
 public:
  using T = typename D::T;
  using Mat = std::vector<std::vector<T>>;

  SnfWorker(D d, Mat a, std::size_t m, std::size_t n, bool pinv) : d_(d), m_(m), n_(n), pinv_(pinv) {
    out_.A = std::move(a);
    out_.A.resize(m, std::vector<T>(n, d_.zero()));
    out_.P = ident(m);
    if (pinv_) out_.Pinv = ident(m);
    out_.Q = ident(n);
  }

  DenseSnf<D> run() {
    auto& A = out_.A;
    std::size_t t = 0;
    for (; t < std::min(m_, n_); ++t) {
      auto [pi, pj] = min_entry(t);
      if (pi == m_) break;
      swap_rows(t, pi);
      swap_cols(t, pj);
      while (true) {
        bool clean = true;
        for (std::size_t i = t + 1; i < m_; ++i)
          if (!d_.is_zero(A[i][t])) {
            row_axpy(i, t, d_.neg(d_.quot(A[i][t], A[t][t])));
            if (!d_.is_zero(A[i][t])) clean = false;
          }
        for (std::size_t j = t + 1; j < n_; ++j)
          if (!d_.is_zero(A[t][j])) {
            col_axpy(j, t, d_.neg(d_.quot(A[t][j], A[t][t])));
            if (!d_.is_zero(A[t][j])) clean = false;
          }
        if (!clean) {
          std::size_t bi = t, bj = t;
          for (std::size_t i = t + 1; i < m_; ++i)
            if (!d_.is_zero(A[i][t]) && d_.size(A[i][t]) < d_.size(A[bi][bj])) bi = i, bj = t;
          for (std::size_t j = t + 1; j < n_; ++j)
            if (!d_.is_zero(A[t][j]) && d_.size(A[t][j]) < d_.size(A[bi][bj])) bi = t, bj = j;
          swap_rows(t, bi);
          swap_cols(t, bj);
          continue;
        }
        if constexpr (!D::field) {
          std::size_t bad = m_;
          for (std::size_t i = t + 1; i < m_ && bad == m_; ++i)
            for (std::size_t j = t + 1; j < n_; ++j)
              if (!d_.divides(A[t][t], A[i][j])) {
                bad = i;
                break;
              }
          if (bad != m_) {
            row_axpy(t, bad, d_.one());
            continue;
          }
        }
        break;
      }
      normalize_pivot(t);
    }
    out_.rank = t;
    return std::move(out_);
  }

 private:
  Mat ident(std::size_t k) const {
    Mat I(k, std::vector<T>(k, d_.zero()));
    for (std::size_t i = 0; i < k; ++i) I[i][i] = d_.one();
    return I;
  }

  std::pair<std::size_t, std::size_t> min_entry(std::size_t t) const {
    std::size_t bi = m_, bj = n_;
    for (std::size_t i = t; i < m_; ++i)
      for (std::size_t j = t; j < n_; ++j)
        if (!d_.is_zero(out_.A[i][j]) && (bi == m_ || d_.size(out_.A[i][j]) < d_.size(out_.A[bi][bj]))) {
          bi = i, bj = j;
          if constexpr (D::field) return {bi, bj};
        }
    return {bi, bj};
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap(out_.A[a], out_.A[b]);
    std::swap(out_.P[a], out_.P[b]);
    if (pinv_)
      for (auto& row : out_.Pinv) std::swap(row[a], row[b]);
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (auto& row : out_.A) std::swap(row[a], row[b]);
    for (auto& row : out_.Q) std::swap(row[a], row[b]);
  }

  // row_i += c * row_k
  void row_axpy(std::size_t i, std::size_t k, const T& c) {
    for (std::size_t j = 0; j < n_; ++j) out_.A[i][j] = d_.add(out_.A[i][j], d_.mul(c, out_.A[k][j]));
    for (std::size_t j = 0; j < m_; ++j) out_.P[i][j] = d_.add(out_.P[i][j], d_.mul(c, out_.P[k][j]));
    if (pinv_)
      for (auto& row : out_.Pinv) row[k] = d_.sub(row[k], d_.mul(c, row[i]));
  }

  // col_j += c * col_k
  void col_axpy(std::size_t j, std::size_t k, const T& c) {
    for (auto& row : out_.A) row[j] = d_.add(row[j], d_.mul(c, row[k]));
    for (auto& row : out_.Q) row[j] = d_.add(row[j], d_.mul(c, row[k]));
  }

  void normalize_pivot(std::size_t t) {
    T a = out_.A[t][t];
    T c;
    if constexpr (D::field) {
      c = d_.inv(a);
    } else {
      if (!(a < 0)) return;
      c = d_.neg(d_.one());
    }
    for (auto& x : out_.A[t]) x = d_.mul(c, x);
    for (auto& x : out_.P[t]) x = d_.mul(c, x);
    if (pinv_) {
      T ci;
      if constexpr (D::field) ci = a;
      else ci = c;
      for (auto& row : out_.Pinv) row[t] = d_.mul(ci, row[t]);
    }
  }

  D d_;
  std::size_t m_, n_;
  bool pinv_;
  DenseSnf<D> out_;
};

template <class D>
DenseSnf<D> snf_dense(const D& d, typename DenseSnf<D>::Mat A, std::size_t m, std::size_t n, bool want_pinv) {
  return SnfWorker<D>(d, std::move(A), m, n, want_pinv).run();
}

}  // namespace ssq::detail
