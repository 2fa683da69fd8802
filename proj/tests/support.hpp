#pragma once

#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "ssq/linalg.hpp"

namespace ssq::test {

inline ExactMatrix mat(Ring R, std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<Scalar>> r;
  for (auto& row : rows) {
    r.emplace_back();
    for (long v : row) r.back().push_back(Scalar(v));
  }
  return ExactMatrix::from_rows(R, r);
}

inline SparseColumn vec(std::initializer_list<long> xs) {
  SparseColumn c;
  std::uint32_t i = 0;
  for (long v : xs) {
    if (v != 0) c.emplace_back(i, Scalar(v));
    ++i;
  }
  return c;
}

inline ExactMatrix random_matrix(std::mt19937& rng, Ring R, std::size_t m, std::size_t n, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  std::vector<std::vector<Scalar>> r(m, std::vector<Scalar>(n));
  for (auto& row : r)
    for (auto& x : row) x = Scalar(dist(rng));
  return ExactMatrix::from_rows(R, r);
}

inline std::vector<Int> ints(std::initializer_list<long> xs) {
  std::vector<Int> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

// Determinant by fraction Gaussian elimination; independent of the library's echelon code.
inline Rat det(const ExactMatrix& A) {
  auto M = A.to_rows();
  const std::size_t n = M.size();
  Rat d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t r = c;
    while (r < n && M[r][c].is_zero()) ++r;
    if (r == n) return 0;
    if (r != c) {
      std::swap(M[r], M[c]);
      d = -d;
    }
    d *= M[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      Rat f = M[i][c] / M[c][c];
      for (std::size_t j = c; j < n; ++j) M[i][j] -= f * M[c][j];
    }
  }
  return d;
}

}  // namespace ssq::test
