#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ssq/ring.hpp"

namespace ssq {

using SparseColumn = std::vector<std::pair<std::uint32_t, Scalar>>;

/**
 * Matrix over a Ring with exact entries. Semantically dense (rows x cols, every entry
 * addressable) but stored as sorted sparse columns, since bar-resolution differentials
 * reach tens of thousands of rows.
 */
class ExactMatrix {
 public:
  ExactMatrix() : ring_(Ring::integers()) {}
  ExactMatrix(Ring ring, std::size_t rows, std::size_t cols);

  static ExactMatrix identity(Ring ring, std::size_t n);
  /** Row-major dense input; entries are normalized into the ring. */
  static ExactMatrix from_rows(Ring ring, const std::vector<std::vector<Scalar>>& rows);
  static ExactMatrix from_columns(Ring ring, std::size_t rows, std::vector<SparseColumn> cols);

  const Ring& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_.size(); }

  Scalar at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const Scalar& v);
  /** Adds v to entry (i,j). */
  void add_to(std::size_t i, std::size_t j, const Scalar& v);

  const SparseColumn& column(std::size_t j) const { return cols_[j]; }
  const std::vector<SparseColumn>& columns() const { return cols_; }
  void append_column(SparseColumn c);

  bool is_zero() const;
  std::size_t nonzeros() const;

  ExactMatrix operator*(const ExactMatrix& o) const;
  ExactMatrix operator+(const ExactMatrix& o) const;
  ExactMatrix transpose() const;
  /** Columns [begin, end). */
  ExactMatrix column_range(std::size_t begin, std::size_t end) const;
  /** Horizontal concatenation [this | o]. */
  ExactMatrix hcat(const ExactMatrix& o) const;
  ExactMatrix scaled(const Scalar& c) const;
  SparseColumn apply(const SparseColumn& x) const;

  std::vector<std::vector<Scalar>> to_rows() const;
  std::string to_string() const;

  bool operator==(const ExactMatrix& o) const;
  bool operator!=(const ExactMatrix& o) const { return !(*this == o); }

 private:
  Ring ring_;
  std::size_t rows_ = 0;
  std::vector<SparseColumn> cols_;
};

/** Normalizes and sorts a column, merging duplicate indices and dropping zeros. */
SparseColumn canonical_column(const Ring& ring, SparseColumn c);

}  // namespace ssq
