#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ssq/filtered.hpp"

namespace ssq {

/**
 * First-quadrant double complex in cohomological orientation: horizontal maps
 * (p,q) -> (p+1,q), vertical maps (p,q) -> (p,q+1), anticommuting.
 */
class DoubleComplex {
 public:
  DoubleComplex() = default;
  /**
   * Maps are keyed by source position; missing maps are zero. With `commutingSquares`
   * the vertical map out of column p is multiplied by (-1)^p first.
   * Throws NotAComplex when a square fails to anticommute or a map squares to nonzero.
   */
  DoubleComplex(Ring ring, std::map<Position, std::vector<std::string>> entries,
                std::map<Position, ExactMatrix> horizontal, std::map<Position, ExactMatrix> vertical,
                std::optional<int> truncatedAt = std::nullopt, bool commutingSquares = false);

  const Ring& ring() const { return ring_; }
  std::size_t dim(Position pq) const;
  const std::vector<std::string>& names(Position pq) const;
  const std::map<Position, std::vector<std::string>>& entries() const { return entries_; }
  /** Zero matrix of the right shape when absent. */
  ExactMatrix horizontal(Position pq) const;
  ExactMatrix vertical(Position pq) const;
  /** Entries live only at p + q <= N. */
  std::optional<int> truncation() const { return truncation_; }
  /** Largest total degree whose cohomology is trustworthy. */
  std::optional<int> certified_degree() const;

  /** Offset of entry (p,q) inside total degree p+q. */
  std::size_t offset(Position pq) const;

 private:
  Ring ring_ = Ring::integers();
  std::map<Position, std::vector<std::string>> entries_;
  std::map<Position, ExactMatrix> h_, v_;
  std::optional<int> truncation_;
};

/** Total cochain complex with d = d_h + d_v; basis names read "(p,q):name". */
BasedComplex totalize(const DoubleComplex& D);
/** Filtration by columns (index p, mirrored), windowed to the certified degrees. */
FilteredComplex column_filtration(const DoubleComplex& D);
/** Filtration by rows (index q). */
FilteredComplex row_filtration(const DoubleComplex& D);

}  // namespace ssq
