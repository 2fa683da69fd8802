#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ssq/matrix.hpp"

namespace ssq {

struct SnfResult {
  ExactMatrix U, V, D;
  std::size_t rank = 0;
};

/** Span of the columns of `generators`, inside R^ambientDim. */
struct Submodule {
  std::size_t ambientDim = 0;
  ExactMatrix generators;

  Submodule() = default;
  Submodule(std::size_t ambient, ExactMatrix gens);
  static Submodule zero(Ring ring, std::size_t ambient);
  static Submodule full(Ring ring, std::size_t ambient);
  /** Span of the standard basis vectors e_i, i in idx. */
  static Submodule coordinate(Ring ring, std::size_t ambient, const std::vector<std::size_t>& idx);
  const Ring& ring() const { return generators.ring(); }
  std::size_t count() const { return generators.cols(); }
};

/**
 * Finitely generated module via invariant factors (0 = free summand; units dropped).
 * Representatives, when attached, are lifts of the generators in an ambient space.
 */
struct FgModulePresentation {
  Ring ring = Ring::integers();
  std::vector<Int> invariantFactors;
  ExactMatrix representatives;

  static FgModulePresentation detached(Ring ring, std::vector<Int> factors);
  static FgModulePresentation free(Ring ring, std::size_t rank);

  std::size_t free_rank() const;
  std::vector<Int> torsion() const;
  bool is_zero() const { return invariantFactors.empty(); }
  /** Number of generators; the dimension over a field. */
  std::size_t size() const { return invariantFactors.size(); }
  /** Product of the torsion factors (1 for torsion-free). */
  Int torsion_order() const;
  /** Same invariant factors (isomorphic modules). */
  bool isomorphic(const FgModulePresentation& o) const;
  /** Chart label: "0", "Z", "Z/4", "F_2^3", "Z^2+Z/2". */
  std::string label() const;
};

/** Brings factors into canonical form: absolute values, units dropped, divisibility chain, zeros last. */
std::vector<Int> canonical_factors(std::vector<Int> factors);

SnfResult smith_normal_form(const ExactMatrix& A);
std::size_t rank(const ExactMatrix& A);
Submodule kernel_basis(const ExactMatrix& A);
Submodule image_basis(const ExactMatrix& A);
Submodule sum(const Submodule& U, const Submodule& V);
Submodule intersect(const Submodule& U, const Submodule& V);
Submodule preimage(const ExactMatrix& A, const Submodule& T);
bool contains(const Submodule& U, const SparseColumn& y);
FgModulePresentation subquotient(const Submodule& V, const Submodule& W);

/** V/W with a coordinate map; the workhorse behind subquotient. */
class Quotient {
 public:
  Quotient(const Submodule& V, const Submodule& W);
  ~Quotient();
  Quotient(Quotient&&) noexcept;
  Quotient& operator=(Quotient&&) noexcept;

  const FgModulePresentation& presentation() const { return pres_; }
  /** Coordinates of y (reduced modulo the invariant factors), or nullopt when y is not in V. */
  std::optional<std::vector<Scalar>> coords(const SparseColumn& y) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  FgModulePresentation pres_;
};

/**
 * Module R^k / diag(factors) with a map from another such module, as used for homology
 * of pages and formal turns: ker(out) / im(in) at a middle module.
 */
FgModulePresentation homology_at(const Ring& ring, const std::vector<Int>& middle, const std::vector<Int>& target,
                                 const ExactMatrix& in, const ExactMatrix& out);

}  // namespace ssq
