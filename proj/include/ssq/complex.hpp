#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ssq/linalg.hpp"

namespace ssq {

/**
 * Finite based chain complex, stored homologically: d(n) maps C_n to C_{n-1}.
 * A cochain complex is stored under n -> -n with the same matrices; `cohomological`
 * only changes how degrees are displayed.
 */
class BasedComplex {
 public:
  BasedComplex() = default;
  /**
   * @param basis names per internal degree
   * @param diffs d_n : C_n -> C_{n-1} for the degrees that have one; missing ones are zero
   * Throws NotAComplex when some d_{n-1} d_n is nonzero.
   */
  BasedComplex(Ring ring, std::map<int, std::vector<std::string>> basis, std::map<int, ExactMatrix> diffs,
               bool cohomological = false);

  const Ring& ring() const { return ring_; }
  bool cohomological() const { return cohomological_; }
  std::size_t dim(int n) const;
  const std::vector<std::string>& names(int n) const;
  /** d_n as a dim(n-1) x dim(n) matrix (zero when not stored). */
  const ExactMatrix& d(int n) const;
  /** Internal degrees carrying basis elements, ascending. */
  std::vector<int> degrees() const;
  int min_degree() const;
  int max_degree() const;
  std::size_t total_dim() const;

  int display(int n) const { return cohomological_ ? -n : n; }
  int internal(int shown) const { return cohomological_ ? -shown : shown; }

  /** Locates a basis element by name; throws BadInput if absent. */
  std::pair<int, std::size_t> find(const std::string& name) const;

 private:
  Ring ring_ = Ring::integers();
  bool cohomological_ = false;
  std::map<int, std::vector<std::string>> basis_;
  std::map<int, ExactMatrix> d_;
  std::map<std::string, std::pair<int, std::size_t>> index_;
};

/** Returns the complex when every composite d d vanishes; NotAComplex(degree, witness column) otherwise. */
BasedComplex validate_complex(const BasedComplex& raw);

/** Homology per displayed degree, with representatives in C_n. */
struct GradedModule {
  Ring ring = Ring::integers();
  bool cohomological = false;
  std::map<int, FgModulePresentation> byDegree;

  const FgModulePresentation* at(int shown) const;
  std::size_t dim(int shown) const;
};

GradedModule homology(const BasedComplex& C);
/** H_n (or H^n for cochain complexes) with n a displayed degree. */
FgModulePresentation homology_in(const BasedComplex& C, int shown);

/** [dim M_0, ..., dim M_maxDegree]; NotAField over Z. */
std::vector<std::size_t> poincare_series(const GradedModule& M, int maxDegree);

}  // namespace ssq
