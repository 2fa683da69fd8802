#pragma once

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "ssq/complex.hpp"

namespace ssq {

/**
 * Based complex with an increasing filtration index per basis element (internal,
 * homological indexing). A cochain complex with a decreasing filtration is stored
 * with both degree and index negated.
 */
class FilteredComplex {
 public:
  FilteredComplex() = default;
  /** Throws NotFiltered when d raises the index of some basis element. */
  FilteredComplex(BasedComplex C, std::map<int, std::vector<int>> levels);

  /** Every basis element at level 0. */
  static FilteredComplex trivial(BasedComplex C);

  const BasedComplex& complex() const { return C_; }
  const Ring& ring() const { return C_.ring(); }
  bool cohomological() const { return C_.cohomological(); }
  int level(int n, std::size_t i) const { return levels_.at(n)[i]; }
  const std::vector<int>& levels(int n) const;
  /** [s, t]: F_{s-1} = 0 and F_t = C. */
  int min_level() const { return s_; }
  int max_level() const { return t_; }

  /** Restricts trusted results to internal degrees [lo, hi] (truncated inputs). */
  void set_window(int lo, int hi) { window_ = std::make_pair(lo, hi); }
  std::optional<std::pair<int, int>> window() const { return window_; }
  bool certified(int n) const { return !window_ || (n >= window_->first && n <= window_->second); }

 private:
  BasedComplex C_;
  std::map<int, std::vector<int>> levels_;
  int s_ = 0, t_ = 0;
  std::optional<std::pair<int, int>> window_;
};

using Position = std::pair<int, int>;  // (p, q), internal indexing

/** Page E^r: entries with representatives in C_{p+q} and the matrices of d^r keyed by source. */
struct SpectralPage {
  int r = 0;
  Ring ring = Ring::integers();
  bool cohomological = false;
  std::map<Position, FgModulePresentation> entries;
  std::map<Position, ExactMatrix> differentials;
  /** Internal total degrees whose entries are trustworthy; unset means all. */
  std::optional<std::pair<int, int>> window;

  const FgModulePresentation* at(Position pq) const;
  std::size_t dim(Position pq) const;
  /** Bidegree of d^r in internal indexing: (-r, r-1). */
  Position target(Position pq) const { return {pq.first - r, pq.second + r - 1}; }
  /** Internal position shown in the orientation of the input: (p,q) or (-p,-q). */
  Position display(Position pq) const { return cohomological ? Position{-pq.first, -pq.second} : pq; }
  Position internal(Position shown) const { return display(shown); }
};

struct ExtensionStep {
  int p = 0;
  FgModulePresentation quotient;                  // E^inf_{p, n-p}
  std::vector<FgModulePresentation> middles;      // possible A_p
};

/** Induced filtration of H_n: A_{p-1} -> A_p -> E^inf_{p,n-p}, bottom to top. */
struct ExtensionTower {
  int n = 0;
  Ring ring = Ring::integers();
  std::vector<ExtensionStep> steps;
  bool resolved = false;
  /** All candidates for H_n (one element when resolved). */
  std::vector<FgModulePresentation> candidates;
};

/**
 * Edge morphisms of a first-quadrant spectral sequence, keyed by displayed degree.
 * "onto" is the axis receiving H (cohomological p = 0, homological q = 0); "into" is
 * the axis mapping to H (cohomological q = 0, homological p = 0).
 */
struct EdgeMaps {
  std::map<int, ExactMatrix> h_to_einf;       // H -> E_inf (onto axis)
  std::map<int, ExactMatrix> einf_to_e2;      // E_inf -> E_2 (onto axis)
  std::map<int, ExactMatrix> e2_to_einf;      // E_2 -> E_inf (into axis)
  std::map<int, ExactMatrix> einf_to_h;       // E_inf -> H (into axis)
  std::map<int, ExactMatrix> e2_to_h;         // composite (into axis)
  std::map<int, std::size_t> onto_rank;       // rank of H -> E_inf
  std::map<int, std::size_t> into_rank;       // rank of E_2 -> H
};

namespace detail {
class EngineBase;
}

/** Caching engine for one filtered complex. All free functions below delegate to it. */
class SpectralSequence {
 public:
  explicit SpectralSequence(FilteredComplex fc);
  ~SpectralSequence();
  SpectralSequence(SpectralSequence&&) noexcept;

  const FilteredComplex& input() const;
  Submodule cycles(int r, int p, int q);
  Submodule boundaries(int r, int p, int q);
  SpectralPage page(int r);
  ExactMatrix induced_differential(int r, int p, int q);
  /** r* = t - s + 1. */
  int stabilization_index() const;
  SpectralPage infinity_page();
  /** Homology of the total complex, from the engine's own cycles and boundaries. */
  FgModulePresentation total_homology(int n);
  ExtensionTower extension_tower(int n);
  EdgeMaps edge_maps();
  /** Positions carrying a nonzero E^0 block inside the certified window. */
  std::vector<Position> box() const;
  /** Checks that d^r of each denominator generator vanishes in the target (lift independence). */
  void verify_well_defined(int r, int p, int q);

 private:
  std::unique_ptr<detail::EngineBase> e_;
};

Submodule cycles_Z(const FilteredComplex& FC, int r, int p, int q);
Submodule boundaries_B(const FilteredComplex& FC, int r, int p, int q);
SpectralPage page(const FilteredComplex& FC, int r);
ExactMatrix induced_differential(const FilteredComplex& FC, int r, int p, int q);
int stabilization_index(const FilteredComplex& FC);
SpectralPage infinity_page(const FilteredComplex& FC);
/** F_pH / F_{p-1}H with F_pH = Im(H(F_pC) -> H(C)), computed with kernel/intersect/subquotient only. */
SpectralPage graded_homology(const FilteredComplex& FC);
ExtensionTower extension_tower(const FilteredComplex& FC, int n);
EdgeMaps edge_maps(const FilteredComplex& FC);

/** Homology of (E^r, d^r) at each position of the page (the positions it can certify). */
std::map<Position, FgModulePresentation> page_homology(const SpectralPage& E, const FilteredComplex* fc = nullptr);

/** Possible middles B in 0 -> A -> B -> E -> 0 for abelian groups (or vector spaces). */
std::vector<FgModulePresentation> extension_candidates(const FgModulePresentation& A, const FgModulePresentation& E);

/** Tower from diagonal entries listed bottom to top. */
ExtensionTower tower_from_diagonal(const Ring& ring, int n, const std::vector<std::pair<int, FgModulePresentation>>& diag);

}  // namespace ssq
