#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "ssq/filtered.hpp"

namespace ssq {

enum class Orientation { Homological, Cohomological };
enum class Axis { Vertical, Horizontal };  // p = 0, q = 0

/**
 * User-supplied page E_r in displayed indexing. Entries are detached presentations;
 * differentials are keyed by (r, source) and written in the invariant-factor bases.
 * Positions missing from `entries` are zero.
 */
struct FormalPage {
  Ring ring = Ring::integers();
  Orientation orientation = Orientation::Homological;
  int r = 2;
  std::map<Position, FgModulePresentation> entries;
  std::map<std::tuple<int, int, int>, ExactMatrix> differentials;
  std::set<Axis> zeroAxes;
  std::vector<std::string> notes;

  const FgModulePresentation* at(Position pq) const;
  std::size_t size(Position pq) const;
  /** Homological (p - s, q + s - 1), cohomological (p + s, q - s + 1). */
  Position target(Position pq, int s) const;
  Position source(Position pq, int s) const;
  /** d_s out of pq is zero for bidegree reasons or by an axis constraint. */
  bool forced_zero(Position pq, int s) const;
  const ExactMatrix* supplied(Position pq, int s) const;
};

/**
 * Checks the differentials of the current page: shapes, well-definedness between cyclic
 * summands (a c = 0 mod b for Z/a -> Z/b), and d d = 0. Throws DimensionMismatch /
 * IllDefined / NotAComplex, and BadInput for differentials of earlier pages.
 */
void validate_formal(const FormalPage& P);

struct ForcedZeroReport {
  int start = 2;
  int rMax = 2;
  std::map<int, std::vector<Position>> unforced;  // r -> sources with a possibly nonzero d_r
  /** Set when nothing is unforced for r in [start, rMax]. */
  std::optional<int> collapsesAt;
};

ForcedZeroReport forced_zero_scan(const FormalPage& P, int rMax);
/** Largest r for which some d_r can still connect two entries. */
int formal_reach(const FormalPage& P);

/** E_{r+1} from E_r. MissingDifferential lists unforced positions without data. */
FormalPage turn_page(const FormalPage& P);
/** Turns until page `r` (no-op when already there). */
FormalPage turn_to(FormalPage P, int r);

/** Turns past the last page on which a differential can connect two entries. */
FormalPage turn_to_infinity(const FormalPage& P);

/**
 * Extension tower for diagonal n of a page that no longer changes on diagonals n, n+1
 * and n-1 (BadInput otherwise). Homological pages read bottom-up in p, cohomological top-down.
 */
ExtensionTower diagonal_extensions(const FormalPage& P, int n);

/** Zeroes every differential touching the axis and records why; BadInput on supplied nonzero data. */
FormalPage edge_injectivity_constraint(const FormalPage& P, Axis axis, const std::string& reason = "");

struct TargetCheck {
  int n = 0;
  FgModulePresentation target;
  std::vector<FgModulePresentation> candidates;
  bool consistent = false;
  /** True when the candidate set was unbounded and only rank and order were compared. */
  bool coarse = false;
};

/** Compares each declared H_n with the extension candidates of the diagonal. */
std::vector<TargetCheck> check_target(const FormalPage& P, const std::map<int, FgModulePresentation>& target);

/** Detaches an engine page (shown indexing) so it can be turned formally. */
FormalPage formal_from_page(const SpectralPage& E);

}  // namespace ssq
