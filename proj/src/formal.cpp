#include "ssq/formal.hpp"

#include <algorithm>
#include <climits>

namespace ssq {

namespace {

std::string pos_str(Position pq) { return "(" + std::to_string(pq.first) + "," + std::to_string(pq.second) + ")"; }

bool on_axis(Axis a, Position pq) { return a == Axis::Vertical ? pq.first == 0 : pq.second == 0; }

const char* axis_name(Axis a) { return a == Axis::Vertical ? "vertical" : "horizontal"; }

// x == 0 in Z/b (b = 0 means Z); fields only need x == 0.
bool vanishes_mod(const Ring& R, const Scalar& x, const Int& b) {
  if (R.is_field() || b.is_zero()) return R.normalize(x) == 0;
  Int num = numerator(x);
  return (num % b).is_zero();
}

std::vector<Int> factors_of(const FormalPage& P, Position pq) {
  auto* m = P.at(pq);
  return m ? m->invariantFactors : std::vector<Int>{};
}

bool zero_mod_target(const FormalPage& P, const ExactMatrix& M, Position tgt) {
  auto b = factors_of(P, tgt);
  for (std::size_t j = 0; j < M.cols(); ++j)
    for (auto& [i, v] : M.column(j))
      if (!vanishes_mod(P.ring, v, b[i])) return false;
  return true;
}

// d_s out of pq as a matrix, or nullopt when unforced and not supplied.
std::optional<ExactMatrix> differential(const FormalPage& P, Position pq, int s) {
  std::size_t rows = P.size(P.target(pq, s)), cols = P.size(pq);
  if (P.forced_zero(pq, s)) return ExactMatrix(P.ring, rows, cols);
  if (auto* M = P.supplied(pq, s)) return *M;
  return std::nullopt;
}

}  // namespace

const FgModulePresentation* FormalPage::at(Position pq) const {
  auto it = entries.find(pq);
  return it == entries.end() ? nullptr : &it->second;
}

std::size_t FormalPage::size(Position pq) const {
  auto* m = at(pq);
  return m ? m->size() : 0;
}

Position FormalPage::target(Position pq, int s) const {
  if (orientation == Orientation::Homological) return {pq.first - s, pq.second + s - 1};
  return {pq.first + s, pq.second - s + 1};
}

Position FormalPage::source(Position pq, int s) const {
  if (orientation == Orientation::Homological) return {pq.first + s, pq.second - s + 1};
  return {pq.first - s, pq.second + s - 1};
}

bool FormalPage::forced_zero(Position pq, int s) const {
  Position t = target(pq, s);
  if (size(pq) == 0 || size(t) == 0) return true;
  for (Axis a : zeroAxes)
    if (on_axis(a, pq) || on_axis(a, t)) return true;
  return false;
}

const ExactMatrix* FormalPage::supplied(Position pq, int s) const {
  auto it = differentials.find({s, pq.first, pq.second});
  return it == differentials.end() ? nullptr : &it->second;
}

void validate_formal(const FormalPage& P) {
  for (auto& [pq, m] : P.entries)
    if (m.ring != P.ring) throw Error(ErrorKind::BadInput, "entry " + pos_str(pq) + " over a different ring");
  for (auto& [key, M] : P.differentials) {
    auto [s, p, q] = key;
    Position src{p, q}, tgt = P.target(src, s);
    std::string where = "d_" + std::to_string(s) + " at " + pos_str(src);
    if (s < P.r) throw Error(ErrorKind::BadInput, where + " belongs to a page before E_" + std::to_string(P.r));
    // Later differentials are written against later pages and checked when those are reached.
    if (s > P.r) continue;
    if (M.rows() != P.size(tgt) || M.cols() != P.size(src))
      throw Error(ErrorKind::DimensionMismatch, where + " is " + std::to_string(M.rows()) + "x" +
                                                    std::to_string(M.cols()) + ", expected " +
                                                    std::to_string(P.size(tgt)) + "x" + std::to_string(P.size(src)));
    auto a = factors_of(P, src), b = factors_of(P, tgt);
    for (std::size_t j = 0; j < M.cols(); ++j)
      for (auto& [i, v] : M.column(j))
        if (!vanishes_mod(P.ring, v * Scalar(a[j]), b[i]))
          throw Error(ErrorKind::IllDefined, where + ": generator " + std::to_string(j) + " of order " + a[j].str() +
                                                 " cannot map to " + Scalar(v).str() + " in Z/" + b[i].str());
    if (auto* N = P.supplied(tgt, s))
      if (!zero_mod_target(P, (*N) * M, P.target(tgt, s)))
        throw Error(ErrorKind::NotAComplex, where + " composed with the next d_" + std::to_string(s) + " is nonzero");
  }
}

int formal_reach(const FormalPage& P) {
  int pmin = INT_MAX, pmax = INT_MIN, qmin = INT_MAX, qmax = INT_MIN;
  for (auto& [pq, m] : P.entries) {
    if (m.is_zero()) continue;
    pmin = std::min(pmin, pq.first), pmax = std::max(pmax, pq.first);
    qmin = std::min(qmin, pq.second), qmax = std::max(qmax, pq.second);
  }
  if (pmin == INT_MAX) return P.r;
  return std::max(P.r, std::min(pmax - pmin, qmax - qmin + 1));
}

ForcedZeroReport forced_zero_scan(const FormalPage& P, int rMax) {
  ForcedZeroReport rep;
  rep.start = P.r;
  rep.rMax = rMax;
  bool any = false;
  for (int s = P.r; s <= rMax; ++s) {
    auto& list = rep.unforced[s];
    for (auto& [pq, m] : P.entries)
      if (!P.forced_zero(pq, s)) list.push_back(pq);
    any = any || !list.empty();
  }
  if (!any) rep.collapsesAt = P.r;
  return rep;
}

FormalPage turn_page(const FormalPage& P) {
  validate_formal(P);
  std::vector<Position> missing;
  for (auto& [pq, m] : P.entries)
    if (!differential(P, pq, P.r)) missing.push_back(pq);
  if (!missing.empty()) {
    std::string list;
    for (auto pq : missing) list += (list.empty() ? "" : ", ") + pos_str(pq);
    throw Error(ErrorKind::MissingDifferential, "d_" + std::to_string(P.r) + " not supplied at " + list);
  }
  FormalPage N;
  N.ring = P.ring;
  N.orientation = P.orientation;
  N.r = P.r + 1;
  N.zeroAxes = P.zeroAxes;
  N.notes = P.notes;
  for (auto& [pq, m] : P.entries) {
    Position src = P.source(pq, P.r), tgt = P.target(pq, P.r);
    ExactMatrix out = *differential(P, pq, P.r);
    ExactMatrix in = P.size(src) ? *differential(P, src, P.r) : ExactMatrix(P.ring, m.size(), 0);
    auto h = homology_at(P.ring, m.invariantFactors, factors_of(P, tgt), in, out);
    N.entries[pq] = FgModulePresentation::detached(P.ring, h.invariantFactors);
  }
  for (auto& [key, M] : P.differentials)
    if (std::get<0>(key) > P.r) N.differentials[key] = M;
  return N;
}

FormalPage turn_to(FormalPage P, int r) {
  if (r < P.r) throw Error(ErrorKind::BadInput, "cannot turn back from E_" + std::to_string(P.r));
  while (P.r < r) P = turn_page(P);
  return P;
}

FormalPage turn_to_infinity(const FormalPage& P) { return turn_to(P, std::max(P.r, formal_reach(P) + 1)); }

ExtensionTower diagonal_extensions(const FormalPage& P, int n) {
  validate_formal(P);
  int reach = formal_reach(P);
  for (int s = P.r; s <= reach; ++s)
    for (auto& [pq, m] : P.entries) {
      int k = pq.first + pq.second;
      if (k < n - 1 || k > n + 1) continue;
      auto d = differential(P, pq, s);
      if (!d || !zero_mod_target(P, *d, P.target(pq, s)))
        throw Error(ErrorKind::BadInput, "diagonal " + std::to_string(n) + " is not stable at E_" + std::to_string(P.r) +
                                             ": d_" + std::to_string(s) + " at " + pos_str(pq) +
                                             (d ? " is nonzero" : " is unknown"));
    }
  std::vector<std::pair<int, FgModulePresentation>> diag;
  for (auto& [pq, m] : P.entries)
    if (pq.first + pq.second == n) diag.push_back({pq.first, m});
  if (P.orientation == Orientation::Cohomological) std::reverse(diag.begin(), diag.end());
  return tower_from_diagonal(P.ring, n, diag);
}

FormalPage edge_injectivity_constraint(const FormalPage& P, Axis axis, const std::string& reason) {
  bool populated = false;
  for (auto& [pq, m] : P.entries) populated = populated || (on_axis(axis, pq) && !m.is_zero());
  if (!populated) return P;
  for (auto& [key, M] : P.differentials) {
    auto [s, p, q] = key;
    Position src{p, q};
    if ((on_axis(axis, src) || on_axis(axis, P.target(src, s))) && !M.is_zero())
      throw Error(ErrorKind::BadInput, "d_" + std::to_string(s) + " at " + pos_str(src) + " touches the " +
                                           axis_name(axis) + " axis but is nonzero");
  }
  FormalPage N = P;
  N.zeroAxes.insert(axis);
  N.notes.push_back(std::string(axis_name(axis)) + " axis: " +
                    (reason.empty() ? "edge morphism injective, so every d_r into or out of the axis vanishes" : reason));
  return N;
}

std::vector<TargetCheck> check_target(const FormalPage& P, const std::map<int, FgModulePresentation>& target) {
  std::vector<TargetCheck> out;
  for (auto& [n, T] : target) {
    TargetCheck c;
    c.n = n;
    c.target = T;
    try {
      c.candidates = diagonal_extensions(P, n).candidates;
      for (auto& x : c.candidates) c.consistent = c.consistent || x.isomorphic(T);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::UnboundedEnumeration) throw;
      c.coarse = true;
      std::size_t rank = 0;
      Int order = 1;
      for (auto& [pq, m] : P.entries)
        if (pq.first + pq.second == n) rank += m.free_rank(), order *= m.torsion_order();
      c.consistent = T.free_rank() == rank && T.torsion_order() <= order;
    }
    out.push_back(std::move(c));
  }
  return out;
}

FormalPage formal_from_page(const SpectralPage& E) {
  FormalPage P;
  P.ring = E.ring;
  P.orientation = E.cohomological ? Orientation::Cohomological : Orientation::Homological;
  P.r = E.r;
  for (auto& [pq, m] : E.entries) P.entries[E.display(pq)] = FgModulePresentation::detached(E.ring, m.invariantFactors);
  for (auto& [pq, M] : E.differentials) {
    if (M.rows() == 0) continue;
    Position s = E.display(pq);
    P.differentials[{E.r, s.first, s.second}] = M;
  }
  return P;
}

}  // namespace ssq
