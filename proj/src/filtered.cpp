#include "ssq/filtered.hpp"

#include <algorithm>
#include <climits>
#include <tuple>

#include "ssq/detail/quotient.hpp"
#include "ssq/detail/sparse.hpp"

namespace ssq {

// ---------------------------------------------------------------- FilteredComplex

FilteredComplex::FilteredComplex(BasedComplex C, std::map<int, std::vector<int>> levels)
    : C_(std::move(C)), levels_(std::move(levels)) {
  bool first = true;
  for (int n : C_.degrees()) {
    auto it = levels_.find(n);
    if (it == levels_.end() || it->second.size() != C_.dim(n))
      throw Error(ErrorKind::BadInput, "filtration does not cover degree " + std::to_string(C_.display(n)));
    for (int l : it->second) {
      if (first) s_ = t_ = l, first = false;
      s_ = std::min(s_, l);
      t_ = std::max(t_, l);
    }
  }
  for (auto it = levels_.begin(); it != levels_.end();) {
    if (C_.dim(it->first) == 0) it = levels_.erase(it);
    else ++it;
  }
  for (int n : C_.degrees()) {
    const ExactMatrix& d = C_.d(n);
    if (C_.dim(n - 1) == 0) continue;
    const auto& lo = levels_.at(n - 1);
    const auto& hi = levels_.at(n);
    for (std::size_t j = 0; j < d.cols(); ++j)
      for (auto& [i, v] : d.column(j))
        if (lo[i] > hi[j])
          throw Error(ErrorKind::NotFiltered, "d(" + C_.names(n)[j] + ") involves " + C_.names(n - 1)[i] +
                                                  " of higher filtration index");
  }
}

FilteredComplex FilteredComplex::trivial(BasedComplex C) {
  std::map<int, std::vector<int>> lv;
  for (int n : C.degrees()) lv[n] = std::vector<int>(C.dim(n), 0);
  return FilteredComplex(std::move(C), std::move(lv));
}

const std::vector<int>& FilteredComplex::levels(int n) const {
  static const std::vector<int> none;
  auto it = levels_.find(n);
  return it == levels_.end() ? none : it->second;
}

const FgModulePresentation* SpectralPage::at(Position pq) const {
  auto it = entries.find(pq);
  return it == entries.end() ? nullptr : &it->second;
}

std::size_t SpectralPage::dim(Position pq) const {
  auto m = at(pq);
  return m ? m->size() : 0;
}

// ---------------------------------------------------------------- engine

namespace detail {

class EngineBase {
 public:
  virtual ~EngineBase() = default;
  virtual const FilteredComplex& input() const = 0;
  virtual Submodule cycles(int r, int p, int n) = 0;
  virtual Submodule boundaries(int r, int p, int n) = 0;
  virtual FgModulePresentation entry(int r, int p, int n) = 0;
  virtual ExactMatrix differential(int r, int p, int n) = 0;
  virtual FgModulePresentation homology(int n) = 0;
  virtual std::vector<SparseColumn> entry_reps(int r, int p, int n) = 0;
  virtual std::vector<SparseColumn> homology_reps(int n) = 0;
  virtual std::optional<std::vector<Scalar>> entry_coords(int r, int p, int n, const SparseColumn& z) = 0;
  virtual std::optional<std::vector<Scalar>> homology_coords(int n, const SparseColumn& z) = 0;
  virtual bool has_block(int p, int n) const = 0;
  virtual void verify(int r, int p, int n) = 0;
};

template <class D>
class Engine final : public EngineBase {
  using T = typename D::T;
  using V = SVec<T>;

 public:
  Engine(FilteredComplex fc, D d) : fc_(std::move(fc)), d_(d) {
    const BasedComplex& C = fc_.complex();
    for (int n : C.degrees()) {
      Deg& g = deg_[n];
      const auto& lv = fc_.levels(n);
      const std::size_t k = lv.size();
      g.order.resize(k);
      for (std::size_t i = 0; i < k; ++i) g.order[i] = static_cast<std::uint32_t>(i);
      std::stable_sort(g.order.begin(), g.order.end(), [&](std::uint32_t a, std::uint32_t b) { return lv[a] < lv[b]; });
      g.pos.resize(k);
      g.lvl.resize(k);
      for (std::size_t i = 0; i < k; ++i) {
        g.pos[g.order[i]] = static_cast<std::uint32_t>(i);
        g.lvl[i] = lv[g.order[i]];
      }
    }
    for (auto& [n, g] : deg_) {
      const ExactMatrix& dn = C.d(n);
      auto below = deg_.find(n - 1);
      g.dcols.resize(g.order.size());
      if (below == deg_.end()) continue;
      for (std::size_t s = 0; s < g.order.size(); ++s) {
        V col;
        for (auto& [i, v] : dn.column(g.order[s])) col.emplace_back(below->second.pos[i], d_.from(v));
        std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        g.dcols[s] = std::move(col);
      }
    }
  }

  const FilteredComplex& input() const override { return fc_; }

  bool has_block(int p, int n) const override {
    auto it = deg_.find(n);
    if (it == deg_.end()) return false;
    return it->second.upto(p) > it->second.upto(p - 1);
  }

  Submodule cycles(int r, int p, int n) override { return to_sub(n, z_gens(r, p, n)); }
  Submodule boundaries(int r, int p, int n) override { return to_sub(n, b_gens(r, p, n)); }

  FgModulePresentation entry(int r, int p, int n) override {
    const QuotientT<D>* q = quotient(r, p, n);
    FgModulePresentation m;
    m.ring = fc_.ring();
    m.representatives = ExactMatrix(fc_.ring(), fc_.complex().dim(n), 0);
    if (!q) return m;
    m.invariantFactors = q->factors();
    for (std::size_t g = 0; g < q->ngens(); ++g) m.representatives.append_column(to_orig(n, q->rep_lift(g)));
    return m;
  }

  ExactMatrix differential(int r, int p, int n) override {
    const QuotientT<D>* src = quotient(r, p, n);
    const QuotientT<D>* dst = quotient(r, p - r, n - 1);
    const std::size_t rows = dst ? dst->ngens() : 0, cols = src ? src->ngens() : 0;
    ExactMatrix M(fc_.ring(), rows, 0);
    for (std::size_t g = 0; g < cols; ++g) {
      V y = apply_d(n, src->rep_lift(g));
      M.append_column(target_class(r, p, n, y, dst));
    }
    return M;
  }

  void verify(int r, int p, int n) override {
    const QuotientT<D>* dst = quotient(r, p - r, n - 1);
    if (r == 0 || !quotient(r, p, n)) return;
    for (auto& w : z_gens(r - 1, p - 1, n)) {
      auto col = target_class(r, p, n, apply_d(n, w), dst);
      if (!col.empty()) throw Error(ErrorKind::IllDefined, "d^r depends on the choice of lift");
    }
  }

  FgModulePresentation homology(int n) override {
    const QuotientT<D>* q = hquotient(n);
    FgModulePresentation m;
    m.ring = fc_.ring();
    m.representatives = ExactMatrix(fc_.ring(), fc_.complex().dim(n), 0);
    if (!q) return m;
    m.invariantFactors = q->factors();
    for (std::size_t g = 0; g < q->ngens(); ++g) m.representatives.append_column(to_orig(n, q->rep_lift(g)));
    return m;
  }

  std::vector<SparseColumn> entry_reps(int r, int p, int n) override {
    std::vector<SparseColumn> out;
    if (auto q = quotient(r, p, n))
      for (std::size_t g = 0; g < q->ngens(); ++g) out.push_back(to_orig(n, q->rep_lift(g)));
    return out;
  }

  std::vector<SparseColumn> homology_reps(int n) override {
    std::vector<SparseColumn> out;
    if (auto q = hquotient(n))
      for (std::size_t g = 0; g < q->ngens(); ++g) out.push_back(to_orig(n, q->rep_lift(g)));
    return out;
  }

  std::optional<std::vector<Scalar>> entry_coords(int r, int p, int n, const SparseColumn& z) override {
    const QuotientT<D>* q = quotient(r, p, n);
    if (!q) return std::vector<Scalar>{};
    auto c = q->coords(project(n, p, to_sorted(n, z)));
    return lift_scalars(c);
  }

  std::optional<std::vector<Scalar>> homology_coords(int n, const SparseColumn& z) override {
    const QuotientT<D>* q = hquotient(n);
    if (!q) return std::vector<Scalar>{};
    return lift_scalars(q->coords(to_sorted(n, z)));
  }

 private:
  struct Deg {
    std::vector<std::uint32_t> order;  // sorted position -> original index
    std::vector<std::uint32_t> pos;    // original index -> sorted position
    std::vector<int> lvl;              // sorted position -> level
    std::vector<V> dcols;              // d_n columns in sorted coordinates
    std::size_t upto(int p) const {
      return static_cast<std::size_t>(std::upper_bound(lvl.begin(), lvl.end(), p) - lvl.begin());
    }
  };
  struct Red {
    std::vector<V> R, C;
    std::vector<int> pivlev;  // INT_MIN for columns reducing to zero
  };

  static constexpr int kZero = INT_MIN;

  std::optional<std::vector<Scalar>> lift_scalars(const std::optional<std::vector<T>>& c) const {
    if (!c) return std::nullopt;
    std::vector<Scalar> out;
    for (auto& x : *c) out.push_back(d_.to(x));
    return out;
  }

  const Deg* deg(int n) const {
    auto it = deg_.find(n);
    return it == deg_.end() ? nullptr : &it->second;
  }

  // Column echelon of d_n. Over a field one pass serves every prefix F_s; over Z a
  // pivot clash may rewrite an earlier column, so each prefix gets its own pass.
  const Red* red(int n, int s) {
    const Deg* g = deg(n);
    if (!g || s < fc_.min_level()) return nullptr;
    s = std::min(s, fc_.max_level());
    if constexpr (D::field) {
      auto it = field_red_.find(n);
      if (it != field_red_.end()) return &it->second;
      const Red* above = red(n + 1, fc_.max_level());
      std::vector<const V*> cleared(g->order.size(), nullptr);
      if (above)
        for (auto& col : above->R)
          if (!col.empty()) cleared[col.back().first] = &col;
      Echelon<D> e(d_, true);
      for (std::size_t j = 0; j < g->order.size(); ++j) {
        if (cleared[j]) e.insert_zero(*cleared[j]);
        else e.insert(g->dcols[j], V{{static_cast<std::uint32_t>(j), d_.one()}});
      }
      return &(field_red_[n] = finish(n, std::move(e)));
    } else {
      auto key = std::make_pair(n, s);
      auto it = z_red_.find(key);
      if (it != z_red_.end()) return &it->second;
      Echelon<D> e(d_, true);
      const std::size_t k = g->upto(s);
      for (std::size_t j = 0; j < k; ++j) e.insert(g->dcols[j], V{{static_cast<std::uint32_t>(j), d_.one()}});
      return &(z_red_[key] = finish(n, std::move(e)));
    }
  }

  Red finish(int n, Echelon<D>&& e) {
    Red out;
    out.R = std::move(e.R);
    out.C = std::move(e.C);
    const Deg* below = deg(n - 1);
    out.pivlev.resize(out.R.size(), kZero);
    for (std::size_t j = 0; j < out.R.size(); ++j)
      if (!out.R[j].empty()) out.pivlev[j] = below->lvl[out.R[j].back().first];
    return out;
  }

  // Z^r_p in degree n: F_p ∩ d^{-1}(F_{p-r}).
  std::vector<V> z_gens(int r, int p, int n) {
    std::vector<V> out;
    const Red* rd = red(n, p);
    if (!rd) return out;
    const std::size_t k = std::min(deg(n)->upto(p), rd->R.size());
    for (std::size_t j = 0; j < k; ++j)
      if (rd->pivlev[j] == kZero || rd->pivlev[j] <= p - r) out.push_back(rd->C[j]);
    return out;
  }

  // B^r_p in degree n: F_p ∩ d(F_{p+r}).
  std::vector<V> b_gens(int r, int p, int n) {
    std::vector<V> out;
    const Red* rd = red(n + 1, p + r);
    if (!rd) return out;
    const std::size_t k = std::min(deg(n + 1)->upto(p + r), rd->R.size());
    for (std::size_t j = 0; j < k; ++j)
      if (rd->pivlev[j] != kZero && rd->pivlev[j] <= p) out.push_back(rd->R[j]);
    return out;
  }

  V project(int n, int p, const V& v) const {
    const Deg* g = deg(n);
    V out;
    for (auto& e : v)
      if (g->lvl[e.first] == p) out.push_back(e);
    return out;
  }

  // E^r_{p, n-p} = phi_p(Z^r_p) / phi_p(B^{r-1}_p), phi_p the projection to the level-p block.
  const QuotientT<D>* quotient(int r, int p, int n) {
    if (!has_block(p, n)) return nullptr;
    auto key = std::make_tuple(r, p, n);
    auto it = entries_.find(key);
    if (it != entries_.end()) return it->second.get();
    std::vector<V> vg, lifts, wg;
    for (auto& z : z_gens(r, p, n)) {
      V pz = project(n, p, z);
      if (pz.empty()) continue;
      vg.push_back(std::move(pz));
      lifts.push_back(std::move(z));
    }
    if (r > 0)
      for (auto& b : b_gens(r - 1, p, n)) {
        V pb = project(n, p, b);
        if (!pb.empty()) wg.push_back(std::move(pb));
      }
    auto q = std::make_unique<QuotientT<D>>(d_, std::move(vg), std::move(lifts), wg);
    return (entries_[key] = std::move(q)).get();
  }

  const QuotientT<D>* hquotient(int n) {
    const Deg* g = deg(n);
    if (!g) return nullptr;
    auto it = hom_.find(n);
    if (it != hom_.end()) return it->second.get();
    std::vector<V> cyc, bd;
    if (const Red* rd = red(n, fc_.max_level()))
      for (std::size_t j = 0; j < rd->R.size(); ++j)
        if (rd->pivlev[j] == kZero) cyc.push_back(rd->C[j]);
    if (const Red* up = red(n + 1, fc_.max_level()))
      for (auto& col : up->R)
        if (!col.empty()) bd.push_back(col);
    auto lifts = cyc;
    auto q = std::make_unique<QuotientT<D>>(d_, std::move(cyc), std::move(lifts), bd);
    return (hom_[n] = std::move(q)).get();
  }

  V apply_d(int n, const V& z) const {
    const Deg* g = deg(n);
    V y;
    for (auto& [j, c] : z) y = axpy(d_, y, c, g->dcols[j]);
    return y;
  }

  SparseColumn target_class(int r, int p, int n, const V& y, const QuotientT<D>* dst) {
    if (!y.empty()) {
      const Deg* below = deg(n - 1);
      if (below->lvl[y.back().first] > p - r)
        throw Error(ErrorKind::IllDefined, "d of a representative leaves F_{p-r}");
    }
    SparseColumn col;
    if (!dst) return col;
    auto c = dst->coords(project(n - 1, p - r, y));
    if (!c) throw Error(ErrorKind::IllDefined, "d of a representative is not a cycle of the target entry");
    for (std::size_t i = 0; i < c->size(); ++i)
      if (!d_.is_zero((*c)[i])) col.emplace_back(static_cast<std::uint32_t>(i), d_.to((*c)[i]));
    return col;
  }

  SparseColumn to_orig(int n, const V& v) const {
    const Deg* g = deg(n);
    SparseColumn out;
    for (auto& [i, x] : v) out.emplace_back(g->order[i], d_.to(x));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

  V to_sorted(int n, const SparseColumn& c) const {
    const Deg* g = deg(n);
    V out;
    for (auto& [i, x] : c) {
      auto v = d_.from(x);
      if (!d_.is_zero(v)) out.emplace_back(g->pos.at(i), std::move(v));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

  Submodule to_sub(int n, const std::vector<V>& gens) const {
    ExactMatrix m(fc_.ring(), fc_.complex().dim(n), 0);
    for (auto& v : gens) m.append_column(to_orig(n, v));
    return Submodule(fc_.complex().dim(n), std::move(m));
  }

  FilteredComplex fc_;
  D d_;
  std::map<int, Deg> deg_;
  std::map<int, Red> field_red_;
  std::map<std::pair<int, int>, Red> z_red_;
  std::map<std::tuple<int, int, int>, std::unique_ptr<QuotientT<D>>> entries_;
  std::map<int, std::unique_ptr<QuotientT<D>>> hom_;
};

}  // namespace detail

// ---------------------------------------------------------------- SpectralSequence

SpectralSequence::SpectralSequence(FilteredComplex fc) {
  Ring R = fc.ring();
  e_ = detail::with_domain(R, [&](auto d) -> std::unique_ptr<detail::EngineBase> {
    return std::make_unique<detail::Engine<decltype(d)>>(std::move(fc), d);
  });
}

SpectralSequence::~SpectralSequence() = default;
SpectralSequence::SpectralSequence(SpectralSequence&&) noexcept = default;

const FilteredComplex& SpectralSequence::input() const { return e_->input(); }

Submodule SpectralSequence::cycles(int r, int p, int q) { return e_->cycles(r, p, p + q); }
Submodule SpectralSequence::boundaries(int r, int p, int q) { return e_->boundaries(r, p, p + q); }

int SpectralSequence::stabilization_index() const { return input().max_level() - input().min_level() + 1; }

std::vector<Position> SpectralSequence::box() const {
  std::vector<Position> out;
  const FilteredComplex& fc = input();
  for (int n : fc.complex().degrees()) {
    if (!fc.certified(n)) continue;
    for (int p = fc.min_level(); p <= fc.max_level(); ++p)
      if (e_->has_block(p, n)) out.emplace_back(p, n - p);
  }
  return out;
}

ExactMatrix SpectralSequence::induced_differential(int r, int p, int q) { return e_->differential(r, p, p + q); }

void SpectralSequence::verify_well_defined(int r, int p, int q) { e_->verify(r, p, p + q); }

SpectralPage SpectralSequence::page(int r) {
  if (r < 0) throw Error(ErrorKind::BadInput, "page number must be non-negative");
  const FilteredComplex& fc = input();
  SpectralPage E;
  E.r = r;
  E.ring = fc.ring();
  E.cohomological = fc.cohomological();
  E.window = fc.window();
  auto positions = box();
  for (auto pq : positions) E.entries[pq] = e_->entry(r, pq.first, pq.first + pq.second);
  for (auto pq : positions) {
    Position tgt = E.target(pq);
    int tn = tgt.first + tgt.second;
    bool tgt_known = E.entries.count(tgt) || fc.certified(tn) || fc.complex().dim(tn) == 0;
    if (!tgt_known) continue;
    if (E.entries.count(tgt)) E.differentials[pq] = e_->differential(r, pq.first, pq.first + pq.second);
    else E.differentials[pq] = ExactMatrix(fc.ring(), 0, E.entries[pq].size());
  }
  return E;
}

SpectralPage SpectralSequence::infinity_page() { return page(stabilization_index()); }

FgModulePresentation SpectralSequence::total_homology(int n) { return e_->homology(n); }

ExtensionTower SpectralSequence::extension_tower(int n) {
  const FilteredComplex& fc = input();
  int r = stabilization_index();
  std::vector<std::pair<int, FgModulePresentation>> diag;
  for (int p = fc.min_level(); p <= fc.max_level(); ++p) {
    FgModulePresentation m = e_->has_block(p, n) ? e_->entry(r, p, n) : FgModulePresentation::free(fc.ring(), 0);
    m.representatives = ExactMatrix(fc.ring(), 0, 0);
    diag.emplace_back(p, m);
  }
  return tower_from_diagonal(fc.ring(), fc.complex().display(n), diag);
}

namespace {

ExactMatrix coords_matrix(const Ring& R, std::size_t rows, const std::vector<std::optional<std::vector<Scalar>>>& cols) {
  ExactMatrix M(R, rows, 0);
  for (auto& c : cols) {
    if (!c) throw Error(ErrorKind::IllDefined, "edge map representative outside its target");
    SparseColumn col;
    for (std::size_t i = 0; i < c->size(); ++i)
      if (!(*c)[i].is_zero()) col.emplace_back(static_cast<std::uint32_t>(i), (*c)[i]);
    M.append_column(std::move(col));
  }
  return M;
}

}  // namespace

EdgeMaps SpectralSequence::edge_maps() {
  const FilteredComplex& fc = input();
  const BasedComplex& C = fc.complex();
  const bool coh = fc.cohomological();
  for (int n : C.degrees())
    for (std::size_t i = 0; i < C.dim(n); ++i) {
      int p = fc.level(n, i), q = n - p;
      if (coh) p = -p, q = -q;
      if (p < 0 || q < 0)
        throw Error(ErrorKind::NotFirstQuadrant, "basis element '" + C.names(n)[i] + "' sits at (" + std::to_string(p) +
                                                     "," + std::to_string(q) + ")");
    }
  const Ring& R = fc.ring();
  const int rinf = stabilization_index();
  EdgeMaps out;
  for (int n : C.degrees()) {
    if (!fc.certified(n)) continue;
    const int k = C.display(n);
    const int onto = coh ? 0 : k;
    const int into = coh ? -k : 0;

    auto hreps = e_->homology_reps(n);
    std::vector<std::optional<std::vector<Scalar>>> cols;
    std::size_t einf_dim = e_->entry_reps(rinf, onto, n).size();
    for (auto& h : hreps) cols.push_back(e_->entry_coords(rinf, onto, n, h));
    out.h_to_einf[k] = coords_matrix(R, einf_dim, cols);
    out.onto_rank[k] = rank(out.h_to_einf[k]);

    cols.clear();
    std::size_t e2_dim = e_->entry_reps(2, onto, n).size();
    for (auto& z : e_->entry_reps(rinf, onto, n)) cols.push_back(e_->entry_coords(2, onto, n, z));
    out.einf_to_e2[k] = coords_matrix(R, e2_dim, cols);

    auto e2reps = e_->entry_reps(2, into, n);
    auto einfreps = e_->entry_reps(rinf, into, n);
    cols.clear();
    for (auto& z : e2reps) cols.push_back(e_->entry_coords(rinf, into, n, z));
    out.e2_to_einf[k] = coords_matrix(R, einfreps.size(), cols);
    cols.clear();
    for (auto& z : einfreps) cols.push_back(e_->homology_coords(n, z));
    out.einf_to_h[k] = coords_matrix(R, hreps.size(), cols);
    cols.clear();
    for (auto& z : e2reps) cols.push_back(e_->homology_coords(n, z));
    out.e2_to_h[k] = coords_matrix(R, hreps.size(), cols);
    out.into_rank[k] = rank(out.e2_to_h[k]);
  }
  return out;
}

// ---------------------------------------------------------------- free functions

Submodule cycles_Z(const FilteredComplex& FC, int r, int p, int q) { return SpectralSequence(FC).cycles(r, p, q); }
Submodule boundaries_B(const FilteredComplex& FC, int r, int p, int q) { return SpectralSequence(FC).boundaries(r, p, q); }
SpectralPage page(const FilteredComplex& FC, int r) { return SpectralSequence(FC).page(r); }
ExactMatrix induced_differential(const FilteredComplex& FC, int r, int p, int q) {
  SpectralSequence ss(FC);
  ss.verify_well_defined(r, p, q);
  return ss.induced_differential(r, p, q);
}
int stabilization_index(const FilteredComplex& FC) { return FC.max_level() - FC.min_level() + 1; }
SpectralPage infinity_page(const FilteredComplex& FC) { return SpectralSequence(FC).infinity_page(); }
ExtensionTower extension_tower(const FilteredComplex& FC, int n) {
  return SpectralSequence(FC).extension_tower(FC.complex().internal(n));
}
EdgeMaps edge_maps(const FilteredComplex& FC) { return SpectralSequence(FC).edge_maps(); }

SpectralPage graded_homology(const FilteredComplex& FC) {
  const BasedComplex& C = FC.complex();
  const Ring& R = C.ring();
  SpectralPage E;
  E.r = stabilization_index(FC);
  E.ring = R;
  E.window = FC.window();
  E.cohomological = C.cohomological();
  for (int n : C.degrees()) {
    if (!FC.certified(n)) continue;
    const std::size_t k = C.dim(n);
    const auto& lv = FC.levels(n);
    Submodule K = kernel_basis(C.d(n));
    Submodule Im = C.dim(n + 1) ? image_basis(C.d(n + 1)) : Submodule::zero(R, k);
    Submodule prev = Im;
    for (int p = FC.min_level(); p <= FC.max_level(); ++p) {
      bool block = false;
      for (int l : lv) block = block || l == p;
      // K ∩ F_p as K * ker(rows of K above level p)
      std::vector<std::uint32_t> above(k, UINT32_MAX);
      std::uint32_t na = 0;
      for (std::size_t i = 0; i < k; ++i)
        if (lv[i] > p) above[i] = na++;
      ExactMatrix top(R, na, 0);
      for (auto& col : K.generators.columns()) {
        SparseColumn c;
        for (auto& [i, v] : col)
          if (above[i] != UINT32_MAX) c.emplace_back(above[i], v);
        top.append_column(std::move(c));
      }
      Submodule Kp = image_basis(K.generators * kernel_basis(top).generators);
      Submodule cur = sum(Kp, Im);
      if (block) {
        auto m = subquotient(cur, prev);
        E.entries[{p, n - p}] = std::move(m);
      }
      prev = std::move(cur);
    }
  }
  return E;
}

std::map<Position, FgModulePresentation> page_homology(const SpectralPage& E, const FilteredComplex* fc) {
  std::map<Position, FgModulePresentation> out;
  auto trusted = [&](int n) { return !fc || fc->certified(n) || fc->complex().dim(n) == 0; };
  for (auto& [pq, mid] : E.entries) {
    int n = pq.first + pq.second;
    if (!trusted(n - 1) || !trusted(n + 1)) continue;
    Position src{pq.first + E.r, pq.second - E.r + 1};
    Position tgt = E.target(pq);
    const FgModulePresentation* smod = E.at(src);
    const FgModulePresentation* tmod = E.at(tgt);
    std::vector<Int> tf = tmod ? tmod->invariantFactors : std::vector<Int>{};
    ExactMatrix outm(E.ring, tf.size(), mid.size());
    if (tmod) {
      auto it = E.differentials.find(pq);
      if (it == E.differentials.end()) continue;
      outm = it->second;
    }
    ExactMatrix inm(E.ring, mid.size(), 0);
    if (smod) {
      auto it = E.differentials.find(src);
      if (it == E.differentials.end()) continue;
      inm = it->second;
    }
    out[pq] = homology_at(E.ring, mid.invariantFactors, tf, inm, outm);
  }
  return out;
}

}  // namespace ssq
