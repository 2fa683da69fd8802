#include "ssq/double.hpp"

namespace ssq {

namespace {

void check_zero(const ExactMatrix& m, const std::string& what, Position pq) {
  if (!m.is_zero())
    throw Error(ErrorKind::NotAComplex,
                what + " at (" + std::to_string(pq.first) + "," + std::to_string(pq.second) + ") is nonzero");
}

}  // namespace

DoubleComplex::DoubleComplex(Ring ring, std::map<Position, std::vector<std::string>> entries,
                             std::map<Position, ExactMatrix> horizontal, std::map<Position, ExactMatrix> vertical,
                             std::optional<int> truncatedAt, bool commutingSquares)
    : ring_(std::move(ring)), truncation_(truncatedAt) {
  for (auto& [pq, names] : entries) {
    if (pq.first < 0 || pq.second < 0)
      throw Error(ErrorKind::BadInput, "double complex entries must sit at p, q >= 0");
    if (truncation_ && pq.first + pq.second > *truncation_)
      throw Error(ErrorKind::BadInput, "entry beyond the truncation p + q <= " + std::to_string(*truncation_));
    if (!names.empty()) entries_[pq] = std::move(names);
  }
  auto store = [&](std::map<Position, ExactMatrix>& dst, std::map<Position, ExactMatrix>& src, int dp, int dq,
                   const char* what) {
    for (auto& [pq, m] : src) {
      Position to{pq.first + dp, pq.second + dq};
      if (m.ring() != ring_) throw Error(ErrorKind::BadInput, std::string(what) + " map over the wrong ring");
      if (m.rows() != dim(to) || m.cols() != dim(pq))
        throw Error(ErrorKind::DimensionMismatch, std::string(what) + " map out of (" + std::to_string(pq.first) +
                                                      "," + std::to_string(pq.second) + ") has the wrong shape");
      if (!m.is_zero()) dst[pq] = std::move(m);
    }
  };
  store(h_, horizontal, 1, 0, "horizontal");
  store(v_, vertical, 0, 1, "vertical");
  if (commutingSquares)
    for (auto& [pq, m] : v_)
      if (pq.first % 2) m = m.scaled(Scalar(-1));

  for (auto& [pq, n] : entries_) {
    Position right{pq.first + 1, pq.second}, up{pq.first, pq.second + 1};
    check_zero(this->horizontal(right) * this->horizontal(pq), "d_h d_h", pq);
    check_zero(this->vertical(up) * this->vertical(pq), "d_v d_v", pq);
    check_zero(this->horizontal(up) * this->vertical(pq) + this->vertical(right) * this->horizontal(pq), "d_h d_v + d_v d_h", pq);
  }
}

std::size_t DoubleComplex::dim(Position pq) const {
  auto it = entries_.find(pq);
  return it == entries_.end() ? 0 : it->second.size();
}

const std::vector<std::string>& DoubleComplex::names(Position pq) const {
  static const std::vector<std::string> none;
  auto it = entries_.find(pq);
  return it == entries_.end() ? none : it->second;
}

ExactMatrix DoubleComplex::horizontal(Position pq) const {
  auto it = h_.find(pq);
  return it != h_.end() ? it->second : ExactMatrix(ring_, dim({pq.first + 1, pq.second}), dim(pq));
}

ExactMatrix DoubleComplex::vertical(Position pq) const {
  auto it = v_.find(pq);
  return it != v_.end() ? it->second : ExactMatrix(ring_, dim({pq.first, pq.second + 1}), dim(pq));
}

std::optional<int> DoubleComplex::certified_degree() const {
  if (!truncation_) return std::nullopt;
  return *truncation_ - 1;
}

std::size_t DoubleComplex::offset(Position pq) const {
  std::size_t off = 0;
  for (int p = 0; p < pq.first; ++p) off += dim({p, pq.first + pq.second - p});
  return off;
}

BasedComplex totalize(const DoubleComplex& D) {
  const Ring& R = D.ring();
  std::map<int, std::vector<std::string>> basis;
  int top = 0;
  for (auto& [pq, names] : D.entries()) top = std::max(top, pq.first + pq.second);
  for (int n = 0; n <= top; ++n)
    for (int p = 0; p <= n; ++p)
      for (auto& s : D.names({p, n - p}))
        basis[-n].push_back("(" + std::to_string(p) + "," + std::to_string(n - p) + "):" + s);
  std::map<int, ExactMatrix> diffs;
  for (int n = 0; n < top; ++n) {
    std::size_t rows = basis.count(-n - 1) ? basis[-n - 1].size() : 0;
    ExactMatrix d(R, rows, 0);
    for (int p = 0; p <= n; ++p) {
      Position pq{p, n - p};
      if (!D.dim(pq)) continue;
      ExactMatrix h = D.horizontal(pq), v = D.vertical(pq);
      const std::size_t oh = D.offset({p + 1, n - p}), ov = D.offset({p, n - p + 1});
      for (std::size_t j = 0; j < D.dim(pq); ++j) {
        SparseColumn c;
        for (auto& [i, x] : h.column(j)) c.emplace_back(static_cast<std::uint32_t>(oh + i), x);
        for (auto& [i, x] : v.column(j)) c.emplace_back(static_cast<std::uint32_t>(ov + i), x);
        d.append_column(std::move(c));
      }
    }
    if (d.cols()) diffs.emplace(-n, std::move(d));
  }
  return BasedComplex(R, std::move(basis), std::move(diffs), true);
}

namespace {

FilteredComplex filtered_by(const DoubleComplex& D, bool columns) {
  BasedComplex T = totalize(D);
  std::map<int, std::vector<int>> levels;
  int top = T.degrees().empty() ? 0 : -T.min_degree();
  for (int n = 0; n <= top; ++n)
    for (int p = 0; p <= n; ++p)
      for (std::size_t i = 0; i < D.dim({p, n - p}); ++i) levels[-n].push_back(columns ? -p : -(n - p));
  FilteredComplex FC(std::move(T), std::move(levels));
  if (auto c = D.certified_degree()) FC.set_window(-*c, 0);
  return FC;
}

}  // namespace

FilteredComplex column_filtration(const DoubleComplex& D) { return filtered_by(D, true); }
FilteredComplex row_filtration(const DoubleComplex& D) { return filtered_by(D, false); }

}  // namespace ssq
