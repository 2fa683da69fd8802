#include "ssq/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace ssq {

SparseColumn canonical_column(const Ring& ring, SparseColumn c) {
  std::sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseColumn out;
  out.reserve(c.size());
  for (auto& e : c) {
    if (!out.empty() && out.back().first == e.first) out.back().second += e.second;
    else out.push_back(std::move(e));
  }
  SparseColumn res;
  res.reserve(out.size());
  for (auto& e : out) {
    Scalar v = ring.normalize(e.second);
    if (!v.is_zero()) res.emplace_back(e.first, std::move(v));
  }
  return res;
}

ExactMatrix::ExactMatrix(Ring ring, std::size_t rows, std::size_t cols) : ring_(ring), rows_(rows), cols_(cols) {}

ExactMatrix ExactMatrix::identity(Ring ring, std::size_t n) {
  ExactMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.cols_[i].emplace_back(static_cast<std::uint32_t>(i), Scalar(1));
  return m;
}

ExactMatrix ExactMatrix::from_rows(Ring ring, const std::vector<std::vector<Scalar>>& rows) {
  std::size_t c = rows.empty() ? 0 : rows[0].size();
  ExactMatrix m(ring, rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) {
      Scalar v = ring.normalize(rows[i][j]);
      if (!v.is_zero()) m.cols_[j].emplace_back(static_cast<std::uint32_t>(i), std::move(v));
    }
  }
  return m;
}

ExactMatrix ExactMatrix::from_columns(Ring ring, std::size_t rows, std::vector<SparseColumn> cols) {
  ExactMatrix m(ring, rows, 0);
  m.cols_.reserve(cols.size());
  for (auto& c : cols) m.append_column(std::move(c));
  return m;
}

void ExactMatrix::append_column(SparseColumn c) {
  bool sorted = true;
  for (std::size_t k = 1; k < c.size() && sorted; ++k) sorted = c[k - 1].first < c[k].first;
  bool clean = sorted;
  if (clean)
    for (auto& e : c) {
      if (e.second.is_zero() || ring_.normalize(e.second) != e.second) {
        clean = false;
        break;
      }
    }
  if (!clean) c = canonical_column(ring_, std::move(c));
  if (!c.empty() && c.back().first >= rows_) throw Error(ErrorKind::DimensionMismatch, "column entry outside row range");
  cols_.push_back(std::move(c));
}

Scalar ExactMatrix::at(std::size_t i, std::size_t j) const {
  const auto& c = cols_.at(j);
  auto it = std::lower_bound(c.begin(), c.end(), i, [](const auto& e, std::size_t k) { return e.first < k; });
  if (it != c.end() && it->first == i) return it->second;
  return Scalar(0);
}

void ExactMatrix::set(std::size_t i, std::size_t j, const Scalar& v0) {
  if (i >= rows_ || j >= cols_.size()) throw Error(ErrorKind::DimensionMismatch, "index out of range");
  Scalar v = ring_.normalize(v0);
  auto& c = cols_[j];
  auto it = std::lower_bound(c.begin(), c.end(), i, [](const auto& e, std::size_t k) { return e.first < k; });
  if (it != c.end() && it->first == i) {
    if (v.is_zero()) c.erase(it);
    else it->second = v;
  } else if (!v.is_zero()) {
    c.insert(it, {static_cast<std::uint32_t>(i), v});
  }
}

void ExactMatrix::add_to(std::size_t i, std::size_t j, const Scalar& v) { set(i, j, at(i, j) + v); }

bool ExactMatrix::is_zero() const {
  for (auto& c : cols_)
    if (!c.empty()) return false;
  return true;
}

std::size_t ExactMatrix::nonzeros() const {
  std::size_t n = 0;
  for (auto& c : cols_) n += c.size();
  return n;
}

SparseColumn ExactMatrix::apply(const SparseColumn& x) const {
  SparseColumn acc;
  for (auto& [j, v] : x) {
    if (j >= cols_.size()) throw Error(ErrorKind::DimensionMismatch, "vector longer than matrix width");
    for (auto& [i, a] : cols_[j]) acc.emplace_back(i, a * v);
  }
  return canonical_column(ring_, std::move(acc));
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
  if (cols() != o.rows()) throw Error(ErrorKind::DimensionMismatch, "product of incompatible matrices");
  ExactMatrix m(ring_, rows_, 0);
  m.cols_.reserve(o.cols());
  for (auto& c : o.cols_) m.cols_.push_back(apply(c));
  return m;
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& o) const {
  if (rows_ != o.rows_ || cols() != o.cols()) throw Error(ErrorKind::DimensionMismatch, "sum of incompatible matrices");
  ExactMatrix m(ring_, rows_, 0);
  for (std::size_t j = 0; j < cols(); ++j) {
    SparseColumn c = cols_[j];
    c.insert(c.end(), o.cols_[j].begin(), o.cols_[j].end());
    m.cols_.push_back(canonical_column(ring_, std::move(c)));
  }
  return m;
}

ExactMatrix ExactMatrix::scaled(const Scalar& s) const {
  ExactMatrix m(ring_, rows_, 0);
  for (auto c : cols_) {
    for (auto& e : c) e.second *= s;
    m.cols_.push_back(canonical_column(ring_, std::move(c)));
  }
  return m;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(ring_, cols(), rows_);
  for (std::size_t j = 0; j < cols(); ++j)
    for (auto& [i, v] : cols_[j]) t.cols_[i].emplace_back(static_cast<std::uint32_t>(j), v);
  return t;
}

ExactMatrix ExactMatrix::column_range(std::size_t b, std::size_t e) const {
  ExactMatrix m(ring_, rows_, 0);
  m.cols_.assign(cols_.begin() + static_cast<std::ptrdiff_t>(b), cols_.begin() + static_cast<std::ptrdiff_t>(e));
  return m;
}

ExactMatrix ExactMatrix::hcat(const ExactMatrix& o) const {
  if (rows_ != o.rows_) throw Error(ErrorKind::DimensionMismatch, "hcat of different heights");
  ExactMatrix m = *this;
  m.cols_.insert(m.cols_.end(), o.cols_.begin(), o.cols_.end());
  return m;
}

std::vector<std::vector<Scalar>> ExactMatrix::to_rows() const {
  std::vector<std::vector<Scalar>> r(rows_, std::vector<Scalar>(cols(), Scalar(0)));
  for (std::size_t j = 0; j < cols(); ++j)
    for (auto& [i, v] : cols_[j]) r[i][j] = v;
  return r;
}

std::string ExactMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  auto r = to_rows();
  for (std::size_t i = 0; i < r.size(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < r[i].size(); ++j) os << (j ? "," : "") << r[i][j];
    os << "]";
  }
  os << "]";
  return os.str();
}

bool ExactMatrix::operator==(const ExactMatrix& o) const {
  return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_;
}

}  // namespace ssq
