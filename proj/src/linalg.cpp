#include "ssq/linalg.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <variant>

#include "ssq/detail/quotient.hpp"
#include "ssq/detail/snf.hpp"
#include "ssq/detail/sparse.hpp"
#include "ssq/kernels.hpp"

namespace ssq {

using namespace detail;

Submodule::Submodule(std::size_t ambient, ExactMatrix gens) : ambientDim(ambient), generators(std::move(gens)) {
  if (generators.rows() != ambientDim) throw Error(ErrorKind::DimensionMismatch, "generator length differs from ambient dimension");
}

Submodule Submodule::zero(Ring ring, std::size_t ambient) { return Submodule(ambient, ExactMatrix(ring, ambient, 0)); }

Submodule Submodule::full(Ring ring, std::size_t ambient) { return Submodule(ambient, ExactMatrix::identity(ring, ambient)); }

Submodule Submodule::coordinate(Ring ring, std::size_t ambient, const std::vector<std::size_t>& idx) {
  ExactMatrix g(ring, ambient, 0);
  for (auto i : idx) g.append_column({{static_cast<std::uint32_t>(i), Scalar(1)}});
  return Submodule(ambient, std::move(g));
}

std::vector<Int> canonical_factors(std::vector<Int> f) {
  // Recompute the divisibility chain through a diagonal Smith form.
  std::vector<Int> tors;
  std::size_t zeros = 0;
  for (auto& x : f) {
    Int a = x < 0 ? Int(-x) : x;
    if (a.is_zero()) ++zeros;
    else if (a != 1) tors.push_back(a);
  }
  if (tors.size() > 1) {
    const std::size_t k = tors.size();
    DenseSnf<ZZ>::Mat M(k, std::vector<Int>(k, Int(0)));
    for (std::size_t i = 0; i < k; ++i) M[i][i] = tors[i];
    auto s = snf_dense(ZZ{}, std::move(M), k, k, false);
    tors.clear();
    for (std::size_t i = 0; i < k; ++i)
      if (s.A[i][i] != 1) tors.push_back(s.A[i][i]);
  }
  tors.insert(tors.end(), zeros, Int(0));
  return tors;
}

FgModulePresentation FgModulePresentation::detached(Ring ring, std::vector<Int> factors) {
  FgModulePresentation m;
  m.ring = ring;
  if (ring.is_field()) {
    std::size_t n = 0;
    for (auto& f : factors)
      if (f.is_zero()) ++n;
    m.invariantFactors.assign(n, Int(0));
  } else {
    m.invariantFactors = canonical_factors(std::move(factors));
  }
  m.representatives = ExactMatrix(ring, 0, 0);
  return m;
}

FgModulePresentation FgModulePresentation::free(Ring ring, std::size_t rank) {
  return detached(ring, std::vector<Int>(rank, Int(0)));
}

std::size_t FgModulePresentation::free_rank() const {
  return static_cast<std::size_t>(std::count_if(invariantFactors.begin(), invariantFactors.end(), [](const Int& x) { return x.is_zero(); }));
}

std::vector<Int> FgModulePresentation::torsion() const {
  std::vector<Int> t;
  for (auto& x : invariantFactors)
    if (!x.is_zero()) t.push_back(x);
  return t;
}

Int FgModulePresentation::torsion_order() const {
  Int o = 1;
  for (auto& x : invariantFactors)
    if (!x.is_zero()) o *= x;
  return o;
}

bool FgModulePresentation::isomorphic(const FgModulePresentation& o) const {
  return ring == o.ring && canonical_factors(invariantFactors) == canonical_factors(o.invariantFactors);
}

std::string FgModulePresentation::label() const {
  if (invariantFactors.empty()) return "0";
  if (ring.is_field()) {
    std::string base = ring.kind() == Ring::Kind::Rationals ? "Q" : "F_" + std::to_string(ring.characteristic());
    return invariantFactors.size() == 1 ? base : base + "^" + std::to_string(invariantFactors.size());
  }
  std::vector<std::pair<std::string, std::size_t>> parts;
  for (auto& f : canonical_factors(invariantFactors)) {
    std::string s = f.is_zero() ? "Z" : "Z/" + f.str();
    if (!parts.empty() && parts.back().first == s) ++parts.back().second;
    else parts.emplace_back(s, 1);
  }
  // Free part first, as in the usual Z^r + torsion notation.
  std::stable_partition(parts.begin(), parts.end(), [](const auto& p) { return p.first == "Z"; });
  std::string out;
  for (auto& [s, k] : parts) {
    if (!out.empty()) out += "+";
    if (k == 1) out += s;
    else if (s == "Z") out += "Z^" + std::to_string(k);
    else out += "(" + s + ")^" + std::to_string(k);
  }
  return out;
}

namespace {

template <class D>
ExactMatrix to_exact(const Ring& ring, const D& d, const std::vector<std::vector<typename D::T>>& M, std::size_t rows,
                     std::size_t cols) {
  ExactMatrix out(ring, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (!d.is_zero(M[i][j])) out.set(i, j, d.to(M[i][j]));
  return out;
}

template <class D>
std::vector<std::vector<typename D::T>> to_dense(const D& d, const ExactMatrix& A) {
  std::vector<std::vector<typename D::T>> M(A.rows(), std::vector<typename D::T>(A.cols(), d.zero()));
  for (std::size_t j = 0; j < A.cols(); ++j)
    for (auto& [i, v] : A.column(j)) M[i][j] = d.from(v);
  return M;
}

// Q from a reduced row echelon form: pivot columns first, non-pivot columns cleared.
ExactMatrix q_from_rref(const Ring& ring, const std::vector<std::size_t>& piv, std::size_t n,
                        const std::function<std::uint32_t(std::size_t, std::size_t)>& rref_at) {
  const FP d{ring.characteristic()};
  std::vector<char> is_piv(n, 0);
  for (auto c : piv) is_piv[c] = 1;
  ExactMatrix Q(ring, n, 0);
  for (auto c : piv) Q.append_column({{static_cast<std::uint32_t>(c), Scalar(1)}});
  for (std::size_t j = 0; j < n; ++j) {
    if (is_piv[j]) continue;
    SparseColumn col{{static_cast<std::uint32_t>(j), Scalar(1)}};
    for (std::size_t k = 0; k < piv.size(); ++k) {
      std::uint32_t v = rref_at(k, j);
      if (v) col.emplace_back(static_cast<std::uint32_t>(piv[k]), d.to(d.neg(v)));
    }
    Q.append_column(std::move(col));
  }
  return Q;
}

SnfResult snf_f2(const ExactMatrix& A) {
  const std::size_t m = A.rows(), n = A.cols(), w = n + m, words = (w + 63) / 64;
  std::vector<std::vector<std::uint64_t>> rows(m, std::vector<std::uint64_t>(words, 0));
  auto setbit = [](std::vector<std::uint64_t>& r, std::size_t b) { r[b / 64] |= std::uint64_t(1) << (b % 64); };
  auto bit = [](const std::vector<std::uint64_t>& r, std::size_t b) { return (r[b / 64] >> (b % 64)) & 1u; };
  for (std::size_t j = 0; j < n; ++j)
    for (auto& [i, v] : A.column(j))
      if (numerator(v) % 2 != 0) setbit(rows[i], j);
  for (std::size_t i = 0; i < m; ++i) setbit(rows[i], n + i);
  std::vector<std::size_t> piv;
  std::size_t cur = 0;
  for (std::size_t c = 0; c < n && cur < m; ++c) {
    std::size_t r = cur;
    while (r < m && !bit(rows[r], c)) ++r;
    if (r == m) continue;
    std::swap(rows[r], rows[cur]);
    for (std::size_t i = 0; i < m; ++i)
      if (i != cur && bit(rows[i], c)) kernels::xor_words(rows[i].data(), rows[cur].data(), words);
    piv.push_back(c);
    ++cur;
  }
  Ring R = A.ring();
  SnfResult s;
  s.rank = piv.size();
  s.U = ExactMatrix(R, m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (bit(rows[i], n + j)) s.U.set(i, j, Scalar(1));
  s.V = q_from_rref(R, piv, n, [&](std::size_t k, std::size_t j) { return static_cast<std::uint32_t>(bit(rows[k], j)); });
  s.D = ExactMatrix(R, m, n);
  for (std::size_t k = 0; k < s.rank; ++k) s.D.set(k, k, Scalar(1));
  return s;
}

SnfResult snf_fp(const ExactMatrix& A) {
  const std::uint32_t p = A.ring().characteristic();
  if (p == 2) return snf_f2(A);
  const FP d{p};
  const std::size_t m = A.rows(), n = A.cols(), w = n + m;
  std::vector<std::vector<std::uint32_t>> rows(m, std::vector<std::uint32_t>(w, 0));
  for (std::size_t j = 0; j < n; ++j)
    for (auto& [i, v] : A.column(j)) rows[i][j] = d.from(v);
  for (std::size_t i = 0; i < m; ++i) rows[i][n + i] = 1;
  std::vector<std::size_t> piv;
  std::size_t cur = 0;
  for (std::size_t c = 0; c < n && cur < m; ++c) {
    std::size_t r = cur;
    while (r < m && rows[r][c] == 0) ++r;
    if (r == m) continue;
    std::swap(rows[r], rows[cur]);
    std::uint32_t inv = d.inv(rows[cur][c]);
    for (auto& x : rows[cur]) x = d.mul(x, inv);
    for (std::size_t i = 0; i < m; ++i)
      if (i != cur && rows[i][c] != 0) kernels::axpy_mod_p(rows[i].data(), rows[cur].data(), d.neg(rows[i][c]), p, w);
    piv.push_back(c);
    ++cur;
  }
  Ring R = A.ring();
  SnfResult s;
  s.rank = piv.size();
  s.U = ExactMatrix(R, m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (rows[i][n + j]) s.U.set(i, j, Scalar(rows[i][n + j]));
  s.V = q_from_rref(R, piv, n, [&](std::size_t k, std::size_t j) { return rows[k][j]; });
  s.D = ExactMatrix(R, m, n);
  for (std::size_t k = 0; k < s.rank; ++k) s.D.set(k, k, Scalar(1));
  return s;
}

template <class D>
std::vector<SVec<typename D::T>> svecs(const D& d, const ExactMatrix& A) {
  std::vector<SVec<typename D::T>> out;
  out.reserve(A.cols());
  for (auto& c : A.columns()) out.push_back(to_svec(d, c));
  return out;
}

template <class D>
ExactMatrix from_svecs(const Ring& R, const D& d, std::size_t rows, const std::vector<SVec<typename D::T>>& cols) {
  ExactMatrix out(R, rows, 0);
  for (auto& c : cols) out.append_column(from_svec(d, c));
  return out;
}

}  // namespace

SnfResult smith_normal_form(const ExactMatrix& A) {
  const Ring& R = A.ring();
  if (R.kind() == Ring::Kind::PrimeField) return snf_fp(A);
  return with_domain(R, [&](auto d) {
    auto s = snf_dense(d, to_dense(d, A), A.rows(), A.cols(), false);
    SnfResult r;
    r.U = to_exact(R, d, s.P, A.rows(), A.rows());
    r.V = to_exact(R, d, s.Q, A.cols(), A.cols());
    r.D = to_exact(R, d, s.A, A.rows(), A.cols());
    r.rank = s.rank;
    return r;
  });
}

std::size_t rank(const ExactMatrix& A) {
  return with_domain(A.ring(), [&](auto d) {
    Echelon<decltype(d)> e(d, false);
    for (auto& c : A.columns()) e.insert(to_svec(d, c));
    return e.owner.size();
  });
}

Submodule kernel_basis(const ExactMatrix& A) {
  const Ring& R = A.ring();
  return with_domain(R, [&](auto d) {
    using D = decltype(d);
    Echelon<D> e(d, true);
    for (std::size_t j = 0; j < A.cols(); ++j)
      e.insert(to_svec(d, A.column(j)), SVec<typename D::T>{{static_cast<std::uint32_t>(j), d.one()}});
    std::vector<SVec<typename D::T>> ker;
    for (std::size_t j = 0; j < e.size(); ++j)
      if (e.R[j].empty()) ker.push_back(e.C[j]);
    return Submodule(A.cols(), from_svecs(R, d, A.cols(), ker));
  });
}

Submodule image_basis(const ExactMatrix& A) {
  const Ring& R = A.ring();
  return with_domain(R, [&](auto d) {
    using D = decltype(d);
    Echelon<D> e(d, false);
    for (auto& c : A.columns()) e.insert(to_svec(d, c));
    std::vector<SVec<typename D::T>> im;
    for (auto& c : e.R)
      if (!c.empty()) im.push_back(c);
    return Submodule(A.rows(), from_svecs(R, d, A.rows(), im));
  });
}

Submodule sum(const Submodule& U, const Submodule& V) {
  if (U.ambientDim != V.ambientDim) throw Error(ErrorKind::DimensionMismatch, "sum of submodules in different ambients");
  return image_basis(U.generators.hcat(V.generators));
}

Submodule intersect(const Submodule& U, const Submodule& V) {
  if (U.ambientDim != V.ambientDim || U.ring() != V.ring())
    throw Error(ErrorKind::DimensionMismatch, "intersection of submodules in different ambients");
  const std::size_t k = U.count();
  auto K = kernel_basis(U.generators.hcat(V.generators.scaled(Scalar(-1))));
  ExactMatrix proj(U.ring(), k, 0);
  for (auto& c : K.generators.columns()) {
    SparseColumn top;
    for (auto& e : c)
      if (e.first < k) top.push_back(e);
    proj.append_column(std::move(top));
  }
  return image_basis(U.generators * proj);
}

Submodule preimage(const ExactMatrix& A, const Submodule& T) {
  if (A.rows() != T.ambientDim || A.ring() != T.ring())
    throw Error(ErrorKind::DimensionMismatch, "preimage target does not match the map");
  const std::size_t n = A.cols();
  auto K = kernel_basis(A.hcat(T.generators.scaled(Scalar(-1))));
  ExactMatrix proj(A.ring(), n, 0);
  for (auto& c : K.generators.columns()) {
    SparseColumn top;
    for (auto& e : c)
      if (e.first < n) top.push_back(e);
    proj.append_column(std::move(top));
  }
  return image_basis(proj);
}

bool contains(const Submodule& U, const SparseColumn& y) {
  return with_domain(U.ring(), [&](auto d) {
    Echelon<decltype(d)> e(d, false);
    for (auto& c : U.generators.columns()) e.insert(to_svec(d, c));
    auto v = to_svec(d, y);
    e.reduce(v, nullptr);
    return v.empty();
  });
}

struct Quotient::Impl {
  std::variant<QuotientT<ZZ>, QuotientT<QQ>, QuotientT<FP>> q;
};

Quotient::Quotient(const Submodule& V, const Submodule& W) {
  if (V.ambientDim != W.ambientDim || V.ring() != W.ring())
    throw Error(ErrorKind::DimensionMismatch, "subquotient of submodules in different ambients");
  const Ring R = V.ring();
  impl_ = with_domain(R, [&](auto d) {
    using D = decltype(d);
    auto impl = std::make_unique<Impl>(Impl{QuotientT<D>(d, svecs(d, V.generators), {}, svecs(d, W.generators))});
    const auto& q = std::get<QuotientT<D>>(impl->q);
    pres_.ring = R;
    pres_.invariantFactors = q.factors();
    pres_.representatives = ExactMatrix(R, V.ambientDim, 0);
    for (std::size_t g = 0; g < q.ngens(); ++g) pres_.representatives.append_column(from_svec(d, q.rep(g)));
    return impl;
  });
}

Quotient::~Quotient() = default;
Quotient::Quotient(Quotient&&) noexcept = default;
Quotient& Quotient::operator=(Quotient&&) noexcept = default;

std::optional<std::vector<Scalar>> Quotient::coords(const SparseColumn& y) const {
  return std::visit(
      [&](const auto& q) -> std::optional<std::vector<Scalar>> {
        using Q = std::decay_t<decltype(q)>;
        auto d = [&] {
          if constexpr (std::is_same_v<Q, QuotientT<FP>>) return FP{pres_.ring.characteristic()};
          else if constexpr (std::is_same_v<Q, QuotientT<ZZ>>) return ZZ{};
          else return QQ{};
        }();
        auto c = q.coords(to_svec(d, y));
        if (!c) return std::nullopt;
        std::vector<Scalar> out;
        for (auto& x : *c) out.push_back(d.to(x));
        return out;
      },
      impl_->q);
}

FgModulePresentation subquotient(const Submodule& V, const Submodule& W) { return Quotient(V, W).presentation(); }

FgModulePresentation homology_at(const Ring& ring, const std::vector<Int>& middle, const std::vector<Int>& target,
                                 const ExactMatrix& in, const ExactMatrix& out) {
  const std::size_t k = middle.size();
  if (in.rows() != k || out.cols() != k || out.rows() != target.size())
    throw Error(ErrorKind::DimensionMismatch, "page differentials do not match entry sizes");
  ExactMatrix trel(ring, target.size(), 0), mrel(ring, k, 0);
  for (std::size_t i = 0; i < target.size(); ++i)
    if (!target[i].is_zero()) trel.append_column({{static_cast<std::uint32_t>(i), Scalar(target[i])}});
  for (std::size_t i = 0; i < k; ++i)
    if (!middle[i].is_zero()) mrel.append_column({{static_cast<std::uint32_t>(i), Scalar(middle[i])}});
  Submodule ker = preimage(out, Submodule(target.size(), trel));
  Submodule im = sum(Submodule(k, in), Submodule(k, mrel));
  auto h = subquotient(ker, im);
  return h;
}

}  // namespace ssq
