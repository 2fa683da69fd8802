#include <random>

#include "doctest.h"
#include "ssq/kernels.hpp"
#include "ssq/linalg.hpp"
#include "support.hpp"

using namespace ssq;
using namespace ssq::test;

namespace {

const Ring ZR = Ring::integers();

// Lattice membership through the Smith form: y = U x must vanish past the rank and be
// divisible by the diagonal before it.
bool snf_member(const ExactMatrix& G, const SparseColumn& x) {
  if (G.cols() == 0) return x.empty();
  auto s = smith_normal_form(G);
  auto y = s.U.apply(x);
  for (auto& [i, v] : y) {
    if (i >= s.rank) return false;
    Int d = numerator(s.D.at(i, i));
    if (G.ring().is_integers() && numerator(v) % d != 0) return false;
  }
  return true;
}

std::vector<SparseColumn> box(std::size_t n, int b) {
  std::vector<SparseColumn> out;
  std::vector<int> x(n, -b);
  while (true) {
    SparseColumn c;
    for (std::size_t i = 0; i < n; ++i)
      if (x[i]) c.emplace_back(static_cast<std::uint32_t>(i), Scalar(x[i]));
    out.push_back(c);
    std::size_t k = 0;
    while (k < n && x[k] == b) x[k++] = -b;
    if (k == n) break;
    ++x[k];
  }
  return out;
}

void check_snf(const ExactMatrix& A) {
  auto s = smith_normal_form(A);
  CHECK(s.U * A * s.V == s.D);
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j)
      if (i != j) CHECK(s.D.at(i, j).is_zero());
  const std::size_t k = std::min(A.rows(), A.cols());
  for (std::size_t i = 0; i < k; ++i) {
    CHECK(s.D.at(i, i) >= 0);
    if (i + 1 < k && !s.D.at(i + 1, i + 1).is_zero()) {
      CHECK(!s.D.at(i, i).is_zero());
      if (A.ring().is_integers()) CHECK(numerator(s.D.at(i + 1, i + 1)) % numerator(s.D.at(i, i)) == 0);
    }
    CHECK((i < s.rank) == !s.D.at(i, i).is_zero());
  }
  Rat du = det(s.U), dv = det(s.V);
  if (A.ring().is_integers()) {
    CHECK(abs(du) == 1);
    CHECK(abs(dv) == 1);
  } else {
    CHECK(!A.ring().normalize(du).is_zero());
    CHECK(!A.ring().normalize(dv).is_zero());
  }
}

}  // namespace

TEST_CASE("ring parsing and primality") {
  CHECK(Ring::parse("F2") == Ring::prime_field(2));
  CHECK(Ring::parse("Z").is_integers());
  CHECK_THROWS_AS(Ring::prime_field(9), Error);
  CHECK(Ring::prime_field(7).normalize(Scalar(-1)) == 6);
}

TEST_CASE("smith normal form examples") {
  auto s = smith_normal_form(ExactMatrix::identity(ZR, 3));
  CHECK(s.rank == 3);
  CHECK(s.D == ExactMatrix::identity(ZR, 3));

  auto t = smith_normal_form(mat(ZR, {{2, 4}, {6, 8}}));
  CHECK(t.D == mat(ZR, {{2, 0}, {0, 4}}));
  check_snf(mat(ZR, {{2, 4}, {6, 8}}));

  auto z = smith_normal_form(ExactMatrix(ZR, 2, 3));
  CHECK(z.rank == 0);
  CHECK(z.D.is_zero());
}

TEST_CASE("smith normal form invariants on random matrices") {
  std::mt19937 rng(7);
  for (int it = 0; it < 60; ++it) {
    std::size_t m = 1 + rng() % 5, n = 1 + rng() % 5;
    check_snf(random_matrix(rng, ZR, m, n, -6, 6));
    check_snf(random_matrix(rng, Ring::prime_field(2), m, n, 0, 1));
    check_snf(random_matrix(rng, Ring::prime_field(5), m, n, 0, 4));
    check_snf(random_matrix(rng, Ring::rationals(), m, n, -3, 3));
  }
}

TEST_CASE("kernel and image on the sphere boundary maps") {
  // rows a,b,c ; columns A,B,C with d(A)=b-a, d(B)=c-a, d(C)=c-b
  auto d1 = mat(ZR, {{-1, -1, 0}, {1, 0, -1}, {0, 1, 1}});
  auto K = kernel_basis(d1);
  REQUIRE(K.count() == 1);
  auto k = K.generators.column(0);
  CHECK(d1.apply(k).empty());
  CHECK(snf_member(K.generators, vec({1, -1, 1})));
  CHECK(snf_member(ExactMatrix::from_columns(ZR, 3, {vec({1, -1, 1})}), k));

  // d(P)=d(Q)=C-B+A
  auto d2 = mat(ZR, {{1, 1}, {-1, -1}, {1, 1}});
  auto I = image_basis(d2);
  REQUIRE(I.count() == 1);
  CHECK(snf_member(I.generators, vec({1, -1, 1})));

  CHECK(kernel_basis(ExactMatrix::identity(ZR, 3)).count() == 0);
  CHECK(kernel_basis(ExactMatrix(ZR, 2, 4)).count() == 4);
  CHECK(image_basis(ExactMatrix(ZR, 2, 4)).count() == 0);
  auto diag = image_basis(mat(ZR, {{2, 0}, {0, 0}}));
  REQUIRE(diag.count() == 1);
  CHECK(diag.generators.column(0) == vec({2, 0}));
}

TEST_CASE("intersect and preimage examples") {
  auto e1 = Submodule(2, ExactMatrix::from_columns(ZR, 2, {vec({1, 0})}));
  auto e2 = Submodule(2, ExactMatrix::from_columns(ZR, 2, {vec({0, 1})}));
  CHECK(intersect(e1, e2).count() == 0);
  auto two = Submodule(1, ExactMatrix::from_columns(ZR, 1, {vec({2})}));
  auto three = Submodule(1, ExactMatrix::from_columns(ZR, 1, {vec({3})}));
  auto six = intersect(two, three);
  REQUIRE(six.count() == 1);
  CHECK((six.generators.column(0) == vec({6}) || six.generators.column(0) == vec({-6})));
  auto same = intersect(two, two);
  CHECK(subquotient(two, same).is_zero());
  CHECK(subquotient(same, two).is_zero());

  auto A = ExactMatrix::identity(ZR, 2);
  CHECK(preimage(A, Submodule::full(ZR, 2)).count() == 2);
  CHECK(subquotient(preimage(A, Submodule::zero(ZR, 2)), kernel_basis(A)).is_zero());
  auto T = Submodule(2, ExactMatrix::from_columns(ZR, 2, {vec({2, 0})}));
  auto P = preimage(A, T);
  // span{2e1}: membership decided over a small box
  for (auto& x : box(2, 3)) CHECK(contains(P, x) == snf_member(T.generators, x));
}

TEST_CASE("intersect and preimage agree with a membership oracle") {
  std::mt19937 rng(11);
  for (int it = 0; it < 40; ++it) {
    std::size_t n = 1 + rng() % 3;
    auto U = Submodule(n, random_matrix(rng, ZR, n, 1 + rng() % 3, -3, 3));
    auto V = Submodule(n, random_matrix(rng, ZR, n, 1 + rng() % 3, -3, 3));
    auto I = intersect(U, V);
    for (auto& g : I.generators.columns()) {
      CHECK(snf_member(U.generators, g));
      CHECK(snf_member(V.generators, g));
    }
    for (auto& x : box(n, 3))
      CHECK(contains(I, x) == (snf_member(U.generators, x) && snf_member(V.generators, x)));

    std::size_t m = 1 + rng() % 3;
    auto A = random_matrix(rng, ZR, m, n, -3, 3);
    auto T = Submodule(m, random_matrix(rng, ZR, m, 1 + rng() % 3, -3, 3));
    auto P = preimage(A, T);
    for (auto& x : box(n, 2)) CHECK(contains(P, x) == snf_member(T.generators, A.apply(x)));
  }
  for (int it = 0; it < 40; ++it) {
    Ring F = Ring::prime_field(3);
    std::size_t n = 1 + rng() % 4;
    auto U = Submodule(n, random_matrix(rng, F, n, 1 + rng() % 4, 0, 2));
    auto V = Submodule(n, random_matrix(rng, F, n, 1 + rng() % 4, 0, 2));
    auto I = intersect(U, V);
    for (auto& x : box(n, 1)) {
      SparseColumn y = canonical_column(F, x);
      CHECK(contains(I, y) == (snf_member(U.generators, y) && snf_member(V.generators, y)));
    }
  }
}

TEST_CASE("kernel and image ranks add up") {
  std::mt19937 rng(3);
  for (int it = 0; it < 50; ++it) {
    for (Ring R : {ZR, Ring::prime_field(2), Ring::rationals()}) {
      auto A = random_matrix(rng, R, 1 + rng() % 5, 1 + rng() % 5, -2, 2);
      auto K = kernel_basis(A);
      for (auto& k : K.generators.columns()) CHECK(A.apply(k).empty());
      CHECK(K.count() + image_basis(A).count() == A.cols());
    }
  }
}

TEST_CASE("subquotient examples") {
  auto e1 = Submodule(1, ExactMatrix::from_columns(ZR, 1, {vec({1})}));
  auto two = Submodule(1, ExactMatrix::from_columns(ZR, 1, {vec({2})}));
  CHECK(subquotient(e1, two).invariantFactors == ints({2}));
  CHECK_THROWS_AS(subquotient(two, e1), Error);
  CHECK(subquotient(e1, e1).is_zero());

  // V = kernel of d on span{P,Q} (both hit C-B+A), W = 0: free of rank one on P-Q
  auto d2 = mat(ZR, {{1, 1}, {-1, -1}, {1, 1}});
  auto q = subquotient(kernel_basis(d2), Submodule::zero(ZR, 2));
  CHECK(q.invariantFactors == ints({0}));
  auto r = q.representatives.column(0);
  CHECK((r == vec({1, -1}) || r == vec({-1, 1})));
}

TEST_CASE("subquotient of nested lattices matches the Smith form of the inclusion") {
  std::mt19937 rng(5);
  int done = 0;
  while (done < 40) {
    std::size_t n = 1 + rng() % 4, k = 1 + rng() % n;
    auto Vg = random_matrix(rng, ZR, n, k, -3, 3);
    if (rank(Vg) != k) continue;
    auto M = random_matrix(rng, ZR, k, 1 + rng() % 4, -4, 4);
    auto Wg = Vg * M;
    auto got = subquotient(Submodule(n, Vg), Submodule(n, Wg));
    auto s = smith_normal_form(M);
    std::vector<Int> want;
    for (std::size_t i = 0; i < k; ++i) want.push_back(i < s.rank ? numerator(s.D.at(i, i)) : Int(0));
    CHECK(got.invariantFactors == canonical_factors(want));
    ++done;
  }
}

TEST_CASE("homology of a finitely presented sequence") {
  // Z --2--> Z --0--> Z : homology at the middle is Z/2
  auto h = homology_at(ZR, ints({0}), ints({0}), mat(ZR, {{2}}), mat(ZR, {{0}}));
  CHECK(h.invariantFactors == ints({2}));
  // Z/4 --(x -> 2x)--> Z/4 --(x -> 2x)--> Z/4 : kernel 2Z/4, image 2Z/4
  auto z = homology_at(ZR, ints({4}), ints({4}), mat(ZR, {{2}}), mat(ZR, {{2}}));
  CHECK(z.is_zero());
}

TEST_CASE("module labels") {
  CHECK(FgModulePresentation::detached(ZR, ints({0})).label() == "Z");
  CHECK(FgModulePresentation::detached(ZR, ints({4})).label() == "Z/4");
  CHECK(FgModulePresentation::detached(ZR, ints({2, 2})).label() == "(Z/2)^2");
  CHECK(FgModulePresentation::detached(ZR, ints({6, 0, 4})).label() == "Z+Z/2+Z/12");
  CHECK(FgModulePresentation::detached(Ring::prime_field(2), ints({0, 0, 0})).label() == "F_2^3");
  CHECK(FgModulePresentation::detached(ZR, {}).label() == "0");
}

TEST_CASE("simd kernels match the scalar reference") {
  std::mt19937 rng(1);
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 251u, 32749u, 65521u}) {
    for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 64u, 1001u}) {
      std::vector<std::uint32_t> a(n), b(n);
      for (auto& x : a) x = rng() % p;
      for (auto& x : b) x = rng() % p;
      std::uint32_t c = rng() % p;
      auto a1 = a, a2 = a;
      kernels::axpy_mod_p_scalar(a1.data(), b.data(), c, p, n);
      kernels::axpy_mod_p_avx2(a2.data(), b.data(), c, p, n);
      CHECK(a1 == a2);
    }
  }
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 100u}) {
    std::vector<std::uint64_t> a(n), b(n);
    for (auto& x : a) x = (std::uint64_t(rng()) << 32) | rng();
    for (auto& x : b) x = (std::uint64_t(rng()) << 32) | rng();
    auto a1 = a, a2 = a;
    kernels::xor_words_scalar(a1.data(), b.data(), n);
    kernels::xor_words_avx2(a2.data(), b.data(), n);
    CHECK(a1 == a2);
  }
}

TEST_CASE("field smith form is the same under either kernel variant") {
  std::mt19937 rng(9);
  auto saved = kernels::active_isa();
  for (int it = 0; it < 20; ++it) {
    for (std::uint32_t p : {2u, 3u, 101u}) {
      auto A = random_matrix(rng, Ring::prime_field(p), 1 + rng() % 9, 1 + rng() % 9, 0, static_cast<int>(p) - 1);
      kernels::force_isa(kernels::Isa::Scalar);
      auto s1 = smith_normal_form(A);
      kernels::force_isa(kernels::Isa::Avx2);
      auto s2 = smith_normal_form(A);
      CHECK(s1.U == s2.U);
      CHECK(s1.V == s2.V);
      CHECK(s1.D == s2.D);
    }
  }
  kernels::force_isa(saved);
}
