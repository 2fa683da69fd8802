#include <set>

#include "doctest.h"
#include "ssq/group.hpp"
#include "support.hpp"

using namespace ssq;
using namespace ssq::test;

namespace {

const Ring ZR = Ring::integers();
const Ring F2 = Ring::prime_field(2);

FiniteGroupData klein() {
  return load_group({"1", "x", "y", "xy"}, {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}});
}

// Hom_G(B_q(G), M) on homogeneous tuples: equivariant f is fixed by its values on
// (1, g_1, .., g_q), with f(g x) = g f(x). Built without the inhomogeneous formula.
BasedComplex homogeneous_cochains(const FiniteGroupData& G, const GroupModule& M, int N) {
  const std::size_t n = G.order(), k = M.rank;
  auto pw = [&](int e) {
    std::size_t r = 1;
    while (e-- > 0) r *= n;
    return r;
  };
  std::map<int, std::vector<std::string>> basis;
  for (int q = 0; q <= N; ++q)
    for (std::size_t x = 0; x < pw(q) * k; ++x) basis[-q].push_back("h" + std::to_string(q) + "_" + std::to_string(x));
  std::map<int, ExactMatrix> diffs;
  for (int q = 0; q < N; ++q) {
    ExactMatrix D(M.ring, pw(q + 1) * k, 0);
    for (std::size_t src = 0; src < pw(q); ++src)
      for (std::size_t j = 0; j < k; ++j) {
        SparseColumn col;
        // evaluate delta f on each target representative (1, h_1, .., h_{q+1})
        for (std::size_t tgt = 0; tgt < pw(q + 1); ++tgt) {
          std::vector<std::uint32_t> x(q + 2, 0);
          std::size_t t = tgt;
          for (int i = q + 1; i >= 1; --i) x[i] = static_cast<std::uint32_t>(t % n), t /= n;
          for (int i = 0; i <= q + 1; ++i) {
            std::vector<std::uint32_t> face;
            for (int m = 0; m <= q + 1; ++m)
              if (m != i) face.push_back(x[m]);
            std::uint32_t g = face[0], gi = G.inv(g);
            std::size_t idx = 0;
            for (std::size_t m = 1; m < face.size(); ++m) idx = idx * n + G.mul(gi, face[m]);
            if (idx != src) continue;
            // f(face) = g f(g^-1 face) = g e_j
            for (auto& [r, a] : M.action[g].column(j))
              col.emplace_back(static_cast<std::uint32_t>(tgt * k + r), a * Scalar(i % 2 ? -1 : 1));
          }
        }
        D.append_column(std::move(col));
      }
    diffs.emplace(-q, D);
  }
  return BasedComplex(M.ring, basis, diffs, true);
}

std::vector<std::string> labels(const BasedComplex& C, int upto) {
  std::vector<std::string> out;
  for (int n = 0; n <= upto; ++n) out.push_back(homology_in(C, n).label());
  return out;
}

GroupModule sign_module(const FiniteGroupData& C2) {
  return make_module(C2, ZR, 1, {ExactMatrix::identity(ZR, 1), mat(ZR, {{-1}})});
}

}  // namespace

TEST_CASE("group tables are validated") {
  CHECK(cyclic_group(4).order() == 4);
  CHECK(dihedral8().order() == 8);
  auto D = dihedral8();
  auto a = D.index("a"), b = D.index("b");
  CHECK(D.mul(D.mul(b, a), D.inv(b)) == D.inv(a));
  auto expect = [](auto&& f, ErrorKind k) {
    try {
      f();
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == k);
    }
  };
  expect([] { load_group({"1", "x"}, {{0, 1}, {1, 1}}); }, ErrorKind::NoInverse);
  expect([] { load_group({"x", "1"}, {{1, 0}, {0, 1}}); }, ErrorKind::NoIdentity);
  // a loop that is not associative: identity and inverses exist
  expect(
      [] {
        load_group({"e", "a", "b", "c", "d"},
                   {{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}});
      },
      ErrorKind::NotAssociative);
  expect([] { make_extension(dihedral8(), {0, 4}); }, ErrorKind::NotNormal);
  expect([] { make_extension(cyclic_group(4), {0, 1}); }, ErrorKind::BadInput);
  expect([] { make_module(cyclic_group(2), ZR, 1, {ExactMatrix::identity(ZR, 1), mat(ZR, {{2}})}); },
         ErrorKind::NotAHomomorphism);
}

TEST_CASE("extension data") {
  auto E = make_extension(cyclic_group(4), {0, 2});
  CHECK(E.N.order() == 2);
  CHECK(E.Q.order() == 2);
  CHECK(E.quotientMap == std::vector<std::uint32_t>{0, 1, 0, 1});
  auto S = make_extension(dihedral8(), {0, 1, 2, 3});
  CHECK(S.Q.order() == 2);
}

TEST_CASE("cohomology of cyclic groups") {
  auto C2 = cyclic_group(2), C3 = cyclic_group(3), C4 = cyclic_group(4);
  CHECK(labels(cochain_complex(C2, GroupModule::trivial(C2, F2), 4), 3) ==
        std::vector<std::string>{"F_2", "F_2", "F_2", "F_2"});
  CHECK(labels(cochain_complex(C4, GroupModule::trivial(C4, ZR), 4), 3) ==
        std::vector<std::string>{"Z", "0", "Z/4", "0"});
  CHECK(group_cohomology(C2, GroupModule::trivial(C2, ZR), 2).label() == "Z/2");
  for (int q = 0; q <= 3; ++q) {
    CHECK(group_cohomology(C4, GroupModule::trivial(C4, F2), q).size() == 1);
    auto F3 = Ring::prime_field(3);
    CHECK(group_cohomology(C3, GroupModule::trivial(C3, F3), q).size() == 1);
  }
  auto one = cyclic_group(1);
  CHECK(labels(cochain_complex(one, GroupModule::trivial(one, ZR), 4), 3) ==
        std::vector<std::string>{"Z", "0", "0", "0"});
  // cyclic 2-groups: Z, then Z/2^i in even degrees and 0 in odd ones
  for (int i : {1, 2}) {
    auto G = cyclic_group(1u << i);
    auto C = cochain_complex(G, GroupModule::trivial(G, ZR), 5);
    std::string cyc = "Z/" + std::to_string(1 << i);
    CHECK(labels(C, 4) == std::vector<std::string>{"Z", "0", cyc, "0", cyc});
  }
  // sign action of C2 on Z: H^0 = 0, H^1 = Z/2, H^2 = 0
  CHECK(labels(cochain_complex(C2, sign_module(C2), 4), 3) == std::vector<std::string>{"0", "Z/2", "0", "Z/2"});
}

TEST_CASE("inhomogeneous cochains agree with equivariant homogeneous ones") {
  std::vector<FiniteGroupData> groups{cyclic_group(2), cyclic_group(3), cyclic_group(4), klein()};
  for (auto& G : groups)
    for (Ring R : {ZR, F2}) {
      auto M = GroupModule::trivial(G, R, 1);
      CHECK(labels(cochain_complex(G, M, 3), 2) == labels(homogeneous_cochains(G, M, 3), 2));
    }
  auto C2 = cyclic_group(2);
  CHECK(labels(cochain_complex(C2, sign_module(C2), 3), 2) == labels(homogeneous_cochains(C2, sign_module(C2), 3), 2));
  // the permutation module Z[C2]
  auto swap = make_module(C2, ZR, 2, {ExactMatrix::identity(ZR, 2), mat(ZR, {{0, 1}, {1, 0}})});
  CHECK(labels(cochain_complex(C2, swap, 3), 2) == labels(homogeneous_cochains(C2, swap, 3), 2));
  CHECK(labels(cochain_complex(C2, swap, 3), 2) == std::vector<std::string>{"Z", "0", "0"});
}

TEST_CASE("bar differentials square to zero and caps apply") {
  auto D = dihedral8();
  auto C = cochain_complex(D, GroupModule::trivial(D, F2), 4);
  for (int n : C.degrees())
    if (C.dim(n - 1) && C.dim(n - 2)) CHECK((C.d(n - 1) * C.d(n)).is_zero());
  try {
    cochain_complex(D, GroupModule::trivial(D, F2), 5);
    FAIL("no cap");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ResourceCap);
  }
  GroupCaps big;
  big.cochains = 40000;
  CHECK_NOTHROW(cochain_complex(cyclic_group(4), GroupModule::trivial(cyclic_group(4), F2), 7, big));
}

TEST_CASE("restriction and inflation ranks") {
  auto E = make_extension(cyclic_group(4), {0, 2});
  // H^q(C4) -> H^q(C2) over F2 is onto in even degrees and zero in odd ones
  std::vector<std::size_t> res, inf;
  for (int q = 0; q <= 3; ++q) res.push_back(restriction_rank(E, F2, q));
  CHECK(res == std::vector<std::size_t>{1, 0, 1, 0});
  for (int p = 0; p <= 3; ++p) inf.push_back(inflation_rank(E, F2, p));
  CHECK(inf == std::vector<std::size_t>{1, 1, 0, 0});
  auto whole = make_extension(cyclic_group(4), {0, 1, 2, 3});
  for (int q = 0; q <= 3; ++q) CHECK(restriction_rank(whole, F2, q) == 1);
  CHECK(inflation_rank(whole, F2, 0) == 1);
  for (int p = 1; p <= 3; ++p) CHECK(inflation_rank(whole, F2, p) == 0);
  auto S = make_extension(dihedral8(), {0, 1, 2, 3});
  for (int p = 0; p <= 3; ++p) CHECK(inflation_rank(S, F2, p) == 1);
}

TEST_CASE("twisted coefficients on the free C2-complex of S^3") {
  const Ring Z = ZR;
  auto C2 = cyclic_group(2);
  std::map<int, std::vector<std::string>> basis;
  for (int n = 0; n <= 3; ++n) basis[n] = {"e" + std::to_string(n) + "+", "e" + std::to_string(n) + "-"};
  std::map<int, ExactMatrix> d;
  d.emplace(1, mat(Z, {{1, -1}, {-1, 1}}));
  d.emplace(2, mat(Z, {{1, 1}, {1, 1}}));
  d.emplace(3, mat(Z, {{1, -1}, {-1, 1}}));
  BasedComplex S3(Z, basis, d);
  FreeAction act;
  for (int n = 0; n <= 3; ++n) act.perm[n] = {{0, 1}, {1, 0}};
  auto M = make_module(C2, Z, 2, {ExactMatrix::identity(Z, 2), mat(Z, {{0, 1}, {1, 0}})});
  auto T = tensor_over_group(S3, C2, act, M);
  CHECK(T.d(1) == mat(Z, {{1, -1}, {-1, 1}}));
  CHECK(T.d(2) == mat(Z, {{1, 1}, {1, 1}}));
  CHECK(T.d(3) == mat(Z, {{1, -1}, {-1, 1}}));
  CHECK(labels(T, 3) == std::vector<std::string>{"Z", "0", "0", "Z"});
  // trivial module: the quotient complex of RP^3
  auto RP3 = tensor_over_group(S3, C2, act, GroupModule::trivial(C2, Z));
  CHECK(labels(RP3, 3) == std::vector<std::string>{"Z", "Z/2", "0", "Z"});
  // trivial group acts as the identity operation
  auto one = cyclic_group(1);
  FreeAction id;
  for (int n = 0; n <= 3; ++n) id.perm[n] = {{0, 1}};
  auto same = tensor_over_group(S3, one, id, GroupModule::trivial(one, Z));
  for (int n = 1; n <= 3; ++n) CHECK(same.d(n) == S3.d(n));
  FreeAction fixed;
  for (int n = 0; n <= 3; ++n) fixed.perm[n] = {{0, 1}, {0, 1}};
  CHECK_THROWS_AS(tensor_over_group(S3, C2, fixed, M), Error);
  try {
    tensor_over_group(S3, C2, fixed, M);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ActionNotFree);
  }
}
