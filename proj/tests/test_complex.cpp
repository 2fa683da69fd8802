#include <random>

#include "doctest.h"
#include "fixtures_s2.hpp"
#include "random_complex.hpp"

using namespace ssq;
using namespace ssq::test;

TEST_CASE("sphere homology") {
  auto H = homology(s2_complex());
  CHECK(H.at(0)->label() == "Z");
  CHECK(H.dim(1) == 0);
  CHECK(H.at(2)->label() == "Z");
  // the class of P - Q generates H_2
  auto rep = H.at(2)->representatives.column(0);
  CHECK(rep.size() == 2);
  CHECK(rep[0].second == -rep[1].second);
}

TEST_CASE("d d != 0 is rejected with a witness") {
  const Ring Z = Ring::integers();
  std::map<int, std::vector<std::string>> basis{{0, {"x"}}, {1, {"y"}}, {2, {"z"}}};
  std::map<int, ExactMatrix> d;
  d.emplace(1, mat(Z, {{1}}));
  d.emplace(2, mat(Z, {{1}}));
  try {
    BasedComplex C(Z, basis, d);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAComplex);
    CHECK(std::string(e.what()).find("z") != std::string::npos);
  }
}

TEST_CASE("shape and naming errors") {
  const Ring Z = Ring::integers();
  std::map<int, ExactMatrix> d;
  d.emplace(1, mat(Z, {{1, 2}}));
  CHECK_THROWS_AS(BasedComplex(Z, {{0, {"a"}}, {1, {"b"}}}, d), Error);
  CHECK_THROWS_AS(BasedComplex(Z, {{0, {"a"}}, {1, {"a"}}}, {}), Error);
}

TEST_CASE("cochain complexes display negated degrees") {
  const Ring F2 = Ring::prime_field(2);
  // C^0 -> C^1 zero map, so H^0 = H^1 = F2
  BasedComplex C(F2, {{0, {"u"}}, {-1, {"v"}}}, {}, true);
  auto H = homology(C);
  CHECK(H.dim(0) == 1);
  CHECK(H.dim(1) == 1);
  CHECK(poincare_series(H, 3) == std::vector<std::size_t>{1, 1, 0, 0});
  CHECK_THROWS_AS(poincare_series(homology(s2_complex()), 2), Error);
}

TEST_CASE("Euler characteristic of random complexes") {
  std::mt19937 rng(11);
  for (Ring R : {Ring::rationals(), Ring::prime_field(2), Ring::prime_field(3)})
    for (int trial = 0; trial < 40; ++trial) {
      auto C = random_filtered(rng, R).complex();
      long chi_c = 0, chi_h = 0;
      for (int n : C.degrees()) chi_c += (n % 2 ? -1 : 1) * static_cast<long>(C.dim(n));
      auto H = homology(C);
      for (auto& [n, m] : H.byDegree) chi_h += (n % 2 ? -1 : 1) * static_cast<long>(m.size());
      CHECK(chi_c == chi_h);
    }
}

TEST_CASE("homology representatives are cycles, and over Z free ranks agree with Q") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    auto C = random_filtered(rng, Ring::integers()).complex();
    auto HZ = homology(C);
    BasedComplex CQ(Ring::rationals(), [&] {
      std::map<int, std::vector<std::string>> b;
      for (int n : C.degrees()) b[n] = C.names(n);
      return b;
    }(), [&] {
      std::map<int, ExactMatrix> d;
      for (int n : C.degrees()) {
        ExactMatrix m(Ring::rationals(), C.d(n).rows(), 0);
        for (auto& c : C.d(n).columns()) m.append_column(c);
        d.emplace(n, m);
      }
      return d;
    }());
    auto HQ = homology(CQ);
    for (auto& [n, m] : HZ.byDegree) {
      CHECK(m.free_rank() == HQ.dim(n));
      for (auto& col : m.representatives.columns()) CHECK(C.d(n).apply(col).empty());
    }
  }
}
