#include <random>

#include "doctest.h"
#include "random_complex.hpp"
#include "ssq/cellio.hpp"
#include "support.hpp"

using namespace ssq;
using namespace ssq::test;

namespace {

const Ring ZR = Ring::integers();
const Ring F2 = Ring::prime_field(2);

FgModulePresentation Zmod(long n) { return FgModulePresentation::detached(ZR, ints({n})); }

FormalPage hopf(long d2) {
  FormalPage P;
  for (Position pq : {Position{0, 0}, Position{2, 0}, Position{0, 1}, Position{2, 1}}) P.entries[pq] = Zmod(0);
  P.differentials[{2, 2, 0}] = mat(ZR, {{d2}});
  return P;
}

io::FormalFixture fixture(const std::string& rel) { return io::parse_formal(io::load_json(std::string(SSQ_FIXTURES) + "/" + rel)); }

std::vector<std::string> diagonal_labels(const FormalPage& P, int upto) {
  std::vector<std::string> out;
  for (int n = 0; n <= upto; ++n) {
    auto T = diagonal_extensions(P, n);
    REQUIRE(T.resolved);
    out.push_back(T.candidates[0].label());
  }
  return out;
}

std::size_t total(const FormalPage& P) {
  std::size_t s = 0;
  for (auto& [pq, m] : P.entries) s += m.size();
  return s;
}

}  // namespace

TEST_CASE("Hopf page: one unforced d2") {
  auto rep = forced_zero_scan(hopf(1), 5);
  CHECK(rep.unforced[2] == std::vector<Position>{{2, 0}});
  for (int s = 3; s <= 5; ++s) CHECK(rep.unforced[s].empty());
  CHECK_FALSE(rep.collapsesAt);
  CHECK(forced_zero_scan(FormalPage{}, 4).collapsesAt == 2);
}

TEST_CASE("Hopf branches") {
  auto one = turn_page(hopf(1));
  CHECK(one.r == 3);
  CHECK(one.entries.at({0, 0}).label() == "Z");
  CHECK(one.entries.at({2, 1}).label() == "Z");
  CHECK(one.entries.at({2, 0}).is_zero());
  CHECK(one.entries.at({0, 1}).is_zero());
  CHECK(diagonal_labels(one, 3) == std::vector<std::string>{"Z", "0", "0", "Z"});
  CHECK(diagonal_labels(turn_page(hopf(-1)), 3) == std::vector<std::string>{"Z", "0", "0", "Z"});

  auto zero = turn_page(hopf(0));
  CHECK(diagonal_labels(zero, 3) == std::vector<std::string>{"Z", "Z", "Z", "Z"});

  auto three = turn_page(hopf(3));
  CHECK(three.entries.at({0, 1}).label() == "Z/3");
  CHECK(three.entries.at({2, 0}).is_zero());
  CHECK(diagonal_labels(three, 3) == std::vector<std::string>{"Z", "Z/3", "0", "Z"});

  std::map<int, FgModulePresentation> s3{{0, Zmod(0)}, {1, Zmod(1)}, {2, Zmod(1)}, {3, Zmod(0)}};
  auto consistent = [&](const FormalPage& P) {
    bool all = true;
    for (auto& c : check_target(turn_to_infinity(P), s3)) all = all && c.consistent;
    return all;
  };
  CHECK(consistent(hopf(1)));
  CHECK(consistent(hopf(-1)));
  CHECK_FALSE(consistent(hopf(0)));
  CHECK_FALSE(consistent(hopf(3)));
  CHECK_FALSE(consistent(hopf(2)));
}

TEST_CASE("missing and malformed differentials") {
  FormalPage P = hopf(1);
  P.differentials.clear();
  try {
    turn_page(P);
    FAIL("expected MissingDifferential");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MissingDifferential);
    CHECK(std::string(e.what()).find("(2,0)") != std::string::npos);
  }
  P.differentials[{2, 2, 0}] = mat(ZR, {{1, 0}});
  CHECK_THROWS_AS(validate_formal(P), Error);

  // Z/2 -> Z has no nonzero maps
  FormalPage T;
  T.entries[{2, 0}] = Zmod(2);
  T.entries[{0, 1}] = Zmod(0);
  T.differentials[{2, 2, 0}] = mat(ZR, {{1}});
  try {
    validate_formal(T);
    FAIL("expected IllDefined");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IllDefined);
  }
  // Z/2 -> Z/4 sending 1 to 2 is fine
  T.entries[{0, 1}] = Zmod(4);
  T.differentials[{2, 2, 0}] = mat(ZR, {{2}});
  CHECK_NOTHROW(validate_formal(T));
  CHECK(turn_page(T).entries.at({0, 1}).label() == "Z/2");

  // d d != 0
  FormalPage D;
  for (Position pq : {Position{4, 0}, Position{2, 1}, Position{0, 2}}) D.entries[pq] = Zmod(0);
  D.differentials[{2, 4, 0}] = mat(ZR, {{1}});
  D.differentials[{2, 2, 1}] = mat(ZR, {{1}});
  try {
    validate_formal(D);
    FAIL("expected NotAComplex");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAComplex);
  }
  FormalPage early = hopf(1);
  early.r = 3;
  CHECK_THROWS_AS(validate_formal(early), Error);
}

TEST_CASE("turn_page fixes pages with nothing unforced") {
  auto F = fixture("ex4_2/cp3.json");
  auto P = F.page;
  auto rep = forced_zero_scan(P, formal_reach(P));
  REQUIRE(rep.collapsesAt == 2);
  auto Q = turn_page(P);
  for (auto& [pq, m] : P.entries) CHECK(Q.entries.at(pq).isomorphic(m));
  auto R = turn_page(Q);
  for (auto& [pq, m] : Q.entries) CHECK(R.entries.at(pq).isomorphic(m));
}

TEST_CASE("CP3 diagonals are free of rank 4 in even degrees") {
  auto P = turn_to_infinity(fixture("ex4_2/cp3.json").page);
  for (int k = 0; k <= 6; ++k) {
    auto T = diagonal_extensions(P, k);
    CHECK(T.resolved);
    CHECK(T.candidates[0].isomorphic(FgModulePresentation::free(ZR, k % 2 ? 0 : 4)));
  }
}

TEST_CASE("C4 homology page replay") {
  auto F = fixture("ex3_6/c4_homology.json");
  CHECK_THROWS_AS(diagonal_extensions(F.page, 2), Error);
  auto E3 = turn_page(F.page);
  for (int p = 1; p <= 5; p += 2) CHECK(E3.entries.at({p, 1}).is_zero());
  for (int p = 3; p <= 7; p += 2) CHECK(E3.entries.at({p, 0}).is_zero());
  auto E4 = turn_page(E3);
  CHECK(E4.entries.at({1, 3}).is_zero());
  CHECK(E4.entries.at({4, 1}).is_zero());
  CHECK(E4.entries.at({2, 3}).label() == "Z/2");
  auto T = diagonal_extensions(turn_to_infinity(E4), 1);
  REQUIRE(T.candidates.size() == 2);
  CHECK(T.candidates[0].label() == "(Z/2)^2");
  CHECK(T.candidates[1].label() == "Z/4");
  CHECK_FALSE(T.resolved);
  for (auto& c : check_target(turn_to_infinity(F.page), F.target)) CHECK(c.consistent);
}

TEST_CASE("single-entry diagonal resolves immediately") {
  FormalPage P;
  P.entries[{1, 1}] = Zmod(6);
  auto T = diagonal_extensions(P, 2);
  CHECK(T.resolved);
  CHECK(T.candidates[0].label() == "Z/6");
}

TEST_CASE("coarse target check when the candidates are unbounded") {
  FormalPage P;
  // Z below Z/2: Z/2 extended by Z is not enumerable
  P.entries[{0, 1}] = Zmod(0);
  P.entries[{1, 0}] = Zmod(2);
  auto c = check_target(P, {{1, FgModulePresentation::detached(ZR, ints({2, 0}))}});
  REQUIRE(c.size() == 1);
  CHECK(c[0].coarse);
  CHECK(c[0].consistent);
  auto bad = check_target(P, {{1, FgModulePresentation::free(ZR, 2)}});
  CHECK_FALSE(bad[0].consistent);
}

TEST_CASE("bordism: vertical-axis constraint") {
  auto F = fixture("ex7_3/bordism.json");
  auto raw = forced_zero_scan(F.page, formal_reach(F.page));
  CHECK(raw.unforced[5] == std::vector<Position>{{5, 0}});
  CHECK_THROWS_AS(turn_to_infinity(F.page), Error);
  auto P = io::constrained_page(F);
  CHECK(forced_zero_scan(P, formal_reach(P)).collapsesAt == 2);
  CHECK(P.notes.size() == 1);
  auto inf = turn_to_infinity(P);
  for (auto& [pq, m] : F.page.entries) CHECK(inf.entries.at(pq).isomorphic(m));
  for (auto& c : check_target(inf, F.target)) CHECK(c.consistent);

  auto conflicting = F.page;
  conflicting.differentials[{5, 5, 0}] = mat(ZR, {{1}});
  CHECK_THROWS_AS(edge_injectivity_constraint(conflicting, Axis::Vertical), Error);
  FormalPage off;
  off.entries[{1, 1}] = Zmod(0);
  auto same = edge_injectivity_constraint(off, Axis::Vertical);
  CHECK(same.zeroAxes.empty());
  CHECK(same.notes.empty());
}

TEST_CASE("split extension: bottom row survives") {
  auto F = fixture("ex7_4/split_d8.json");
  CHECK_THROWS_AS(turn_page(F.page), Error);
  auto P = io::constrained_page(F);
  auto inf = turn_to_infinity(P);
  for (int p = 0; p <= 4; ++p) CHECK(inf.entries.at({p, 0}).size() == 1);
  for (auto& c : check_target(inf, F.target)) CHECK(c.consistent);
}

TEST_CASE("formal turns reproduce engine pages") {
  std::mt19937 rng(2024);
  for (Ring R : {ZR, F2, Ring::prime_field(3)})
    for (int trial = 0; trial < 30; ++trial) {
      SpectralSequence ss(random_filtered(rng, R));
      int top = ss.stabilization_index();
      auto cur = ss.page(0);
      for (int r = 0; r <= top; ++r) {
        auto next = ss.page(r + 1);
        auto turned = turn_page(formal_from_page(cur));
        for (auto& [pq, m] : next.entries) {
          auto* t = turned.at(next.display(pq));
          REQUIRE(t);
          CHECK(t->isomorphic(m));
        }
        if (R.is_field()) CHECK(total(turned) <= total(formal_from_page(cur)));
        cur = std::move(next);
      }
    }
}
