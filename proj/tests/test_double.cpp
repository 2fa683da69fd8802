#include <set>

#include "doctest.h"
#include "ssq/group.hpp"
#include "support.hpp"

using namespace ssq;
using namespace ssq::test;

namespace {

const Ring ZR = Ring::integers();
const Ring F2 = Ring::prime_field(2);

std::size_t total_dim(const SpectralPage& E, int n) {
  std::size_t s = 0;
  for (auto& [pq, m] : E.entries)
    if (E.display(pq).first + E.display(pq).second == n) s += m.size();
  return s;
}

DoubleComplex square(bool anticommuting) {
  std::map<Position, std::vector<std::string>> e{{{0, 0}, {"a"}}, {{1, 0}, {"b"}}, {{0, 1}, {"c"}}, {{1, 1}, {"d"}}};
  std::map<Position, ExactMatrix> h, v;
  h.emplace(Position{0, 0}, mat(ZR, {{1}}));
  h.emplace(Position{0, 1}, mat(ZR, {{1}}));
  v.emplace(Position{0, 0}, mat(ZR, {{1}}));
  v.emplace(Position{1, 0}, mat(ZR, {{anticommuting ? -1 : 1}}));
  return DoubleComplex(ZR, e, h, v, std::nullopt, !anticommuting);
}

}  // namespace

TEST_CASE("small double complexes") {
  DoubleComplex one(ZR, {{{0, 0}, {"x"}}}, {}, {});
  auto T = totalize(one);
  CHECK(T.degrees() == std::vector<int>{0});
  CHECK(stabilization_index(column_filtration(one)) == 1);

  DoubleComplex arrow(ZR, {{{0, 0}, {"x"}}, {{1, 0}, {"y"}}}, {{{0, 0}, mat(ZR, {{1}})}}, {});
  auto H = homology(totalize(arrow));
  CHECK(H.dim(0) == 0);
  CHECK(H.dim(1) == 0);

  auto sq = square(true);
  CHECK(totalize(sq).names(-1) == std::vector<std::string>{"(0,1):c", "(1,0):b"});
  auto E1 = page(column_filtration(sq), 1);
  for (auto& [pq, m] : E1.entries) CHECK(m.is_zero());
  auto R1 = page(row_filtration(sq), 1);
  for (auto& [pq, m] : R1.entries) CHECK(m.is_zero());
  // commuting input converted by the sign rule
  CHECK(totalize(square(false)).d(-1) == totalize(sq).d(-1));
  std::map<Position, ExactMatrix> h, v;
  h.emplace(Position{0, 0}, mat(ZR, {{1}}));
  h.emplace(Position{0, 1}, mat(ZR, {{1}}));
  v.emplace(Position{0, 0}, mat(ZR, {{1}}));
  v.emplace(Position{1, 0}, mat(ZR, {{1}}));
  try {
    DoubleComplex(ZR, {{{0, 0}, {"a"}}, {{1, 0}, {"b"}}, {{0, 1}, {"c"}}, {{1, 1}, {"d"}}}, h, v);
    FAIL("commuting square accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAComplex);
  }
}

TEST_CASE("LHS for C2 -> C4 -> C2 over F2") {
  auto E = make_extension(cyclic_group(4), {0, 2});
  auto D = lhs_double_complex(E, F2, 5);
  CHECK(D.dim({0, 5}) == 2 * 4 * 4 * 4 * 4 * 4);
  auto FC = column_filtration(D);
  SpectralSequence ss(FC);
  auto E2 = ss.page(2);
  for (int p = 0; p <= 4; ++p)
    for (int q = 0; p + q <= 4; ++q) CHECK(E2.dim(E2.internal({p, q})) == 1);
  auto E3 = ss.page(3), Einf = ss.infinity_page();
  for (int p = 0; p <= 4; ++p)
    for (int q = 0; p + q <= 4; ++q) {
      std::size_t want = (p <= 1 && q % 2 == 0) ? 1 : 0;
      CHECK(E3.dim(E3.internal({p, q})) == want);
      CHECK(Einf.dim(Einf.internal({p, q})) == want);
    }
  auto T = totalize(D);
  for (int n = 0; n <= 3; ++n) CHECK(homology_in(T, n).size() == 1);
  // the row filtration degenerates onto q = 0
  auto R2 = page(row_filtration(D), 2);
  for (auto& [pq, m] : R2.entries) {
    auto shown = R2.display(pq);
    // row filtration puts q in the filtration slot, so p is the second coordinate
    int p = shown.second, n = shown.first + shown.second;
    if (n <= 4) CHECK(m.size() == (p == 0 ? 1u : 0u));
  }
  for (int n = 0; n <= 4; ++n) CHECK(total_dim(Einf, n) == total_dim(infinity_page(row_filtration(D)), n));
}

TEST_CASE("LHS for C2 -> C4 -> C2 over Z") {
  auto E = make_extension(cyclic_group(4), {0, 2});
  auto D = lhs_double_complex(E, ZR, 5);
  SpectralSequence ss(column_filtration(D));
  auto E2 = ss.page(2), Einf = ss.infinity_page();
  // E2 = H^p(C2; H^q(C2; Z)) with H^q(C2; Z) = Z, 0, Z/2, 0, Z/2 and trivial action;
  // H^p(C2; Z/2) has the size of H^p(C2; F2)
  auto C2 = cyclic_group(2);
  for (int p = 0; p <= 4; ++p)
    for (int q = 0; p + q <= 4; ++q) {
      const auto* e = E2.at(E2.internal({p, q}));
      if (q == 0) CHECK(e->isomorphic(group_cohomology(C2, GroupModule::trivial(C2, ZR), p)));
      else if (q % 2) CHECK(e->is_zero());
      else {
        CHECK(e->label() == "Z/2");
        CHECK(group_cohomology(C2, GroupModule::trivial(C2, F2), p).size() == 1);
      }
    }
  // H^3(C4; Z) = 0 forces d3 : E^{1,2} -> E^{4,0} to be an isomorphism
  CHECK(ss.page(3).at(E2.internal({1, 2}))->label() == "Z/2");
  CHECK(Einf.at(Einf.internal({1, 2}))->is_zero());
  CHECK(Einf.at(Einf.internal({4, 0}))->is_zero());
  for (auto pq : std::vector<Position>{{0, 0}, {2, 0}, {0, 2}, {2, 2}, {0, 4}})
    CHECK(Einf.at(Einf.internal(pq))->label() == E2.at(E2.internal(pq))->label());
  auto tower = ss.extension_tower(-2);
  std::set<std::string> cands;
  for (auto& m : tower.candidates) cands.insert(m.label());
  CHECK(cands == std::set<std::string>{"(Z/2)^2", "Z/4"});
  CHECK(ss.total_homology(-2).label() == "Z/4");
}
