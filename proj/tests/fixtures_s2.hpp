#pragma once

#include "ssq/filtered.hpp"
#include "support.hpp"

namespace ssq::test {

// Semi-simplicial S^2: faces P,Q glued along the triangle A,B,C.
inline BasedComplex s2_complex(Ring R = Ring::integers()) {
  std::map<int, std::vector<std::string>> basis{{0, {"a", "b", "c"}}, {1, {"A", "B", "C"}}, {2, {"P", "Q"}}};
  std::map<int, ExactMatrix> d;
  d.emplace(1, mat(R, {{-1, -1, 0}, {1, 0, -1}, {0, 1, 1}}));
  d.emplace(2, mat(R, {{1, 1}, {-1, -1}, {1, 1}}));
  return BasedComplex(R, basis, d);
}

// Rows {A; a,b} within {A,B; a,b,c} within everything.
inline FilteredComplex s2_filtered(Ring R = Ring::integers()) {
  return FilteredComplex(s2_complex(R), {{0, {0, 0, 1}}, {1, {0, 1, 2}}, {2, {2, 2}}});
}

}  // namespace ssq::test
