#pragma once

// Typed arithmetic backends for the three rings. Algorithms are templates over one of
// ZZ, QQ, FP; with_domain() picks the backend from a runtime Ring.

#include <cstdint>
#include <tuple>
#include <utility>

#include "ssq/ring.hpp"

namespace ssq::detail {

struct ZZ {
  using T = Int;
  static constexpr bool field = false;
  T zero() const { return T(0); }
  T one() const { return T(1); }
  bool is_zero(const T& a) const { return a.is_zero(); }
  bool is_unit(const T& a) const { return a == 1 || a == -1; }
  T add(const T& a, const T& b) const { return a + b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T mul(const T& a, const T& b) const { return a * b; }
  T neg(const T& a) const { return -a; }
  bool divides(const T& a, const T& b) const { return (b % a).is_zero(); }
  // Exact quotient b / a; caller guarantees divides(a, b).
  T quot(const T& b, const T& a) const { return b / a; }
  // g = s*a + t*b with g = gcd(a, b) > 0.
  std::tuple<T, T, T> gcdext(const T& a, const T& b) const {
    T r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (!r1.is_zero()) {
      T q = r0 / r1;
      T r2 = r0 - q * r1;
      r0 = std::move(r1); r1 = std::move(r2);
      T s2 = s0 - q * s1;
      s0 = std::move(s1); s1 = std::move(s2);
      T t2 = t0 - q * t1;
      t0 = std::move(t1); t1 = std::move(t2);
    }
    if (r0 < 0) { r0 = -r0; s0 = -s0; t0 = -t0; }
    return {r0, s0, t0};
  }
  // Size used for minimal-pivot selection.
  T size(const T& a) const { return a < 0 ? T(-a) : a; }
  // Representative of a modulo d in [0, d); d == 0 leaves a unchanged.
  T mod(const T& a, const T& d) const {
    if (d.is_zero()) return a;
    T r = a % d;
    if (r < 0) r += d;
    return r;
  }
  // Associate with non-negative sign.
  T canon(const T& a) const { return a < 0 ? T(-a) : a; }
  T from(const Scalar& x) const { return boost::multiprecision::numerator(x); }
  Scalar to(const T& a) const { return Scalar(a); }
  Int factor(const T& a) const { return canon(a); }
};

struct QQ {
  using T = Rat;
  static constexpr bool field = true;
  T zero() const { return T(0); }
  T one() const { return T(1); }
  bool is_zero(const T& a) const { return a.is_zero(); }
  bool is_unit(const T& a) const { return !a.is_zero(); }
  T add(const T& a, const T& b) const { return a + b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T mul(const T& a, const T& b) const { return a * b; }
  T neg(const T& a) const { return -a; }
  bool divides(const T& a, const T&) const { return !a.is_zero(); }
  T quot(const T& b, const T& a) const { return b / a; }
  T inv(const T& a) const { return T(1) / a; }
  std::tuple<T, T, T> gcdext(const T& a, const T&) const { return {T(1), T(1) / a, T(0)}; }
  int size(const T& a) const { return a.is_zero() ? 0 : 1; }
  T mod(const T& a, const T&) const { return a; }
  T canon(const T& a) const { return a.is_zero() ? a : T(1); }
  T from(const Scalar& x) const { return x; }
  Scalar to(const T& a) const { return a; }
  Int factor(const T& a) const { return a.is_zero() ? Int(0) : Int(1); }
};

struct FP {
  using T = std::uint32_t;
  static constexpr bool field = true;
  std::uint32_t p;
  T zero() const { return 0; }
  T one() const { return 1; }
  bool is_zero(T a) const { return a == 0; }
  bool is_unit(T a) const { return a != 0; }
  T add(T a, T b) const { std::uint64_t s = std::uint64_t(a) + b; return T(s >= p ? s - p : s); }
  T sub(T a, T b) const { return a >= b ? a - b : T(std::uint64_t(a) + p - b); }
  T mul(T a, T b) const { return T(std::uint64_t(a) * b % p); }
  T neg(T a) const { return a == 0 ? 0 : p - a; }
  T inv(T a) const {
    std::int64_t r0 = p, r1 = a, t0 = 0, t1 = 1;
    while (r1 != 0) {
      std::int64_t q = r0 / r1;
      std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
      std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
    }
    return T(t0 < 0 ? t0 + p : t0);
  }
  bool divides(T a, T) const { return a != 0; }
  T quot(T b, T a) const { return mul(b, inv(a)); }
  std::tuple<T, T, T> gcdext(T a, T) const { return {1, inv(a), 0}; }
  int size(T a) const { return a == 0 ? 0 : 1; }
  T mod(T a, T) const { return a; }
  T canon(T a) const { return a == 0 ? 0 : 1; }
  T from(const Scalar& x) const {
    Int n = boost::multiprecision::numerator(x) % p;
    if (n < 0) n += p;
    return n.convert_to<std::uint32_t>();
  }
  Scalar to(T a) const { return Scalar(a); }
  Int factor(T a) const { return a == 0 ? Int(0) : Int(1); }
};

template <class F>
decltype(auto) with_domain(const Ring& R, F&& f) {
  switch (R.kind()) {
    case Ring::Kind::Integers: return f(ZZ{});
    case Ring::Kind::Rationals: return f(QQ{});
    default: return f(FP{R.characteristic()});
  }
}

}  // namespace ssq::detail
