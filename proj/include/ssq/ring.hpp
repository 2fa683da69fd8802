#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "ssq/error.hpp"

namespace ssq {

using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
                                          boost::multiprecision::et_off>;
// Entry type of ExactMatrix for every ring. Over Z and F_p only integral values occur.
using Scalar = Rat;

class Ring {
 public:
  enum class Kind { Integers, Rationals, PrimeField };

  static Ring integers() { return Ring(Kind::Integers, 0); }
  static Ring rationals() { return Ring(Kind::Rationals, 0); }
  /** Throws BadInput unless p is prime (trial division). */
  static Ring prime_field(std::uint32_t p);
  /** Parses "Z", "Q", "F2", "F_3", "GF(5)". */
  static Ring parse(const std::string& s);

  Kind kind() const { return kind_; }
  std::uint32_t characteristic() const { return p_; }
  bool is_field() const { return kind_ != Kind::Integers; }
  bool is_integers() const { return kind_ == Kind::Integers; }

  /** Reduces an entry into canonical form: [0,p) over F_p; rejects fractions outside Q. */
  Scalar normalize(const Scalar& x) const;
  std::string name() const;

  bool operator==(const Ring& o) const { return kind_ == o.kind_ && p_ == o.p_; }
  bool operator!=(const Ring& o) const { return !(*this == o); }

 private:
  Ring(Kind k, std::uint32_t p) : kind_(k), p_(p) {}
  Kind kind_;
  std::uint32_t p_;
};

}  // namespace ssq
