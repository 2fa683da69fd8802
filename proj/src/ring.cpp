#include "ssq/ring.hpp"

#include <algorithm>
#include <cctype>

namespace ssq {

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::BadInput: return "BadInput";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotAField: return "NotAField";
    case ErrorKind::NotContained: return "NotContained";
    case ErrorKind::NotAComplex: return "NotAComplex";
    case ErrorKind::NotFiltered: return "NotFiltered";
    case ErrorKind::IllDefined: return "IllDefined";
    case ErrorKind::UnboundedEnumeration: return "UnboundedEnumeration";
    case ErrorKind::NotFirstQuadrant: return "NotFirstQuadrant";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::NoIdentity: return "NoIdentity";
    case ErrorKind::NoInverse: return "NoInverse";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorKind::ActionNotFree: return "ActionNotFree";
    case ErrorKind::MissingDifferential: return "MissingDifferential";
    case ErrorKind::BadFaceArity: return "BadFaceArity";
    case ErrorKind::SimplicialIdentityViolation: return "SimplicialIdentityViolation";
    case ErrorKind::FiltrationNotMonotone: return "FiltrationNotMonotone";
    case ErrorKind::ResourceCap: return "ResourceCap";
  }
  return "Error";
}

Ring Ring::prime_field(std::uint32_t p) {
  if (p < 2) throw Error(ErrorKind::BadInput, "characteristic " + std::to_string(p) + " is not prime");
  for (std::uint32_t d = 2; std::uint64_t(d) * d <= p; ++d)
    if (p % d == 0) throw Error(ErrorKind::BadInput, "characteristic " + std::to_string(p) + " is not prime");
  return Ring(Kind::PrimeField, p);
}

Ring Ring::parse(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (s == "Z" || s == "ZZ") return integers();
  if (s == "Q" || s == "QQ") return rationals();
  std::string digits;
  if (s.rfind("GF(", 0) == 0 && s.back() == ')') digits = s.substr(3, s.size() - 4);
  else if (s.rfind("F_", 0) == 0) digits = s.substr(2);
  else if (s.rfind("F", 0) == 0) digits = s.substr(1);
  if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) &&
      digits.size() < 10)
    return prime_field(static_cast<std::uint32_t>(std::stoul(digits)));
  throw Error(ErrorKind::BadInput, "unknown ring '" + raw + "'");
}

Scalar Ring::normalize(const Scalar& x) const {
  if (kind_ == Kind::Rationals) return x;
  if (boost::multiprecision::denominator(x) != 1)
    throw Error(ErrorKind::BadInput, "fractional entry over " + name());
  if (kind_ == Kind::Integers) return x;
  Int n = boost::multiprecision::numerator(x) % p_;
  if (n < 0) n += p_;
  return Scalar(n);
}

std::string Ring::name() const {
  switch (kind_) {
    case Kind::Integers: return "Z";
    case Kind::Rationals: return "Q";
    default: return "F" + std::to_string(p_);
  }
}

}  // namespace ssq
