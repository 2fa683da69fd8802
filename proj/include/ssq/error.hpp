#pragma once

#include <stdexcept>
#include <string>

namespace ssq {

enum class ErrorKind {
  BadInput,
  DimensionMismatch,
  NotAField,
  NotContained,
  NotAComplex,
  NotFiltered,
  IllDefined,
  UnboundedEnumeration,
  NotFirstQuadrant,
  NotAssociative,
  NoIdentity,
  NoInverse,
  NotNormal,
  NotAHomomorphism,
  ActionNotFree,
  MissingDifferential,
  BadFaceArity,
  SimplicialIdentityViolation,
  FiltrationNotMonotone,
  ResourceCap,
};

const char* kind_name(ErrorKind k);

/** Every failure raised by the library. The CLI maps ResourceCap to exit 2, all others to exit 1. */
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + detail), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ssq
