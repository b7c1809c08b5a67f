#pragma once

#include <stdexcept>
#include <string>

namespace spreadforge {

enum class Errc {
  NonPrimeCharacteristic,
  NoPrimitivePolynomialFound,
  InvalidModulus,
  NonMonicModulus,
  FieldTooLarge,
  LevelMismatch,
  DivisionByZero,
  DimensionMismatch,
  AmbientMismatch,
  ZeroVector,
  RankDeficient,
  SingularInput,
  GcdConditionViolated,
  ParameterOutOfRange,
  ExponentOutOfRange,
  IndexOutOfRange,
  GroupTooLarge,
  InternalOrderCheckFailed,
  TrivialOrbit,
  CodeTooSmall,
  KindMismatch,
  MalformedHeader,
  VersionUnsupported,
  NonCanonicalMember,
  DuplicateMember,
  InternalError,
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace spreadforge
