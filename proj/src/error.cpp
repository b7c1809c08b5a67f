#include "spreadforge/error.hpp"

namespace spreadforge {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
    case Errc::NoPrimitivePolynomialFound: return "NoPrimitivePolynomialFound";
    case Errc::InvalidModulus: return "InvalidModulus";
    case Errc::NonMonicModulus: return "NonMonicModulus";
    case Errc::FieldTooLarge: return "FieldTooLarge";
    case Errc::LevelMismatch: return "LevelMismatch";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::AmbientMismatch: return "AmbientMismatch";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::SingularInput: return "SingularInput";
    case Errc::GcdConditionViolated: return "GcdConditionViolated";
    case Errc::ParameterOutOfRange: return "ParameterOutOfRange";
    case Errc::ExponentOutOfRange: return "ExponentOutOfRange";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::GroupTooLarge: return "GroupTooLarge";
    case Errc::InternalOrderCheckFailed: return "InternalOrderCheckFailed";
    case Errc::TrivialOrbit: return "TrivialOrbit";
    case Errc::CodeTooSmall: return "CodeTooSmall";
    case Errc::KindMismatch: return "KindMismatch";
    case Errc::MalformedHeader: return "MalformedHeader";
    case Errc::VersionUnsupported: return "VersionUnsupported";
    case Errc::NonCanonicalMember: return "NonCanonicalMember";
    case Errc::DuplicateMember: return "DuplicateMember";
    case Errc::InternalError: return "InternalError";
  }
  return "Unknown";
}

}  // namespace spreadforge
