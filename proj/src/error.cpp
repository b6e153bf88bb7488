#include "qpv/error.hpp"

namespace qpv {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InseparableModulus: return "InseparableModulus";
    case Errc::NonMonic: return "NonMonic";
    case Errc::ReducibleModulus: return "ReducibleModulus";
    case Errc::NotAUnit: return "NotAUnit";
    case Errc::NoSquareRoot: return "NoSquareRoot";
    case Errc::DescentFailure: return "DescentFailure";
    case Errc::NotAlternating: return "NotAlternating";
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::NotSemistable: return "NotSemistable";
    case Errc::NonUnitParameter: return "NonUnitParameter";
    case Errc::NotInKGroup: return "NotInKGroup";
    case Errc::ConjugatesUnavailable: return "ConjugatesUnavailable";
    case Errc::ResourceLimit: return "ResourceLimit";
    case Errc::NotDefinite: return "NotDefinite";
    case Errc::NotInW: return "NotInW";
    case Errc::NotLevelV1: return "NotLevelV1";
    case Errc::NotLevelV2: return "NotLevelV2";
    case Errc::KernelUnitSearchFailed: return "KernelUnitSearchFailed";
    case Errc::NotInSubgroup: return "NotInSubgroup";
    case Errc::DomainMismatch: return "DomainMismatch";
    case Errc::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

bool is_input_error(Errc code) noexcept {
  return code == Errc::MalformedInput || code == Errc::DomainMismatch ||
         code == Errc::SizeMismatch || code == Errc::NonMonic;
}

}  // namespace qpv
