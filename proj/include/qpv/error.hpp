#pragma once

#include <stdexcept>
#include <string>

namespace qpv {

enum class Errc {
  InseparableModulus,
  NonMonic,
  ReducibleModulus,
  NotAUnit,
  NoSquareRoot,
  DescentFailure,
  NotAlternating,
  SizeMismatch,
  NotSemistable,
  NonUnitParameter,
  NotInKGroup,
  ConjugatesUnavailable,
  ResourceLimit,
  NotDefinite,
  NotInW,
  NotLevelV1,
  NotLevelV2,
  KernelUnitSearchFailed,
  NotInSubgroup,
  DomainMismatch,
  MalformedInput,
};

const char* errc_name(Errc code) noexcept;

// Input/schema problems map to exit code 1, everything else is a
// mathematical rejection (exit code 2).
bool is_input_error(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, std::string offending_path = {})
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code),
        message_(message),
        path_(std::move(offending_path)) {}

  Errc code() const noexcept { return code_; }
  const std::string& message() const noexcept { return message_; }
  const std::string& offending_path() const noexcept { return path_; }

 private:
  Errc code_;
  std::string message_;
  std::string path_;
};

}  // namespace qpv
