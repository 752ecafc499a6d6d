#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fishbit {

enum class Errc {
  InvalidConfig,
  EmptyInput,
  FrameTooShort,
  InsufficientData,
  ScheduleInfeasible,
  MixedModes,
  BadMagic,
  UnsupportedVersion,
  CorruptRecord,
  OutOfRange,
  InvalidPreset,
  InvalidSpeeds,
  InsufficientSamples,
  TooFewSteps,
  DegenerateInput,
  SingularFeatures,
  ClassImbalanceBelowMinimum,
  UnfittedModel,
  ParseError,
  SchemaMismatch,
  Io,
};

std::string_view errc_name(Errc code) noexcept;

/// Single exception type for the library; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace fishbit
