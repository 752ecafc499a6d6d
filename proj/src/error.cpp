#include "fishbit/error.hpp"

namespace fishbit {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::FrameTooShort: return "FrameTooShort";
    case Errc::InsufficientData: return "InsufficientData";
    case Errc::ScheduleInfeasible: return "ScheduleInfeasible";
    case Errc::MixedModes: return "MixedModes";
    case Errc::BadMagic: return "BadMagic";
    case Errc::UnsupportedVersion: return "UnsupportedVersion";
    case Errc::CorruptRecord: return "CorruptRecord";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::InvalidPreset: return "InvalidPreset";
    case Errc::InvalidSpeeds: return "InvalidSpeeds";
    case Errc::InsufficientSamples: return "InsufficientSamples";
    case Errc::TooFewSteps: return "TooFewSteps";
    case Errc::DegenerateInput: return "DegenerateInput";
    case Errc::SingularFeatures: return "SingularFeatures";
    case Errc::ClassImbalanceBelowMinimum: return "ClassImbalanceBelowMinimum";
    case Errc::UnfittedModel: return "UnfittedModel";
    case Errc::ParseError: return "ParseError";
    case Errc::SchemaMismatch: return "SchemaMismatch";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace fishbit
