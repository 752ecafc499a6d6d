#pragma once

#include <string>
#include <string_view>

#include "fishbit/io/keyvalue.hpp"
#include "fishbit/synth/models.hpp"

namespace fishbit::io {

// Preset files use the key-value format with dotted keys:
//
//   name = sea_bream
//   base = sea_bream              # optional built-in to start from
//   breathing.base_freq = 2.35
//   swim.amp_b = 0.6
//
// Recognised keys are exactly the fields of BreathingModel (breathing.*) and
// SwimModel (swim.*). Unknown keys are rejected.

/// Applies `overrides` on top of `preset`. Throws InvalidPreset.
synth::SpeciesPreset apply_preset_overrides(synth::SpeciesPreset preset, const KeyValues& overrides);

/// Built-in name or path to a preset file.
synth::SpeciesPreset load_preset(std::string_view name_or_path);

std::string preset_to_text(const synth::SpeciesPreset& preset);

}  // namespace fishbit::io
