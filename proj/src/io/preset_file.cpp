#include "fishbit/io/preset_file.hpp"

#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>

#include "fishbit/error.hpp"

namespace fishbit::io {

namespace {

using Field = std::function<double&(synth::SpeciesPreset&)>;

const std::map<std::string, Field>& fields() {
  static const std::map<std::string, Field> table = {
      {"breathing.base_freq", [](auto& p) -> double& { return p.breathing.base_freq; }},
      {"breathing.freq_jitter", [](auto& p) -> double& { return p.breathing.freq_jitter; }},
      {"breathing.jitter_interval", [](auto& p) -> double& { return p.breathing.jitter_interval; }},
      {"breathing.amplitude", [](auto& p) -> double& { return p.breathing.amplitude; }},
      {"breathing.harmonic2_fraction", [](auto& p) -> double& { return p.breathing.harmonic2_fraction; }},
      {"breathing.noise_std", [](auto& p) -> double& { return p.breathing.noise_std; }},
      {"breathing.speed_gain", [](auto& p) -> double& { return p.breathing.speed_gain; }},
      {"breathing.static_offset", [](auto& p) -> double& { return p.breathing.static_offset; }},
      {"swim.speed_bls", [](auto& p) -> double& { return p.swim.speed_bls; }},
      {"swim.tailbeat_base", [](auto& p) -> double& { return p.swim.tailbeat_base; }},
      {"swim.tailbeat_slope", [](auto& p) -> double& { return p.swim.tailbeat_slope; }},
      {"swim.amp_a", [](auto& p) -> double& { return p.swim.amp_a; }},
      {"swim.amp_b", [](auto& p) -> double& { return p.swim.amp_b; }},
      {"swim.y_ratio", [](auto& p) -> double& { return p.swim.y_ratio; }},
      {"swim.turn_event_rate", [](auto& p) -> double& { return p.swim.turn_event_rate; }},
      {"swim.turn_amplitude", [](auto& p) -> double& { return p.swim.turn_amplitude; }},
      {"swim.turn_kernel_seconds", [](auto& p) -> double& { return p.swim.turn_kernel_seconds; }},
      {"swim.noise_std", [](auto& p) -> double& { return p.swim.noise_std; }},
      {"swim.static_offset_x", [](auto& p) -> double& { return p.swim.static_offset_x; }},
      {"swim.static_offset_y", [](auto& p) -> double& { return p.swim.static_offset_y; }},
  };
  return table;
}

}  // namespace

synth::SpeciesPreset apply_preset_overrides(synth::SpeciesPreset preset, const KeyValues& overrides) {
  for (const auto& [key, value] : overrides) {
    if (key == "name") {
      preset.name = value;
      continue;
    }
    if (key == "base") continue;
    const auto it = fields().find(key);
    if (it == fields().end()) throw Error(Errc::InvalidPreset, "unknown preset key '" + key + "'");
    try {
      it->second(preset) = parse_double(value, key);
    } catch (const Error& e) {
      throw Error(Errc::InvalidPreset, e.what());
    }
  }
  synth::validate(preset);
  return preset;
}

synth::SpeciesPreset load_preset(std::string_view name_or_path) {
  const std::filesystem::path path(name_or_path);
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) return synth::species_preset(name_or_path);
  const KeyValues kv = read_key_values(path);
  const auto base = kv.find("base");
  synth::SpeciesPreset start =
      synth::species_preset(base != kv.end() ? std::string_view(base->second) : "sea_bream");
  return apply_preset_overrides(std::move(start), kv);
}

std::string preset_to_text(const synth::SpeciesPreset& preset) {
  std::string out = "name = " + preset.name + "\n";
  auto copy = preset;
  for (const auto& [key, field] : fields()) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", field(copy));
    out += key + " = " + buf + "\n";
  }
  return out;
}

}  // namespace fishbit::io
