#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fishbit/analysis/respirometry.hpp"
#include "fishbit/signal/types.hpp"
#include "fishbit/synth/generator.hpp"

namespace fishbit::io {

// Every CSV starts with a schema comment line, then the column header:
//
//   raw        # fishbit.raw/1         t_s,ax_g,ay_g,az_g
//   windows    # fishbit.windows/1     window_start_s,resp_freq_bps,activity_g,mode
//   truth      # fishbit.truth/1       frame_start_s,breath_freq_hz,jerk_energy_g
//   step       # fishbit.step/1        t_s,o2_sat_pct   (+ sidecar <file>.meta)
//
// Readers skip '#' lines and locate columns by name, so extra columns are
// tolerated and a missing one is a SchemaMismatch naming it.

inline constexpr std::string_view kRawSchema = "fishbit.raw/1";
inline constexpr std::string_view kWindowsSchema = "fishbit.windows/1";
inline constexpr std::string_view kTruthSchema = "fishbit.truth/1";
inline constexpr std::string_view kStepSchema = "fishbit.step/1";

/// Parsed CSV with 1-based source line numbers per row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;

  /// Throws SchemaMismatch naming `name` when absent.
  std::size_t column(std::string_view name) const;
};

CsvTable parse_csv(std::istream& in, std::string_view source);

void write_raw_csv(std::ostream& out, const signal::AccelSeries& series);

/// When `fs` is empty it is inferred from the first two timestamps. Rows
/// must be spaced 1/fs apart within 1e-6 s. Throws ParseError with line number.
signal::AccelSeries read_raw_csv(std::istream& in, std::string_view source,
                                 std::optional<double> fs = std::nullopt);

void write_windows_csv(std::ostream& out, const std::vector<signal::WindowResult>& rows);
std::vector<signal::WindowResult> read_windows_csv(std::istream& in, std::string_view source);

void write_truth_csv(std::ostream& out, const synth::GroundTruth& truth);

/// Step trace plus `<path>.meta` sidecar (speed_bls, temp_c, salinity_psu,
/// chamber_volume_l, fish_mass_kg).
void write_step_files(const std::filesystem::path& path, const analysis::SpeedStep& step);
analysis::SpeedStep read_step_files(const std::filesystem::path& path);

}  // namespace fishbit::io
