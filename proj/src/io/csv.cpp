#include "fishbit/io/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "fishbit/error.hpp"
#include "fishbit/io/keyvalue.hpp"

namespace fishbit::io {

namespace {

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  while (true) {
    const auto comma = line.find(',');
    std::string_view cell = line.substr(0, comma);
    while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\r')) cell.remove_suffix(1);
    while (!cell.empty() && cell.front() == ' ') cell.remove_prefix(1);
    out.emplace_back(cell);
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return out;
}

std::string where(std::string_view source, std::size_t line) {
  return std::string(source) + ":" + std::to_string(line);
}

double cell_double(const CsvTable& t, std::size_t row, std::size_t col, std::string_view source) {
  try {
    return parse_double(t.rows[row][col], t.header[col]);
  } catch (const Error& e) {
    throw Error(Errc::ParseError, where(source, t.line_numbers[row]) + ": " + e.what());
  }
}

void put(std::ostream& out, const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  out << buf;
}

}  // namespace

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw Error(Errc::SchemaMismatch, "missing column '" + std::string(name) + "'");
}

CsvTable parse_csv(std::istream& in, std::string_view source) {
  CsvTable t;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto cells = split(line);
    if (!have_header) {
      t.header = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw Error(Errc::ParseError, where(source, line_no) + ": expected " +
                                        std::to_string(t.header.size()) + " fields, got " +
                                        std::to_string(cells.size()));
    }
    t.rows.push_back(std::move(cells));
    t.line_numbers.push_back(line_no);
  }
  if (!have_header) throw Error(Errc::SchemaMismatch, std::string(source) + ": no header line");
  return t;
}

void write_raw_csv(std::ostream& out, const signal::AccelSeries& series) {
  out << "# " << kRawSchema << "\n" << "t_s,ax_g,ay_g,az_g\n";
  for (std::size_t i = 0; i < series.samples.size(); ++i) {
    const auto& s = series.samples[i];
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.6f,%.6f\n", static_cast<double>(i) / series.fs,
                  s.ax, s.ay, s.az);
    out << buf;
  }
}

signal::AccelSeries read_raw_csv(std::istream& in, std::string_view source,
                                 std::optional<double> fs) {
  const CsvTable t = parse_csv(in, source);
  const std::size_t ct = t.column("t_s");
  const std::size_t cx = t.column("ax_g");
  const std::size_t cy = t.column("ay_g");
  const std::size_t cz = t.column("az_g");

  signal::AccelSeries series;
  const std::size_t n = t.rows.size();
  if (!fs) {
    if (n < 2) throw Error(Errc::ParseError, std::string(source) + ": cannot infer fs from < 2 rows");
    const double dt = cell_double(t, 1, ct, source) - cell_double(t, 0, ct, source);
    if (!(dt > 0.0)) throw Error(Errc::ParseError, where(source, t.line_numbers[1]) + ": t_s not increasing");
    // Round to the nearest 1e-6 Hz so 0.01 s spacing gives exactly 100 Hz.
    fs = std::round(1.0 / dt * 1e6) / 1e6;
  }
  if (!(*fs > 0.0)) throw Error(Errc::InvalidConfig, "fs must be positive");
  series.fs = *fs;
  series.samples.reserve(n);
  const double t0 = n > 0 ? cell_double(t, 0, ct, source) : 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ti = cell_double(t, i, ct, source);
    const double expected = t0 + static_cast<double>(i) / *fs;
    if (std::abs(ti - expected) > 1e-6) {
      throw Error(Errc::ParseError, where(source, t.line_numbers[i]) + ": t_s=" + t.rows[i][ct] +
                                        " breaks 1/fs spacing");
    }
    signal::AccelSample s{cell_double(t, i, cx, source), cell_double(t, i, cy, source),
                          cell_double(t, i, cz, source)};
    if (std::abs(s.ax) > signal::kFullScaleG || std::abs(s.ay) > signal::kFullScaleG ||
        std::abs(s.az) > signal::kFullScaleG) {
      throw Error(Errc::ParseError, where(source, t.line_numbers[i]) + ": sample beyond +/-8 g");
    }
    series.samples.push_back(s);
  }
  return series;
}

void write_windows_csv(std::ostream& out, const std::vector<signal::WindowResult>& rows) {
  out << "# " << kWindowsSchema << "\n" << "window_start_s,resp_freq_bps,activity_g,mode\n";
  for (const auto& r : rows) {
    put(out, "%.3f,", r.window_start);
    put(out, "%.6f,", r.resp_freq);
    put(out, "%.9f,", r.activity);
    out << signal::mode_name(r.mode) << "\n";
  }
}

std::vector<signal::WindowResult> read_windows_csv(std::istream& in, std::string_view source) {
  const CsvTable t = parse_csv(in, source);
  const std::size_t cs = t.column("window_start_s");
  const std::size_t cr = t.column("resp_freq_bps");
  const std::size_t ca = t.column("activity_g");
  const std::size_t cm = t.column("mode");
  std::vector<signal::WindowResult> out;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    signal::WindowResult r;
    r.window_start = cell_double(t, i, cs, source);
    r.resp_freq = cell_double(t, i, cr, source);
    r.activity = cell_double(t, i, ca, source);
    const auto& mode = t.rows[i][cm];
    if (mode == "exact") {
      r.mode = signal::Mode::Exact;
    } else if (mode == "onboard") {
      r.mode = signal::Mode::Onboard;
    } else {
      throw Error(Errc::ParseError, where(source, t.line_numbers[i]) + ": unknown mode '" + mode + "'");
    }
    out.push_back(r);
  }
  return out;
}

void write_truth_csv(std::ostream& out, const synth::GroundTruth& truth) {
  out << "# " << kTruthSchema << "\n" << "frame_start_s,breath_freq_hz,jerk_energy_g\n";
  for (const auto& f : truth.frames) {
    put(out, "%.3f,", f.start_s);
    put(out, "%.6f,", f.breath_freq);
    put(out, "%.9f\n", f.jerk_energy);
  }
}

void write_step_files(const std::filesystem::path& path, const analysis::SpeedStep& step) {
  std::ofstream csv(path, std::ios::binary);
  if (!csv) throw Error(Errc::Io, "cannot write " + path.string());
  csv << "# " << kStepSchema << "\n" << "t_s,o2_sat_pct\n";
  for (const auto& r : step.o2) {
    put(csv, "%.3f,", r.t_s);
    put(csv, "%.6f\n", r.saturation_pct);
  }
  auto meta_path = path;
  meta_path += ".meta";
  std::ofstream meta(meta_path, std::ios::binary);
  if (!meta) throw Error(Errc::Io, "cannot write " + meta_path.string());
  KeyValues kv;
  auto num = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  kv["speed_bls"] = num(step.speed_bls);
  kv["temp_c"] = num(step.temp_c);
  kv["salinity_psu"] = num(step.salinity_psu);
  kv["chamber_volume_l"] = num(step.chamber_volume_l);
  kv["fish_mass_kg"] = num(step.fish_mass_kg);
  meta << format_key_values(kv);
}

analysis::SpeedStep read_step_files(const std::filesystem::path& path) {
  std::ifstream csv(path, std::ios::binary);
  if (!csv) throw Error(Errc::Io, "cannot open " + path.string());
  const CsvTable t = parse_csv(csv, path.string());
  const std::size_t ct = t.column("t_s");
  const std::size_t co = t.column("o2_sat_pct");

  auto meta_path = path;
  meta_path += ".meta";
  const KeyValues kv = read_key_values(meta_path);
  auto need = [&](const char* key) {
    const auto it = kv.find(key);
    if (it == kv.end()) {
      throw Error(Errc::SchemaMismatch, meta_path.string() + ": missing key '" + key + "'");
    }
    return parse_double(it->second, key);
  };

  analysis::SpeedStep step;
  step.speed_bls = need("speed_bls");
  step.temp_c = need("temp_c");
  step.salinity_psu = need("salinity_psu");
  step.chamber_volume_l = need("chamber_volume_l");
  step.fish_mass_kg = need("fish_mass_kg");
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    step.o2.push_back({cell_double(t, i, ct, path.string()), cell_double(t, i, co, path.string())});
  }
  return step;
}

}  // namespace fishbit::io
