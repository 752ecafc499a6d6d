// fishbit command-line tool: synth, protocol, process, simulate, analyze.
//
// Exit codes: 0 success, 1 runtime or data error, 2 usage error.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fishbit/analysis/agreement.hpp"
#include "fishbit/analysis/pls_da.hpp"
#include "fishbit/analysis/respirometry.hpp"
#include "fishbit/device/config.hpp"
#include "fishbit/device/log_codec.hpp"
#include "fishbit/device/simulator.hpp"
#include "fishbit/error.hpp"
#include "fishbit/io/csv.hpp"
#include "fishbit/io/keyvalue.hpp"
#include "fishbit/io/preset_file.hpp"
#include "fishbit/signal/batch.hpp"
#include "fishbit/synth/generator.hpp"
#include "fishbit/synth/respirometry.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace fishbit;

namespace {

constexpr const char* kToolVersion = "0.1.0";
constexpr const char* kConfigEnv = "FISHBIT_CONFIG";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v, const char* spec = "%.9g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// Every tunable of a command lives here as text. Flags fill it first, then a
// config file (which wins), and the resolved map is what gets hashed.
class Settings {
 public:
  void option(CLI::App* app, const std::string& key, std::string fallback, const std::string& help) {
    values_[key] = std::move(fallback);
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    app->add_option(flag, values_[key], help)->capture_default_str();
  }

  void apply_config(const std::string& path) {
    if (path.empty()) return;
    const io::KeyValues kv = io::read_key_values(path);
    for (const auto& [key, value] : kv) {
      auto it = values_.find(key);
      if (it == values_.end()) throw UsageError(path + ": unknown setting '" + key + "'");
      it->second = value;
    }
    config_path_ = path;
  }

  const std::string& str(const std::string& key) const { return values_.at(key); }
  bool empty(const std::string& key) const { return values_.at(key).empty(); }

  double num(const std::string& key) const {
    try {
      return io::parse_double(values_.at(key), key);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }

  std::uint64_t seed() const {
    try {
      const long long v = io::parse_integer(values_.at("seed"), "seed");
      if (v < 0) throw UsageError("seed must be non-negative");
      return static_cast<std::uint64_t>(v);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }

  bool flag(const std::string& key) const {
    const auto& v = values_.at(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw UsageError(key + ": expected true or false, got '" + v + "'");
  }

  std::string text() const { return io::format_key_values(values_); }
  const std::string& config_path() const { return config_path_; }

 private:
  std::map<std::string, std::string> values_;
  std::string config_path_;
};

std::string file_hash(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return io::fnv1a_hex(ss.str());
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot write " + path.string());
  return out;
}

// `out` with its extension swapped for `suffix`.
fs::path sibling(const fs::path& out, const std::string& suffix) {
  fs::path p = out;
  p.replace_extension();
  p += suffix;
  return p;
}

struct Manifest {
  std::string command;
  const Settings* settings = nullptr;
  std::vector<fs::path> inputs;
  std::vector<fs::path> outputs;
  bool seeded = false;

  void write(const fs::path& primary) const {
    json m;
    m["command"] = command;
    m["tool_version"] = kToolVersion;
    m["config_hash"] = io::fnv1a_hex(settings->text());
    json cfg = json::object();
    {
      const auto kv = io::parse_key_values(settings->text(), "settings");
      for (const auto& [k, v] : kv) cfg[k] = v;
    }
    m["settings"] = cfg;
    if (!settings->config_path().empty()) m["config_file"] = settings->config_path();
    if (seeded) m["seed"] = settings->seed();
    json in = json::array();
    for (const auto& p : inputs) in.push_back({{"path", p.generic_string()}, {"fnv1a", file_hash(p)}});
    m["inputs"] = in;
    json out = json::array();
    for (const auto& p : outputs) out.push_back({{"path", p.generic_string()}, {"fnv1a", file_hash(p)}});
    m["outputs"] = out;
    auto path = primary;
    path += ".manifest.json";
    open_out(path) << m.dump(2) << "\n";
  }
};

std::vector<double> parse_speeds(const std::string& text) {
  std::vector<double> v;
  try {
    if (text.find(':') != std::string::npos) {
      std::vector<std::string> parts;
      std::stringstream ss(text);
      for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
      if (parts.size() != 3) throw UsageError("speeds range must be from:to:step");
      const double from = io::parse_double(parts[0], "speeds");
      const double to = io::parse_double(parts[1], "speeds");
      const double step = io::parse_double(parts[2], "speeds");
      if (!(step > 0.0)) throw UsageError("speeds step must be positive");
      const auto n = static_cast<long>(std::floor((to - from) / step + 1e-9));
      for (long i = 0; i <= n; ++i) v.push_back(from + static_cast<double>(i) * step);
    } else {
      std::stringstream ss(text);
      for (std::string p; std::getline(ss, p, ',');) v.push_back(io::parse_double(p, "speeds"));
    }
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (v.empty()) throw UsageError("no speeds given");
  return v;
}

signal::Mode parse_mode(const std::string& s) {
  if (s == "exact") return signal::Mode::Exact;
  if (s == "onboard") return signal::Mode::Onboard;
  throw UsageError("mode must be exact or onboard, got '" + s + "'");
}

synth::SpeciesPreset preset_with_speed(const Settings& s) {
  auto preset = io::load_preset(s.str("preset"));
  if (!s.empty("speed")) preset.swim.speed_bls = s.num("speed");
  synth::validate(preset);
  return preset;
}

signal::AccelSeries read_raw_file(const fs::path& path, const Settings& s) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  std::optional<double> rate;
  if (!s.empty("fs")) rate = s.num("fs");
  return io::read_raw_csv(in, path.string(), rate);
}

// ---- synth ----------------------------------------------------------------

struct SynthArgs {
  Settings s;
  std::string out, truth;
};

int run_synth(const SynthArgs& a) {
  const auto preset = preset_with_speed(a.s);
  const double duration = a.s.num("duration");
  const double rate = a.s.num("fs");
  if (!(duration > 0.0) || !(rate > 0.0)) throw UsageError("duration and fs must be positive");
  const auto data = synth::generate(preset, duration, rate, a.s.seed());

  const fs::path out = a.out;
  const fs::path truth = a.truth.empty() ? sibling(out, ".truth.csv") : fs::path(a.truth);
  {
    auto f = open_out(out);
    io::write_raw_csv(f, data.series);
  }
  {
    auto f = open_out(truth);
    io::write_truth_csv(f, data.truth);
  }
  Manifest m{"synth", &a.s, {}, {out, truth}, true};
  m.write(out);
  std::cerr << "synth: " << data.series.size() << " samples (" << fmt(duration) << " s at "
            << fmt(rate) << " Hz) -> " << out.string() << "\n";
  return 0;
}

// ---- protocol -------------------------------------------------------------

struct ProtocolArgs {
  Settings s;
  std::string outdir;
};

int run_protocol(const ProtocolArgs& a) {
  const auto preset = io::load_preset(a.s.str("preset"));
  const auto speeds = parse_speeds(a.s.str("speeds"));
  const double step_seconds = a.s.num("step_seconds");
  const double rate = a.s.num("fs");
  synth::FatigueModel fatigue;
  fatigue.enabled = a.s.flag("fatigue");
  fatigue.breathing_knee_bls = a.s.num("breathing_knee");
  fatigue.activity_knee_bls = a.s.num("activity_knee");

  const auto steps = synth::swim_protocol(preset, speeds, step_seconds, rate, a.s.seed(), fatigue);

  synth::Mo2Curve curve;
  curve.knee_bls = a.s.num("mo2_knee");
  synth::StepTraceSpec base;
  base.noise_pct = a.s.num("o2_noise_pct");
  const auto o2 = synth::respirometry_protocol(speeds, curve, base, a.s.seed());

  const fs::path dir = a.outdir;
  fs::create_directories(dir);
  Manifest m{"protocol", &a.s, {}, {}, true};
  for (std::size_t i = 0; i < steps.size(); ++i) {
    char stem[32];
    std::snprintf(stem, sizeof stem, "step_%02zu", i + 1);
    const fs::path raw = dir / (std::string(stem) + "_raw.csv");
    const fs::path truth = dir / (std::string(stem) + "_truth.csv");
    const fs::path trace = dir / (std::string(stem) + "_o2.csv");
    {
      auto f = open_out(raw);
      io::write_raw_csv(f, steps[i].series);
    }
    {
      auto f = open_out(truth);
      io::write_truth_csv(f, steps[i].truth);
    }
    io::write_step_files(trace, o2[i]);
    auto meta = trace;
    meta += ".meta";
    m.outputs.insert(m.outputs.end(), {raw, truth, trace, meta});
  }
  m.write(dir / "protocol");
  std::cerr << "protocol: " << steps.size() << " steps of " << fmt(step_seconds) << " s -> "
            << dir.string() << "\n";
  return 0;
}

// ---- process --------------------------------------------------------------

struct ProcessArgs {
  Settings s;
  std::string input, out;
};

int run_process(const ProcessArgs& a) {
  const signal::Mode mode = parse_mode(a.s.str("mode"));
  const auto series = read_raw_file(a.input, a.s);
  auto cfg = signal::EstimatorConfig::for_mode(mode, series.fs);
  cfg.band_low = a.s.num("band_low");
  cfg.band_high = a.s.num("band_high");
  cfg.percentile = a.s.num("percentile");
  cfg.warmup_seconds = a.s.num("warmup_seconds");
  const double frames = a.s.num("frames_per_window");
  if (!(frames >= 1.0) || frames != std::floor(frames)) {
    throw UsageError("frames_per_window must be a positive integer");
  }
  cfg.frames_per_window = static_cast<int>(frames);
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }

  const auto rows = signal::process_series(series, cfg, mode);
  const fs::path out = a.out;
  {
    auto f = open_out(out);
    io::write_windows_csv(f, rows);
  }
  Manifest m{"process", &a.s, {a.input}, {out}, false};
  m.write(out);

  const std::size_t used = rows.size() * cfg.window_samples();
  const std::size_t tail = series.size() - used;
  if (rows.empty()) {
    std::cerr << "warning: input holds " << fmt(series.duration()) << " s, shorter than one "
              << fmt(cfg.window_seconds()) << " s window; wrote an empty table\n";
  } else if (tail > 0) {
    std::cerr << "process: incomplete tail of " << tail << " samples (" << fmt(tail / series.fs)
              << " s) not processed\n";
  }
  std::cerr << "process: " << rows.size() << " " << signal::mode_name(mode) << " windows -> "
            << out.string() << "\n";
  return 0;
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
  Settings s;
  std::string input, out;
};

device::AcquisitionMode parse_acquisition(const std::string& v) {
  if (v == "raw") return device::AcquisitionMode::Raw;
  if (v == "processed") return device::AcquisitionMode::Processed;
  throw UsageError("acquisition must be raw or processed, got '" + v + "'");
}

int run_simulate(const SimulateArgs& a) {
  device::ScheduleProgram program;
  try {
    program = device::schedule_preset(a.s.str("schedule"));
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (!a.s.empty("acquisition")) program.mode = parse_acquisition(a.s.str("acquisition"));
  if (!a.s.empty("window")) program.window_seconds = a.s.num("window");
  if (!a.s.empty("period")) program.period_seconds = a.s.num("period");
  if (!a.s.empty("duration")) program.total_duration_seconds = a.s.num("duration");

  device::DeviceConfig cfg;
  const double rate = a.s.empty("fs") ? 100.0 : a.s.num("fs");
  if (!(rate >= 1.0 && rate <= 65535.0) || rate != std::floor(rate)) {
    throw UsageError("device fs must be an integer in [1, 65535]");
  }
  cfg.fs = static_cast<std::uint16_t>(rate);
  cfg.battery_active_seconds = a.s.num("battery_seconds");

  Manifest m{"simulate", &a.s, {}, {}, a.input.empty()};
  device::SampleSource source;
  if (!a.input.empty()) {
    auto series = read_raw_file(a.input, a.s);
    if (series.fs != cfg.fs) throw Error(Errc::InvalidConfig, "input fs differs from device fs");
    source = device::series_source(std::move(series));
    m.inputs.push_back(a.input);
  } else {
    source = synth::synth_source(preset_with_speed(a.s), cfg.fs, a.s.seed());
  }

  const auto state = device::run_schedule(program, source, cfg, {.strict = !a.s.flag("lenient")});
  const auto bytes = device::encode_log(state.stored_records, program.mode, cfg);

  const fs::path out = a.out;
  {
    auto f = open_out(out);
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  }
  const fs::path report = sibling(out, ".state.json");
  {
    json r;
    r["status"] = device::device_status_name(state.status);
    r["acquisition"] = device::acquisition_mode_name(program.mode);
    r["window_seconds"] = program.window_seconds;
    r["period_seconds"] = program.period_seconds;
    r["total_duration_seconds"] = program.total_duration_seconds;
    r["scheduled_windows"] = program.window_count();
    r["windows_completed"] = state.windows_completed;
    r["records"] = state.stored_records.size();
    r["elapsed_seconds"] = state.elapsed;
    r["battery_used_seconds"] = state.battery_used;
    r["flash_used_bytes"] = state.flash_used;
    r["log_bytes"] = bytes.size();
    r["warnings"] = state.warnings;
    open_out(report) << r.dump(2) << "\n";
  }
  m.outputs = {out, report};
  m.write(out);

  for (const auto& w : state.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << "status=" << device::device_status_name(state.status)
            << " records=" << state.stored_records.size() << " elapsed_s=" << fmt(state.elapsed)
            << " battery_used_s=" << fmt(state.battery_used) << " log_bytes=" << bytes.size()
            << "\n";
  return 0;
}

// ---- analyze --------------------------------------------------------------

struct AnalyzeArgs {
  Settings s;
  std::vector<std::string> steps, windows, onboard;
  std::string out;
};

std::vector<signal::WindowResult> read_windows_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  return io::read_windows_csv(in, path.string());
}

json fit_json(const analysis::Agreement& g) {
  return {{"pearson_r", g.pearson_r}, {"slope", g.slope}, {"intercept", g.intercept}, {"r2", g.r2}};
}

int run_analyze(const AnalyzeArgs& a) {
  if (a.steps.size() != a.windows.size()) {
    throw UsageError("--steps and --windows need the same number of files");
  }
  if (!a.onboard.empty() && a.onboard.size() != a.steps.size()) {
    throw UsageError("--onboard-windows needs one file per step");
  }
  Manifest m{"analyze", &a.s, {}, {}, false};

  std::vector<analysis::SpeedStep> steps;
  for (const auto& p : a.steps) {
    steps.push_back(io::read_step_files(p));
    m.inputs.push_back(p);
    m.inputs.push_back(fs::path(p + ".meta"));
  }
  const auto run = analysis::evaluate_run(steps);
  const std::size_t n = steps.size();

  std::vector<std::vector<signal::WindowResult>> exact(n), onboard(n);
  std::vector<double> speeds(n), resp(n), act(n);
  for (std::size_t i = 0; i < n; ++i) {
    speeds[i] = run.steps[i].speed_bls;
    exact[i] = read_windows_file(a.windows[i]);
    m.inputs.push_back(a.windows[i]);
    if (exact[i].empty()) {
      throw Error(Errc::InsufficientData, a.windows[i] + ": no windows for step at " +
                                              fmt(speeds[i]) + " BL/s");
    }
    for (const auto& w : exact[i]) {
      resp[i] += w.resp_freq;
      act[i] += w.activity;
    }
    resp[i] /= static_cast<double>(exact[i].size());
    act[i] /= static_cast<double>(exact[i].size());
    if (!a.onboard.empty()) {
      onboard[i] = read_windows_file(a.onboard[i]);
      m.inputs.push_back(a.onboard[i]);
    }
  }
  const auto peaks = analysis::detect_mmr_mrf(run, resp, act);

  json report;
  json jsteps = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    jsteps.push_back({{"speed_bls", speeds[i]},
                      {"mo2_mg_kg_h", run.mo2[i]},
                      {"fit_r2", run.fit_r2[i]},
                      {"non_decreasing", static_cast<bool>(run.flagged[i])},
                      {"resp_freq_bps", resp[i]},
                      {"activity_g", act[i]},
                      {"windows", exact[i].size()}});
    if (run.flagged[i]) {
      std::cerr << "warning: O2 did not decline at " << fmt(speeds[i])
                << " BL/s; check the chamber seal\n";
    }
  }
  report["steps"] = jsteps;
  report["peaks"] = {
      {"mmr", {{"speed_bls", peaks.mmr.speed}, {"mo2_mg_kg_h", peaks.mmr.value}}},
      {"mrf", {{"speed_bls", peaks.mrf.speed}, {"resp_freq_bps", peaks.mrf.value}}},
      {"max_activity", {{"speed_bls", peaks.max_activity.speed}, {"activity_g", peaks.max_activity.value}}}};

  const fs::path out = a.out;
  const fs::path series_csv = sibling(out, ".series.csv");
  {
    auto f = open_out(series_csv);
    f << "# fishbit.series/1\nspeed_bls,quantity,value,unit\n";
    for (std::size_t i = 0; i < n; ++i) {
      f << fmt(speeds[i]) << ",mo2," << fmt(run.mo2[i]) << ",mgO2/kg/h\n";
      f << fmt(speeds[i]) << ",fit_r2," << fmt(run.fit_r2[i]) << ",1\n";
      f << fmt(speeds[i]) << ",resp_freq," << fmt(resp[i]) << ",breaths/s\n";
      f << fmt(speeds[i]) << ",activity," << fmt(act[i]) << ",g\n";
    }
  }
  m.outputs.push_back(series_csv);

  if (!a.onboard.empty()) {
    std::vector<double> xr, yr, xa, ya;
    const fs::path pairs_csv = sibling(out, ".agreement.csv");
    auto f = open_out(pairs_csv);
    f << "# fishbit.agreement/1\nspeed_bls,window,quantity,exact,onboard,unit\n";
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k_max = std::min(exact[i].size(), onboard[i].size());
      for (std::size_t k = 0; k < k_max; ++k) {
        xr.push_back(exact[i][k].resp_freq);
        yr.push_back(onboard[i][k].resp_freq);
        xa.push_back(exact[i][k].activity);
        ya.push_back(onboard[i][k].activity);
        f << fmt(speeds[i]) << "," << k << ",resp_freq," << fmt(xr.back()) << "," << fmt(yr.back())
          << ",breaths/s\n";
        f << fmt(speeds[i]) << "," << k << ",activity," << fmt(xa.back()) << "," << fmt(ya.back())
          << ",g\n";
      }
    }
    f.close();
    m.outputs.push_back(pairs_csv);
    report["agreement"] = {{"pairs", xr.size()},
                           {"resp_freq", fit_json(analysis::agreement(xr, yr))},
                           {"activity", fit_json(analysis::agreement(xa, ya))}};
  }

  const double threshold =
      a.s.empty("anaerobic_above") ? peaks.mrf.speed : a.s.num("anaerobic_above");
  Eigen::MatrixXd x;
  std::vector<analysis::Condition> labels;
  std::vector<std::pair<double, double>> tags;  // speed, window_start
  {
    std::vector<std::array<double, 2>> rows;
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& w : exact[i]) {
        rows.push_back({w.resp_freq, w.activity});
        labels.push_back(speeds[i] > threshold ? analysis::Condition::Anaerobic
                                               : analysis::Condition::Aerobic);
        tags.emplace_back(speeds[i], w.window_start);
      }
    }
    x.resize(static_cast<Eigen::Index>(rows.size()), 2);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      x(static_cast<Eigen::Index>(r), 0) = rows[r][0];
      x(static_cast<Eigen::Index>(r), 1) = rows[r][1];
    }
  }
  json pls{{"anaerobic_above_bls", threshold}};
  try {
    const auto model = analysis::pls_da_fit(x, labels);
    const Eigen::MatrixXd scores = model.transform(x);
    std::size_t correct = 0;
    const fs::path scores_csv = sibling(out, ".pls_scores.csv");
    auto f = open_out(scores_csv);
    f << "# fishbit.pls_scores/1\nspeed_bls,window_start_s,condition,predicted,t1,t2\n";
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      const std::vector<double> row{x(r, 0), x(r, 1)};
      const auto c = analysis::classify(model, row);
      const auto truth = labels[static_cast<std::size_t>(r)];
      correct += c.label == truth;
      f << fmt(tags[static_cast<std::size_t>(r)].first) << ","
        << fmt(tags[static_cast<std::size_t>(r)].second) << "," << analysis::condition_name(truth)
        << "," << analysis::condition_name(c.label) << "," << fmt(scores(r, 0)) << ","
        << fmt(scores(r, 1)) << "\n";
    }
    f.close();
    m.outputs.push_back(scores_csv);
    pls["components"] = model.n_components;
    pls["samples"] = x.rows();
    pls["r2y"] = model.r2y;
    pls["r2y_cumulative"] = model.r2y_cumulative;
    pls["q2"] = model.q2;
    pls["training_accuracy"] = static_cast<double>(correct) / static_cast<double>(x.rows());
  } catch (const Error& e) {
    pls["error"] = e.what();
    std::cerr << "warning: PLS-DA skipped: " << e.what() << "\n";
  }
  report["pls_da"] = pls;

  open_out(out) << report.dump(2) << "\n";
  m.outputs.insert(m.outputs.begin(), out);
  m.write(out);
  std::cout << "mmr_speed=" << fmt(peaks.mmr.speed) << " mrf_speed=" << fmt(peaks.mrf.speed)
            << " max_activity_speed=" << fmt(peaks.max_activity.speed) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fishbit: accelerometer biologger processing and swim-tunnel analysis"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  app.add_option("--config", config_path,
                 std::string("key = value settings file; overrides flags (default: $") + kConfigEnv + ")");

  SynthArgs synth_args;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic raw accelerometer recording");
  synth_args.s.option(synth_cmd, "preset", "sea_bream", "Species preset name or preset file");
  synth_args.s.option(synth_cmd, "duration", "1476", "Recording length, s");
  synth_args.s.option(synth_cmd, "fs", "100", "Sampling rate, Hz");
  synth_args.s.option(synth_cmd, "seed", "0", "Random seed");
  synth_args.s.option(synth_cmd, "speed", "", "Swimming speed, BL/s (default: the preset's)");
  synth_cmd->add_option("--out,-o", synth_args.out, "Raw CSV output")->required();
  synth_cmd->add_option("--truth", synth_args.truth, "Ground-truth CSV (default: <out>.truth.csv)");

  ProtocolArgs protocol_args;
  auto* protocol_cmd =
      app.add_subcommand("protocol", "Generate a swim-tunnel protocol: raw and O2 files per step");
  protocol_args.s.option(protocol_cmd, "preset", "sea_bream", "Species preset name or preset file");
  protocol_args.s.option(protocol_cmd, "speeds", "1:6:0.5", "from:to:step or a comma list, BL/s");
  protocol_args.s.option(protocol_cmd, "step_seconds", "250", "Recording per speed step, s");
  protocol_args.s.option(protocol_cmd, "fs", "100", "Sampling rate, Hz");
  protocol_args.s.option(protocol_cmd, "seed", "0", "Random seed");
  protocol_args.s.option(protocol_cmd, "fatigue", "true", "Apply breathing and activity knees");
  protocol_args.s.option(protocol_cmd, "breathing_knee", "4", "Breathing peaks at this speed, BL/s");
  protocol_args.s.option(protocol_cmd, "activity_knee", "5", "Activity peaks at this speed, BL/s");
  protocol_args.s.option(protocol_cmd, "mo2_knee", "4.5", "MO2 peaks at this speed, BL/s");
  protocol_args.s.option(protocol_cmd, "o2_noise_pct", "0.1", "O2 probe noise, % saturation");
  protocol_cmd->add_option("--outdir", protocol_args.outdir, "Output directory")->required();

  ProcessArgs process_args;
  auto* process_cmd = app.add_subcommand("process", "Estimate respiratory frequency and activity per window");
  process_args.s.option(process_cmd, "mode", "exact", "exact (10 s frames) or onboard (1024-sample frames)");
  process_args.s.option(process_cmd, "fs", "", "Sampling rate, Hz (default: inferred from t_s)");
  process_args.s.option(process_cmd, "band_low", "0.5", "Band-pass low edge, Hz");
  process_args.s.option(process_cmd, "band_high", "8", "Band-pass high edge, Hz");
  process_args.s.option(process_cmd, "percentile", "0.25", "Percentile over frames");
  process_args.s.option(process_cmd, "frames_per_window", "12", "Frames per output window");
  process_args.s.option(process_cmd, "warmup_seconds", "2", "Filter settling time skipped in frame 0, s");
  process_cmd->add_option("--input,-i", process_args.input, "Raw CSV input")->required();
  process_cmd->add_option("--out,-o", process_args.out, "Windows CSV output")->required();

  SimulateArgs simulate_args;
  auto* simulate_cmd = app.add_subcommand("simulate", "Run a logger schedule and write its download log");
  simulate_args.s.option(simulate_cmd, "schedule", "continuous",
                         "burst-2d, week-1, weeks-3 or continuous");
  simulate_args.s.option(simulate_cmd, "acquisition", "", "raw or processed (overrides the schedule)");
  simulate_args.s.option(simulate_cmd, "window", "", "Window length, s (overrides the schedule)");
  simulate_args.s.option(simulate_cmd, "period", "", "Window period, s (overrides the schedule)");
  simulate_args.s.option(simulate_cmd, "duration", "", "Program length, s (overrides the schedule)");
  simulate_args.s.option(simulate_cmd, "battery_seconds", "21600", "Active-time battery budget, s");
  simulate_args.s.option(simulate_cmd, "fs", "", "Sampling rate, Hz (default 100)");
  simulate_args.s.option(simulate_cmd, "preset", "sea_bream", "Synthetic source preset");
  simulate_args.s.option(simulate_cmd, "speed", "", "Synthetic source speed, BL/s");
  simulate_args.s.option(simulate_cmd, "seed", "0", "Synthetic source seed");
  simulate_args.s.option(simulate_cmd, "lenient", "false", "Run infeasible raw programs until flash is full");
  simulate_cmd->add_option("--input,-i", simulate_args.input, "Raw CSV source (default: synthetic)");
  simulate_cmd->add_option("--out,-o", simulate_args.out, "Binary log output")->required();

  AnalyzeArgs analyze_args;
  auto* analyze_cmd = app.add_subcommand("analyze", "MO2, peak speeds, agreement and PLS-DA report");
  analyze_args.s.option(analyze_cmd, "anaerobic_above", "",
                        "Label windows above this speed anaerobic, BL/s (default: the MRF speed)");
  analyze_cmd->add_option("--steps", analyze_args.steps, "Respirometry step CSVs, ascending speed")
      ->required();
  analyze_cmd->add_option("--windows", analyze_args.windows, "Exact-mode windows CSV per step")
      ->required();
  analyze_cmd->add_option("--onboard-windows", analyze_args.onboard, "Onboard-mode windows CSV per step");
  analyze_cmd->add_option("--out,-o", analyze_args.out, "JSON report output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (config_path.empty()) {
    if (const char* env = std::getenv(kConfigEnv); env && *env) config_path = env;
  }

  try {
    if (*synth_cmd) {
      synth_args.s.apply_config(config_path);
      return run_synth(synth_args);
    }
    if (*protocol_cmd) {
      protocol_args.s.apply_config(config_path);
      return run_protocol(protocol_args);
    }
    if (*process_cmd) {
      process_args.s.apply_config(config_path);
      return run_process(process_args);
    }
    if (*simulate_cmd) {
      simulate_args.s.apply_config(config_path);
      return run_simulate(simulate_args);
    }
    if (*analyze_cmd) {
      analyze_args.s.apply_config(config_path);
      return run_analyze(analyze_args);
    }
  } catch (const UsageError& e) {
    std::cerr << "fishbit: usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "fishbit: error: " << e.what() << "\n";
    return e.code() == Errc::InvalidPreset ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "fishbit: error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
