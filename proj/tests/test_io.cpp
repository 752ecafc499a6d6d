#include <filesystem>
#include <sstream>
#include <string>

#include "doctest.h"
#include "fishbit/error.hpp"
#include "fishbit/io/csv.hpp"
#include "fishbit/io/keyvalue.hpp"
#include "fishbit/io/preset_file.hpp"
#include "fishbit/synth/generator.hpp"
#include "fishbit/synth/respirometry.hpp"

using namespace fishbit;
using namespace fishbit::io;

namespace {

Errc error_of(auto&& fn, std::string* message = nullptr) {
  try {
    fn();
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::Io;
}

}  // namespace

TEST_CASE("key-value documents") {
  const auto kv = parse_key_values("# comment\n a = 1 \n\nb=two words\n", "cfg");
  CHECK(kv.size() == 2);
  CHECK(kv.at("a") == "1");
  CHECK(kv.at("b") == "two words");
  CHECK(format_key_values(kv) == "a = 1\nb = two words\n");

  std::string msg;
  CHECK(error_of([] { parse_key_values("a = 1\nnonsense\n", "cfg"); }, &msg) == Errc::ParseError);
  CHECK(msg.find("cfg:2") != std::string::npos);
  CHECK(error_of([] { parse_key_values("a = 1\na = 2\n", "cfg"); }) == Errc::ParseError);

  CHECK(parse_double(" 2.5 ", "x") == 2.5);
  CHECK(error_of([] { parse_double("2.5x", "x"); }) == Errc::ParseError);
  CHECK(parse_integer("42", "n") == 42);
  CHECK(error_of([] { parse_integer("4.2", "n"); }) == Errc::ParseError);
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("raw CSV round trip") {
  const auto data = synth::generate(synth::species_preset("sea_bream"), 3.0, 100.0, 1);
  std::stringstream ss;
  write_raw_csv(ss, data.series);
  const std::string text = ss.str();
  CHECK(text.rfind("# fishbit.raw/1\nt_s,ax_g,ay_g,az_g\n", 0) == 0);
  const auto back = read_raw_csv(ss, "mem");
  CHECK(back.fs == 100.0);
  REQUIRE(back.size() == data.series.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back.samples[i].az == doctest::Approx(data.series.samples[i].az).epsilon(1e-6));
  }
}

TEST_CASE("raw CSV errors carry line numbers and column names") {
  std::string msg;
  std::istringstream gap("# fishbit.raw/1\nt_s,ax_g,ay_g,az_g\n0,0,0,1\n0.01,0,0,1\n0.03,0,0,1\n");
  CHECK(error_of([&] { read_raw_csv(gap, "gap.csv"); }, &msg) == Errc::ParseError);
  CHECK(msg.find("gap.csv:5") != std::string::npos);

  std::istringstream missing("t_s,ax_g,az_g\n0,0,1\n0.01,0,1\n");
  CHECK(error_of([&] { read_raw_csv(missing, "m.csv"); }, &msg) == Errc::SchemaMismatch);
  CHECK(msg.find("ay_g") != std::string::npos);

  std::istringstream bad("t_s,ax_g,ay_g,az_g\n0,0,0,1\n0.01,zz,0,1\n");
  CHECK(error_of([&] { read_raw_csv(bad, "b.csv"); }, &msg) == Errc::ParseError);
  CHECK(msg.find("b.csv:3") != std::string::npos);

  std::istringstream big("t_s,ax_g,ay_g,az_g\n0,0,0,1\n0.01,9,0,1\n");
  CHECK(error_of([&] { read_raw_csv(big, "g.csv"); }) == Errc::ParseError);
}

TEST_CASE("windows CSV round trip") {
  const std::vector<signal::WindowResult> rows{{2.3, 0.0012345678, signal::Mode::Exact, 0.0},
                                               {1.953125, 0.5, signal::Mode::Onboard, 122.88}};
  std::stringstream ss;
  write_windows_csv(ss, rows);
  CHECK(ss.str().find("window_start_s,resp_freq_bps,activity_g,mode") != std::string::npos);
  const auto back = read_windows_csv(ss, "w.csv");
  REQUIRE(back.size() == 2);
  CHECK(back[1].mode == signal::Mode::Onboard);
  CHECK(back[1].window_start == doctest::Approx(122.88));
  CHECK(back[0].activity == doctest::Approx(0.0012345678).epsilon(1e-8));
}

TEST_CASE("step files with sidecar") {
  const auto dir = std::filesystem::temp_directory_path() / "fishbit_io_test";
  std::filesystem::create_directories(dir);
  synth::StepTraceSpec spec;
  spec.speed_bls = 2.5;
  const auto step = synth::respirometry_step(spec);
  const auto path = dir / "step.csv";
  write_step_files(path, step);
  const auto back = read_step_files(path);
  CHECK(back.speed_bls == 2.5);
  CHECK(back.o2.size() == step.o2.size());
  CHECK(back.chamber_volume_l == step.chamber_volume_l);

  std::filesystem::remove(dir / "step.csv.meta");
  CHECK(error_of([&] { read_step_files(path); }) == Errc::Io);
  std::filesystem::remove_all(dir);
}

TEST_CASE("preset files") {
  const auto bream = load_preset("sea_bream");
  const auto text = preset_to_text(bream);
  const auto again = apply_preset_overrides(synth::species_preset("sea_bass"),
                                            parse_key_values(text, "preset"));
  CHECK(preset_to_text(again) == text);

  io::KeyValues kv{{"breathing.base_freq", "2.1"}};
  CHECK(apply_preset_overrides(bream, kv).breathing.base_freq == 2.1);
  kv = {{"breathing.unknown", "1"}};
  CHECK(error_of([&] { apply_preset_overrides(bream, kv); }) == Errc::InvalidPreset);
  kv = {{"swim.amp_a", "-1"}};
  CHECK(error_of([&] { apply_preset_overrides(bream, kv); }) == Errc::InvalidPreset);
  CHECK(error_of([] { load_preset("no_such_fish"); }) == Errc::InvalidPreset);
}
