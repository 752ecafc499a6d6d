#include "fishbit/device/log_codec.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "fishbit/error.hpp"

namespace fishbit::device {

namespace {

constexpr std::array<std::uint8_t, 4> kMagic = {'A', 'E', 'F', 'B'};

class Writer {
 public:
  explicit Writer(std::vector<std::uint8_t>& out) : out_(out) {}

  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) {
    out_.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out_.push_back(static_cast<std::uint8_t>(v >> 8));
  }
  void u32(std::uint32_t v) {
    for (int shift = 0; shift < 32; shift += 8) {
      out_.push_back(static_cast<std::uint8_t>((v >> shift) & 0xFF));
    }
  }
  void i16(std::int16_t v) { u16(static_cast<std::uint16_t>(v)); }

 private:
  std::vector<std::uint8_t>& out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::size_t remaining() const noexcept { return in_.size() - pos_; }
  std::uint8_t u8() { return in_[pos_++]; }
  std::uint16_t u16() {
    const auto v = static_cast<std::uint16_t>(in_[pos_] | (in_[pos_ + 1] << 8));
    pos_ += 2;
    return v;
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }
  std::int16_t i16() { return static_cast<std::int16_t>(u16()); }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

std::int16_t to_counts(double g, double counts_per_g) {
  const double limit = signal::kFullScaleG * counts_per_g;
  const double c = std::round(g * counts_per_g);
  if (!std::isfinite(c) || std::abs(c) > limit) {
    throw Error(Errc::OutOfRange, "acceleration " + std::to_string(g) + " g exceeds +/-8 g");
  }
  return static_cast<std::int16_t>(c);
}

}  // namespace

std::size_t record_bytes(AcquisitionMode mode) noexcept {
  return mode == AcquisitionMode::Raw ? kRawRecordBytes : kProcessedRecordBytes;
}

std::vector<std::uint8_t> encode_log(std::span<const LogRecord> records, AcquisitionMode mode,
                                     const DeviceConfig& cfg) {
  const std::size_t want = mode == AcquisitionMode::Raw ? 0 : 1;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].index() != want) {
      throw Error(Errc::MixedModes, "record " + std::to_string(i) + " is not a " +
                                        acquisition_mode_name(mode) + " record");
    }
  }
  if (records.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(Errc::OutOfRange, "too many records for a u32 count");
  }

  std::vector<std::uint8_t> out;
  out.reserve(kHeaderBytes + records.size() * record_bytes(mode));
  Writer w(out);
  for (auto b : kMagic) w.u8(b);
  w.u8(kLogVersion);
  w.u8(static_cast<std::uint8_t>(mode));
  w.u16(cfg.fs);
  w.u16(cfg.counts_per_g);
  w.u32(static_cast<std::uint32_t>(records.size()));
  for (const auto& rec : records) {
    if (const auto* raw = std::get_if<RawRecord>(&rec)) {
      w.i16(raw->ax);
      w.i16(raw->ay);
      w.i16(raw->az);
    } else {
      const auto& p = std::get<ProcessedRecord>(rec);
      w.u32(p.window_start_s);
      w.u16(p.resp_centihz);
      w.u32(p.activity_micro_g);
    }
  }
  return out;
}

DecodedLog decode_log(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kMagic.size()) {
    throw Error(Errc::CorruptRecord, "stream shorter than the magic number");
  }
  for (std::size_t i = 0; i < kMagic.size(); ++i) {
    if (bytes[i] != kMagic[i]) throw Error(Errc::BadMagic, "stream does not start with AEFB");
  }
  if (bytes.size() < kHeaderBytes) {
    throw Error(Errc::CorruptRecord, "header truncated at " + std::to_string(bytes.size()) +
                                         " bytes");
  }

  Reader r(bytes.subspan(kMagic.size()));
  DecodedLog log;
  log.header.version = r.u8();
  if (log.header.version != kLogVersion) {
    throw Error(Errc::UnsupportedVersion, "log version " + std::to_string(log.header.version));
  }
  const std::uint8_t mode = r.u8();
  if (mode > 1) throw Error(Errc::CorruptRecord, "unknown mode byte " + std::to_string(mode));
  log.header.mode = static_cast<AcquisitionMode>(mode);
  log.header.fs = r.u16();
  log.header.counts_per_g = r.u16();
  log.header.record_count = r.u32();

  const std::size_t size = record_bytes(log.header.mode);
  const std::size_t available = r.remaining() / size;
  const std::size_t declared = log.header.record_count;
  if (available > declared || (available == declared && r.remaining() % size != 0)) {
    throw Error(Errc::CorruptRecord, "trailing bytes after " + std::to_string(declared) +
                                         " records");
  }
  const std::size_t complete = std::min(available, declared);
  log.truncated = complete < declared;

  const double count_limit = signal::kFullScaleG * log.header.counts_per_g;
  log.records.reserve(complete);
  for (std::size_t i = 0; i < complete; ++i) {
    if (log.header.mode == AcquisitionMode::Raw) {
      RawRecord rec{r.i16(), r.i16(), r.i16()};
      if (std::abs(rec.ax) > count_limit || std::abs(rec.ay) > count_limit ||
          std::abs(rec.az) > count_limit) {
        throw Error(Errc::CorruptRecord, "raw record " + std::to_string(i) +
                                             " exceeds sensor full scale");
      }
      log.records.emplace_back(rec);
    } else {
      ProcessedRecord rec;
      rec.window_start_s = r.u32();
      rec.resp_centihz = r.u16();
      rec.activity_micro_g = r.u32();
      if (rec.resp_centihz > kMaxRespCentiHz) {
        throw Error(Errc::CorruptRecord, "processed record " + std::to_string(i) +
                                             " has resp_centihz above 800");
      }
      log.records.emplace_back(rec);
    }
  }
  return log;
}

RawRecord quantize_sample(const signal::AccelSample& sample, const DeviceConfig& cfg) {
  const double k = cfg.counts_per_g;
  return {to_counts(sample.ax, k), to_counts(sample.ay, k), to_counts(sample.az, k)};
}

signal::AccelSample dequantize_sample(const RawRecord& record, const DeviceConfig& cfg) {
  const double k = cfg.counts_per_g;
  return {record.ax / k, record.ay / k, record.az / k};
}

ProcessedRecord quantize_window(const signal::WindowResult& result) {
  const double centihz = std::round(result.resp_freq * 100.0);
  const double micro_g = std::round(result.activity * 1e6);
  const double start = std::round(result.window_start);
  if (!(centihz >= 0.0 && centihz <= kMaxRespCentiHz)) {
    throw Error(Errc::OutOfRange, "resp_freq " + std::to_string(result.resp_freq) +
                                      " outside [0, 8] breaths/s");
  }
  if (!(micro_g >= 0.0 && micro_g <= std::numeric_limits<std::uint32_t>::max())) {
    throw Error(Errc::OutOfRange, "activity " + std::to_string(result.activity) +
                                      " g outside the u32 micro-g range");
  }
  if (!(start >= 0.0 && start <= std::numeric_limits<std::uint32_t>::max())) {
    throw Error(Errc::OutOfRange, "window_start outside the u32 seconds range");
  }
  return {static_cast<std::uint32_t>(start), static_cast<std::uint16_t>(centihz),
          static_cast<std::uint32_t>(micro_g)};
}

signal::WindowResult dequantize_window(const ProcessedRecord& record) {
  signal::WindowResult out;
  out.resp_freq = record.resp_centihz / 100.0;
  out.activity = record.activity_micro_g / 1e6;
  out.mode = signal::Mode::Onboard;
  out.window_start = record.window_start_s;
  return out;
}

}  // namespace fishbit::device
