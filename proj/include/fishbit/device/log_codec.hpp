#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "fishbit/device/config.hpp"
#include "fishbit/signal/types.hpp"

namespace fishbit::device {

// Download log layout (little-endian throughout):
//
//   offset  size  field
//   0       4     magic "AEFB"
//   4       1     version (1)
//   5       1     mode (0 raw, 1 processed)
//   6       2     fs (Hz)
//   8       2     counts_per_g
//   10      4     record_count
//   14      ...   records
//
// raw record:       int16 ax, int16 ay, int16 az                 (6 bytes)
// processed record: uint32 window_start_s, uint16 resp_centihz,
//                   uint32 activity_micro_g                      (10 bytes)

inline constexpr std::uint8_t kLogVersion = 1;
inline constexpr std::size_t kHeaderBytes = 14;
inline constexpr std::size_t kRawRecordBytes = 6;
inline constexpr std::size_t kProcessedRecordBytes = 10;
inline constexpr std::uint16_t kMaxRespCentiHz = 800;

struct RawRecord {
  std::int16_t ax = 0;
  std::int16_t ay = 0;
  std::int16_t az = 0;

  bool operator==(const RawRecord&) const = default;
};

struct ProcessedRecord {
  std::uint32_t window_start_s = 0;
  std::uint16_t resp_centihz = 0;
  std::uint32_t activity_micro_g = 0;

  bool operator==(const ProcessedRecord&) const = default;
};

using LogRecord = std::variant<RawRecord, ProcessedRecord>;

std::size_t record_bytes(AcquisitionMode mode) noexcept;

struct LogHeader {
  std::uint8_t version = kLogVersion;
  AcquisitionMode mode = AcquisitionMode::Raw;
  std::uint16_t fs = 100;
  std::uint16_t counts_per_g = 1024;
  std::uint32_t record_count = 0;

  bool operator==(const LogHeader&) const = default;
};

struct DecodedLog {
  LogHeader header;
  std::vector<LogRecord> records;
  /// Stream ended before record_count records; `records` holds the complete ones.
  bool truncated = false;
};

/// Throws MixedModes if any record does not match `mode`.
std::vector<std::uint8_t> encode_log(std::span<const LogRecord> records, AcquisitionMode mode,
                                     const DeviceConfig& cfg);

/// Throws BadMagic, UnsupportedVersion, CorruptRecord.
DecodedLog decode_log(std::span<const std::uint8_t> bytes);

/// g -> counts (round to nearest). Throws OutOfRange beyond +/-8 g.
RawRecord quantize_sample(const signal::AccelSample& sample, const DeviceConfig& cfg);
signal::AccelSample dequantize_sample(const RawRecord& record, const DeviceConfig& cfg);

/// resp_centihz = round(100 f), activity_micro_g = round(1e6 a),
/// window_start_s = round(window_start). Throws OutOfRange.
ProcessedRecord quantize_window(const signal::WindowResult& result);
signal::WindowResult dequantize_window(const ProcessedRecord& record);

}  // namespace fishbit::device
