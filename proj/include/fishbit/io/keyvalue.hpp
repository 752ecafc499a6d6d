#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace fishbit::io {

/// Flat `key = value` document. Blank lines and lines starting with '#' are
/// ignored; keys are unique.
using KeyValues = std::map<std::string, std::string>;

/// Throws ParseError naming the source and line.
KeyValues parse_key_values(std::string_view text, std::string_view source = "<input>");
KeyValues read_key_values(const std::filesystem::path& path);

/// Sorted `key = value` lines; stable, so suitable for hashing.
std::string format_key_values(const KeyValues& kv);

double parse_double(std::string_view text, std::string_view what);
long long parse_integer(std::string_view text, std::string_view what);

/// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view data);

}  // namespace fishbit::io
