#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sparsesense {

std::string read_text_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over `path`, so readers
/// never observe a partially written artifact.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Shortest decimal form that parses back to the same double.
std::string format_exact(double value);
/// Nine significant digits, the precision used for report CSVs.
std::string format_sig9(double value);

std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_int(std::string_view text);

std::vector<std::string_view> split(std::string_view text, char delimiter);
std::string_view trim(std::string_view text);

/// 64-bit FNV-1a digest rendered as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace sparsesense
