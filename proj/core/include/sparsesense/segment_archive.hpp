#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sparsesense/data.hpp"

namespace sparsesense {

/// Segments plus the metadata needed to interpret them.
///
/// On disk (CSV, values in shortest round-trip form):
///   #sparsesense-segments,version=1,d=<d>,rate_hz=<f>,activities=<a;b;...>
///   segment,<window_start>,<window_len>,<label>,<m>
///   reading,<timestamp>,<c_1>,...,<c_d>      (m lines)
///   segment,...
struct SegmentArchive {
  ActivitySpace activities;
  std::size_t channels = 0;
  double rate_hz = 0.0;
  std::vector<SparseSegment> segments;
};

std::string format_segment_archive(const SegmentArchive& archive);
SegmentArchive parse_segment_archive(std::string_view text);

void write_segment_archive(const std::filesystem::path& path, const SegmentArchive& archive);
SegmentArchive read_segment_archive(const std::filesystem::path& path);

}  // namespace sparsesense
