#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sparsesense/data.hpp"

namespace sparsesense {

struct SegmentationResult {
  std::vector<SparseSegment> segments;
  std::size_t empty_windows = 0;
};

/// Slides windows [t0 + k*stride, t0 + k*stride + window_len) over the stream,
/// t0 being its first timestamp, for every start not past the last reading.
/// Each kept segment is labelled with the most frequent annotation among its
/// readings (ties go to the lowest activity index). Empty windows are dropped
/// and counted.
SegmentationResult segment(const SensorStream& stream, double window_len, double stride);

/// Most frequent label; ties resolved towards the lowest index.
std::size_t majority_label(std::span<const std::size_t> labels);

/// Number of readings dropped by sparsify: round(p * m), capped at m - 1.
std::size_t drop_count(std::size_t cardinality, double drop_rate);

/// Removes drop_count(m, p) readings chosen uniformly without replacement.
/// Survivors keep their original values, timestamps and relative order.
SparseSegment sparsify(const SparseSegment& segment, double drop_rate, std::uint64_t seed);

}  // namespace sparsesense
