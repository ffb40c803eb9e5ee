#include "sparsesense/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sparsesense/error.hpp"
#include "sparsesense/random.hpp"

namespace sparsesense {

std::size_t majority_label(std::span<const std::size_t> labels) {
  if (labels.empty()) throw EmptySegmentError("majority_label of an empty window");
  const std::size_t top = *std::ranges::max_element(labels);
  std::vector<std::size_t> counts(top + 1, 0);
  for (auto l : labels) ++counts[l];
  // max_element returns the first maximum, i.e. the lowest index on ties.
  return static_cast<std::size_t>(std::ranges::max_element(counts) - counts.begin());
}

SegmentationResult segment(const SensorStream& stream, double window_len, double stride) {
  if (!(window_len > 0.0) || !(stride > 0.0)) {
    throw ConfigError("window length and stride must be positive");
  }
  if (stream.labels.size() != stream.readings.size()) {
    throw DimensionError("stream labels and readings differ in length");
  }
  SegmentationResult result;
  const auto& rs = stream.readings;
  if (rs.empty()) return result;

  const double t0 = rs.front().timestamp;
  const double t_last = rs.back().timestamp;
  std::size_t first = 0;  // first reading with timestamp >= window start
  std::vector<std::size_t> window_labels;
  for (std::size_t k = 0;; ++k) {
    const double start = t0 + static_cast<double>(k) * stride;
    if (start > t_last) break;
    const double end = start + window_len;
    while (first < rs.size() && rs[first].timestamp < start) ++first;

    SparseSegment seg;
    seg.window_start = start;
    seg.window_len = window_len;
    window_labels.clear();
    for (std::size_t i = first; i < rs.size() && rs[i].timestamp < end; ++i) {
      seg.add(rs[i]);
      window_labels.push_back(stream.labels[i]);
    }
    if (seg.cardinality() == 0) {
      ++result.empty_windows;
      continue;
    }
    seg.label = majority_label(window_labels);
    result.segments.push_back(std::move(seg));
  }
  return result;
}

std::size_t drop_count(std::size_t cardinality, double drop_rate) {
  if (!(drop_rate >= 0.0 && drop_rate < 1.0)) throw ConfigError("drop rate must lie in [0, 1)");
  if (cardinality == 0) return 0;
  const auto drop = static_cast<std::size_t>(std::llround(drop_rate * static_cast<double>(cardinality)));
  return std::min(drop, cardinality - 1);
}

SparseSegment sparsify(const SparseSegment& segment, double drop_rate, std::uint64_t seed) {
  const std::size_t m = segment.cardinality();
  if (m == 0) throw EmptySegmentError();
  const std::size_t drop = drop_count(m, drop_rate);
  if (drop == 0) return segment;

  // Partial Fisher-Yates: the first `drop` slots end up holding the victims.
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = 0; i < drop; ++i) {
    std::swap(order[i], order[i + rng.below(m - i)]);
  }
  std::vector<char> dropped(m, 0);
  for (std::size_t i = 0; i < drop; ++i) dropped[order[i]] = 1;

  std::vector<std::size_t> keep;
  keep.reserve(m - drop);
  for (std::size_t i = 0; i < m; ++i) {
    if (!dropped[i]) keep.push_back(i);
  }
  return segment.subset(keep);
}

}  // namespace sparsesense
