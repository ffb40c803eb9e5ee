#pragma once

#include <span>
#include <vector>

#include "sparsesense/data.hpp"

namespace sparsesense {

/// Per-channel min/max fitted on training data.
struct NormStats {
  std::vector<double> min;
  std::vector<double> max;

  std::size_t channels() const { return min.size(); }
  bool degenerate(std::size_t channel) const { return max[channel] == min[channel]; }

  friend bool operator==(const NormStats&, const NormStats&) = default;
};

NormStats fit_normalizer(std::span<const SensorStream> streams);
NormStats fit_normalizer(std::span<const SparseSegment> segments);

/// (x - min) / (max - min) clipped to [0, 1]; degenerate channels map to 0.
double normalize_value(const NormStats& stats, std::size_t channel, double value);
SensorReading apply_normalizer(const NormStats& stats, const SensorReading& reading);
Matrix apply_normalizer(const NormStats& stats, const Matrix& values);
SparseSegment apply_normalizer(const NormStats& stats, const SparseSegment& segment);

}  // namespace sparsesense
