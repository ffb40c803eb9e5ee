#include "sparsesense/normalize.hpp"

#include <algorithm>
#include <limits>

#include "sparsesense/error.hpp"

namespace sparsesense {

namespace {

struct MinMax {
  std::vector<double> lo;
  std::vector<double> hi;

  void observe(std::span<const double> channels) {
    if (lo.empty()) {
      lo.assign(channels.size(), std::numeric_limits<double>::infinity());
      hi.assign(channels.size(), -std::numeric_limits<double>::infinity());
    }
    if (channels.size() != lo.size()) throw DimensionError("inconsistent channel count");
    for (std::size_t j = 0; j < channels.size(); ++j) {
      lo[j] = std::min(lo[j], channels[j]);
      hi[j] = std::max(hi[j], channels[j]);
    }
  }

  NormStats finish() && {
    if (lo.empty()) throw EmptyInputError("fit_normalizer: no readings");
    return NormStats{std::move(lo), std::move(hi)};
  }
};

void check_channels(const NormStats& stats, std::size_t d) {
  if (d != stats.channels()) {
    throw DimensionError("normalizer fitted on " + std::to_string(stats.channels()) +
                         " channels, got " + std::to_string(d));
  }
}

}  // namespace

NormStats fit_normalizer(std::span<const SensorStream> streams) {
  MinMax acc;
  for (const auto& s : streams) {
    for (const auto& r : s.readings) acc.observe(r.channels);
  }
  return std::move(acc).finish();
}

NormStats fit_normalizer(std::span<const SparseSegment> segments) {
  MinMax acc;
  for (const auto& s : segments) {
    for (std::size_t i = 0; i < s.cardinality(); ++i) acc.observe(s.values.row(i));
  }
  return std::move(acc).finish();
}

double normalize_value(const NormStats& stats, std::size_t channel, double value) {
  if (stats.degenerate(channel)) return 0.0;
  const double x = (value - stats.min[channel]) / (stats.max[channel] - stats.min[channel]);
  return std::clamp(x, 0.0, 1.0);
}

SensorReading apply_normalizer(const NormStats& stats, const SensorReading& reading) {
  check_channels(stats, reading.channels.size());
  SensorReading out = reading;
  for (std::size_t j = 0; j < out.channels.size(); ++j) {
    out.channels[j] = normalize_value(stats, j, reading.channels[j]);
  }
  return out;
}

Matrix apply_normalizer(const NormStats& stats, const Matrix& values) {
  check_channels(stats, values.cols());
  Matrix out = values;
  for (std::size_t r = 0; r < out.rows(); ++r) {
    auto row = out.row(r);
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = normalize_value(stats, j, row[j]);
  }
  return out;
}

SparseSegment apply_normalizer(const NormStats& stats, const SparseSegment& segment) {
  SparseSegment out = segment;
  out.values = apply_normalizer(stats, segment.values);
  return out;
}

}  // namespace sparsesense
