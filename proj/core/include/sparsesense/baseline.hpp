#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sparsesense/data.hpp"
#include "sparsesense/interp.hpp"
#include "sparsesense/nn.hpp"
#include "sparsesense/normalize.hpp"

namespace sparsesense {

struct BaselineArchitecture {
  std::vector<std::size_t> hidden{64, 128, 256, 128, 64};
  InterpKind kind = InterpKind::linear;
  double target_rate = 20.0;  // Hz

  void validate() const;
  friend bool operator==(const BaselineArchitecture&, const BaselineArchitecture&) = default;
};

/// Fixed-grid comparison model: interpolate each segment onto
/// round(target_rate * window_len) grid points, flatten row-major and classify
/// with an MLP.
struct DenseBaselineModel {
  Mlp mlp;
  InterpKind kind = InterpKind::linear;
  double target_rate = 20.0;
  double window_len = 2.0;
  std::size_t channels = 0;
  ActivitySpace activities;
  std::optional<NormStats> norm;

  std::size_t grid_points() const { return grid_size(window_len, target_rate); }
  std::vector<std::size_t> hidden_widths() const;
  void validate() const;

  friend bool operator==(const DenseBaselineModel&, const DenseBaselineModel&) = default;
};

DenseBaselineModel make_baseline(std::size_t channels, ActivitySpace activities,
                                 const BaselineArchitecture& arch, double window_len,
                                 std::optional<NormStats> norm, std::uint64_t seed);

/// Row-major (grid point, channel) flattening of the resampled values.
std::vector<double> flatten(const DenseSegment& dense);

/// Normalize, resample and flatten one segment into the MLP input row.
std::vector<double> baseline_input(const DenseBaselineModel& model, const SparseSegment& segment);

std::vector<double> baseline_forward(const DenseBaselineModel& model, const SparseSegment& segment);
Matrix baseline_forward_batch(const DenseBaselineModel& model, std::span<const SparseSegment> segments);
std::size_t baseline_predict(const DenseBaselineModel& model, const SparseSegment& segment);

}  // namespace sparsesense
