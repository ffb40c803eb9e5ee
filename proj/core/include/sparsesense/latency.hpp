#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sparsesense/baseline.hpp"
#include "sparsesense/set_model.hpp"

namespace sparsesense {

struct TimingStats {
  std::vector<double> samples_ms;
  double mean_ms = 0.0;
  double std_ms = 0.0;
};

TimingStats timing_stats(std::vector<double> samples_ms);

/// Wall-clock timings per batch. `baseline_interp` covers the normalize,
/// resample and flatten stage of the baseline pipeline and is included in
/// `baseline_total`.
struct LatencyReport {
  std::size_t batch_size = 0;
  std::size_t repetitions = 0;
  std::size_t warmups = 0;
  TimingStats set_model;
  TimingStats baseline_total;
  TimingStats baseline_interp;
};

inline constexpr std::size_t kMinLatencyRepetitions = 30;
inline constexpr std::size_t kLatencyWarmups = 5;

/// Times direct set-model inference against resample-then-baseline inference
/// on the same batch, single-threaded. Throws ConfigError when fewer than
/// 30 repetitions are requested.
LatencyReport latency_bench(const SetModel& model, const DenseBaselineModel& baseline,
                            std::span<const SparseSegment> batch, std::size_t repetitions,
                            std::size_t warmups = kLatencyWarmups);

}  // namespace sparsesense
