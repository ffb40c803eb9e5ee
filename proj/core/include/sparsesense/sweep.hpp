#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sparsesense/baseline.hpp"
#include "sparsesense/data.hpp"
#include "sparsesense/metrics.hpp"
#include "sparsesense/set_model.hpp"
#include "sparsesense/train.hpp"

namespace sparsesense {

inline const std::vector<double> kDefaultDropRates{0.0, 0.1, 0.25, 0.5, 0.75, 0.9};

enum class SweepModel { set_model, baseline };
std::string_view to_string(SweepModel model);

/// One grid point. `interp` is meaningful for baseline rows only.
struct SweepRow {
  SweepModel model = SweepModel::set_model;
  double drop_rate = 0.0;
  InterpKind interp = InterpKind::linear;
  double window_len = 0.0;
  EvalReport report;
  double latency_ms_per_segment = 0.0;  // wall time, not deterministic
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<std::uint64_t> seeds;
};

/// Evaluates both models on sparsified copies of `segments` at every drop rate.
/// Each (seed, segment index) pair gets its own sparsification stream and the
/// confusion matrices are pooled over seeds. Rate 0 is the identity and is
/// evaluated once. Rows are ordered by rate, set model first.
SweepResult sparsity_sweep(const SetModel& model, const DenseBaselineModel& baseline,
                           std::span<const SparseSegment> segments,
                           std::span<const double> drop_rates,
                           std::span<const std::uint64_t> seeds);

/// Window-length x interpolant grid: for each window length the streams are
/// re-segmented (stride = window length), then the set model and one baseline
/// per interpolant are cross-validated. Reports pool the fold confusions.
SweepResult interpolation_sweep(std::span<const SensorStream> streams,
                                const ActivitySpace& activities,
                                std::span<const double> window_lens,
                                std::span<const InterpKind> kinds, std::size_t folds,
                                const TrainConfig& config, const SetArchitecture& arch,
                                const BaselineArchitecture& baseline_arch);

}  // namespace sparsesense
