#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sparsesense/data.hpp"
#include "sparsesense/folds.hpp"
#include "sparsesense/metrics.hpp"
#include "sparsesense/normalize.hpp"
#include "sparsesense/train.hpp"

namespace sparsesense {

struct CvFold {
  std::size_t fold = 0;
  std::size_t train_segments = 0;
  std::size_t validation_segments = 0;
  EvalReport report;
  NormStats norm;  // fitted on this fold's training segments only
  std::vector<double> loss_trace;
  double eval_ms = 0.0;  // wall time of validation inference
};

/// Per-fold reports plus mean +- std (population) over folds.
struct CvSummary {
  std::vector<CvFold> folds;
  MeanStd precision;
  MeanStd recall;
  MeanStd f1;
};

CvSummary aggregate_folds(std::vector<CvFold> folds);

/// k-fold stratified cross-validation of the set model. Folds are drawn with
/// config.seed; each fold trains from scratch on the other k-1 folds.
CvSummary cross_validate(std::span<const SparseSegment> segments, const ActivitySpace& activities,
                         std::size_t k, const TrainConfig& config, const SetArchitecture& arch);

/// The same protocol for the interpolate-then-MLP baseline.
CvSummary cross_validate_baseline(std::span<const SparseSegment> segments,
                                  const ActivitySpace& activities, std::size_t k,
                                  const TrainConfig& config, const BaselineArchitecture& arch);

}  // namespace sparsesense
