#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sparsesense/baseline.hpp"
#include "sparsesense/data.hpp"
#include "sparsesense/rmsprop.hpp"
#include "sparsesense/set_model.hpp"

namespace sparsesense {

/// Optimization hyperparameters. Defaults: batch 128, RMSProp at 1e-4 dropped
/// tenfold at epoch 100, 150 epochs, weight decay 1e-4.
struct TrainConfig {
  std::size_t batch_size = 128;
  double lr = 1e-4;
  double lr_drop_factor = 0.1;
  std::size_t lr_drop_epoch = 100;
  std::size_t total_epochs = 150;
  double weight_decay = 1e-4;
  double alpha = 0.99;
  double epsilon = 1e-8;
  std::uint64_t seed = 1;
  double window_len = 2.0;  // seconds
  double stride = 2.0;      // seconds

  void validate() const;
  RmsPropConfig optimizer() const;
  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

/// Learning rate in effect during `epoch` (0-based).
double learning_rate_at(const TrainConfig& config, std::size_t epoch);

struct TrainResult {
  SetModel model;
  std::vector<double> loss_trace;  // mean training loss per epoch
};

/// Fits the normalizer on `segments`, initializes the set model from the
/// config seed and runs mini-batch RMSProp. Every epoch visits the segments in
/// a fresh seeded order; each segment keeps its own cardinality.
TrainResult train(std::span<const SparseSegment> segments, const ActivitySpace& activities,
                  const TrainConfig& config, const SetArchitecture& arch);

struct BaselineTrainResult {
  DenseBaselineModel model;
  std::vector<double> loss_trace;
};

/// Same loop for the interpolate-then-MLP baseline on config.window_len grids.
BaselineTrainResult train_baseline(std::span<const SparseSegment> segments,
                                   const ActivitySpace& activities, const TrainConfig& config,
                                   const BaselineArchitecture& arch);

}  // namespace sparsesense
