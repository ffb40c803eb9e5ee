#include "sparsesense/train.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "sparsesense/error.hpp"
#include "sparsesense/normalize.hpp"
#include "sparsesense/random.hpp"

namespace sparsesense {

void TrainConfig::validate() const {
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (total_epochs < 1) throw ConfigError("total_epochs must be >= 1");
  if (lr_drop_epoch >= total_epochs) throw ConfigError("lr_drop_epoch must be < total_epochs");
  if (!(lr_drop_factor > 0.0)) throw ConfigError("lr_drop_factor must be positive");
  if (!(window_len > 0.0) || !(stride > 0.0)) throw ConfigError("window_len and stride must be positive");
  optimizer().validate();
}

RmsPropConfig TrainConfig::optimizer() const {
  return RmsPropConfig{lr, alpha, epsilon, weight_decay};
}

double learning_rate_at(const TrainConfig& config, std::size_t epoch) {
  return epoch >= config.lr_drop_epoch ? config.lr * config.lr_drop_factor : config.lr;
}

namespace {

void require_all_classes(std::span<const SparseSegment> segments, const ActivitySpace& activities) {
  std::vector<char> present(activities.size(), 0);
  for (const auto& s : segments) {
    if (s.label >= activities.size()) throw IndexError("segment label outside the activity space");
    present[s.label] = 1;
  }
  for (std::size_t k = 0; k < activities.size(); ++k) {
    if (!present[k]) {
      throw TrainingDataError("class '" + activities.name(k) + "' is absent from the training data");
    }
  }
}

std::size_t common_channels(std::span<const SparseSegment> segments) {
  const std::size_t d = segments.front().channel_count();
  for (const auto& s : segments) {
    if (s.cardinality() == 0) throw EmptySegmentError();
    if (s.channel_count() != d) throw DimensionError("segments disagree on channel count");
  }
  return d;
}

// Shared epoch loop. `step` consumes one batch of sample indices, applies one
// optimizer update and returns the batch's mean loss.
template <typename Step>
std::vector<double> run_epochs(std::size_t samples, const TrainConfig& config, RmsProp& optimizer,
                               Step&& step) {
  Rng order_rng(derive_seed(config.seed, 2));
  std::vector<std::size_t> order(samples);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> trace;
  trace.reserve(config.total_epochs);

  for (std::size_t epoch = 0; epoch < config.total_epochs; ++epoch) {
    optimizer.set_lr(learning_rate_at(config, epoch));
    order_rng.shuffle(std::span<std::size_t>(order));
    double total = 0.0;
    for (std::size_t start = 0; start < samples; start += config.batch_size) {
      const std::size_t n = std::min(config.batch_size, samples - start);
      const double loss = step(std::span<const std::size_t>(order).subspan(start, n));
      if (!std::isfinite(loss)) {
        throw InvariantError("non-finite training loss at epoch " + std::to_string(epoch));
      }
      total += loss * static_cast<double>(n);
    }
    trace.push_back(total / static_cast<double>(samples));
  }
  return trace;
}

}  // namespace

TrainResult train(std::span<const SparseSegment> segments, const ActivitySpace& activities,
                  const TrainConfig& config, const SetArchitecture& arch) {
  config.validate();
  if (segments.empty()) throw TrainingDataError("no training segments");
  require_all_classes(segments, activities);
  const std::size_t d = common_channels(segments);

  NormStats norm = fit_normalizer(segments);
  TrainResult result;
  result.model = make_set_model(d, activities, arch, norm, derive_seed(config.seed, 1));

  std::vector<Matrix> inputs;
  inputs.reserve(segments.size());
  for (const auto& s : segments) inputs.push_back(apply_normalizer(norm, s.values));
  const auto labels = labels_of(segments);

  RmsProp optimizer(config.optimizer());
  std::vector<Matrix> batch_inputs;
  std::vector<std::size_t> batch_labels;
  result.loss_trace = run_epochs(segments.size(), config, optimizer, [&](std::span<const std::size_t> idx) {
    batch_inputs.clear();
    batch_labels.clear();
    for (auto i : idx) {
      batch_inputs.push_back(inputs[i]);
      batch_labels.push_back(labels[i]);
    }
    const SetLossAndGrads lg = set_loss_gradients(result.model, batch_inputs, batch_labels);
    const auto params = parameters(result.model);
    const auto grads = lg.grads.views();
    optimizer.step(params, grads);
    return lg.loss;
  });
  return result;
}

BaselineTrainResult train_baseline(std::span<const SparseSegment> segments,
                                   const ActivitySpace& activities, const TrainConfig& config,
                                   const BaselineArchitecture& arch) {
  config.validate();
  if (segments.empty()) throw TrainingDataError("no training segments");
  require_all_classes(segments, activities);
  const std::size_t d = common_channels(segments);

  NormStats norm = fit_normalizer(segments);
  BaselineTrainResult result;
  result.model = make_baseline(d, activities, arch, config.window_len, norm,
                               derive_seed(config.seed, 3));

  const std::size_t width = result.model.mlp.input_width();
  Matrix inputs(0, width);
  for (const auto& s : segments) inputs.append_row(baseline_input(result.model, s));
  const auto labels = labels_of(segments);

  RmsProp optimizer(config.optimizer());
  std::vector<std::size_t> batch_labels;
  result.loss_trace = run_epochs(segments.size(), config, optimizer, [&](std::span<const std::size_t> idx) {
    const Matrix x = inputs.select_rows(idx);
    batch_labels.clear();
    for (auto i : idx) batch_labels.push_back(labels[i]);
    const LossAndGrads lg = loss_gradients(result.model.mlp, x, batch_labels);
    const auto params = result.model.mlp.parameters();
    const auto grads = lg.grads.views();
    optimizer.step(params, grads);
    return lg.loss;
  });
  return result;
}

}  // namespace sparsesense
