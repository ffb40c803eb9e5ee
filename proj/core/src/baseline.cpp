#include "sparsesense/baseline.hpp"

#include <string>

#include "sparsesense/error.hpp"
#include "sparsesense/set_model.hpp"

namespace sparsesense {

void BaselineArchitecture::validate() const {
  for (auto w : hidden) {
    if (w == 0) throw ConfigError("baseline widths must be positive");
  }
  if (!(target_rate > 0.0)) throw ConfigError("baseline target_rate must be positive");
}

std::vector<std::size_t> DenseBaselineModel::hidden_widths() const {
  auto w = mlp.widths();
  if (!w.empty()) w.pop_back();
  return w;
}

void DenseBaselineModel::validate() const {
  if (mlp.depth() == 0) throw ConfigError("baseline has an empty network");
  if (mlp.layers().back().activation != Activation::softmax) {
    throw ConfigError("baseline network must end in softmax");
  }
  if (mlp.input_width() != grid_points() * channels) {
    throw DimensionError("baseline input width " + std::to_string(mlp.input_width()) +
                         " != grid points x channels " + std::to_string(grid_points() * channels));
  }
  if (mlp.output_width() != activities.size()) {
    throw DimensionError("baseline output width does not match the activity space");
  }
  if (norm && norm->channels() != channels) {
    throw DimensionError("normalizer channel count does not match the baseline");
  }
}

DenseBaselineModel make_baseline(std::size_t channels, ActivitySpace activities,
                                 const BaselineArchitecture& arch, double window_len,
                                 std::optional<NormStats> norm, std::uint64_t seed) {
  arch.validate();
  DenseBaselineModel model;
  model.kind = arch.kind;
  model.target_rate = arch.target_rate;
  model.window_len = window_len;
  model.channels = channels;
  std::vector<std::size_t> widths = arch.hidden;
  widths.push_back(activities.size());
  model.mlp = Mlp::glorot(model.grid_points() * channels, widths, Activation::relu,
                          Activation::softmax, seed);
  model.activities = std::move(activities);
  model.norm = std::move(norm);
  model.validate();
  return model;
}

std::vector<double> flatten(const DenseSegment& dense) {
  return {dense.values.data().begin(), dense.values.data().end()};
}

std::vector<double> baseline_input(const DenseBaselineModel& model, const SparseSegment& segment) {
  if (segment.cardinality() == 0) throw EmptySegmentError();
  if (segment.channel_count() != model.channels) {
    throw DimensionError("segment has " + std::to_string(segment.channel_count()) +
                         " channels, baseline expects " + std::to_string(model.channels));
  }
  if (grid_size(segment.window_len, model.target_rate) != model.grid_points()) {
    throw DimensionError("segment window length does not match the baseline grid");
  }
  const DenseSegment dense = resample(
      model.norm ? apply_normalizer(*model.norm, segment) : segment, model.kind, model.target_rate);
  return flatten(dense);
}

std::vector<double> baseline_forward(const DenseBaselineModel& model, const SparseSegment& segment) {
  auto x = baseline_input(model, segment);
  const std::size_t width = x.size();
  const Matrix probs = model.mlp.forward(Matrix(1, width, std::move(x)));
  return {probs.data().begin(), probs.data().end()};
}

Matrix baseline_forward_batch(const DenseBaselineModel& model, std::span<const SparseSegment> segments) {
  const std::size_t width = model.mlp.input_width();
  std::vector<double> data;
  data.reserve(segments.size() * width);
  for (const auto& s : segments) {
    const auto x = baseline_input(model, s);
    data.insert(data.end(), x.begin(), x.end());
  }
  return model.mlp.forward(Matrix(segments.size(), width, std::move(data)));
}

std::size_t baseline_predict(const DenseBaselineModel& model, const SparseSegment& segment) {
  return argmax_lowest(baseline_forward(model, segment));
}

}  // namespace sparsesense
