#include "sparsesense/set_model.hpp"

#include <algorithm>
#include <string>

#include "sparsesense/error.hpp"
#include "sparsesense/random.hpp"

namespace sparsesense {

void SetArchitecture::validate() const {
  if (phi.empty()) throw ConfigError("phi needs at least one layer");
  for (auto w : phi) {
    if (w == 0) throw ConfigError("phi widths must be positive");
  }
  for (auto w : rho_hidden) {
    if (w == 0) throw ConfigError("rho widths must be positive");
  }
}

SetArchitecture SetModel::architecture() const {
  SetArchitecture arch;
  arch.phi = phi.widths();
  arch.rho_hidden = rho.widths();
  if (!arch.rho_hidden.empty()) arch.rho_hidden.pop_back();
  return arch;
}

void SetModel::validate() const {
  if (phi.depth() == 0 || rho.depth() == 0) throw ConfigError("set model has empty networks");
  for (const auto& l : phi.layers()) {
    if (l.activation != Activation::relu) throw ConfigError("phi layers must use ReLU");
  }
  if (rho.layers().back().activation != Activation::softmax) {
    throw ConfigError("rho must end in softmax");
  }
  if (phi.output_width() != rho.input_width()) {
    throw DimensionError("phi output width " + std::to_string(phi.output_width()) +
                         " != rho input width " + std::to_string(rho.input_width()));
  }
  if (rho.output_width() != activities.size()) {
    throw DimensionError("rho output width does not match the activity space");
  }
  if (norm && norm->channels() != channels()) {
    throw DimensionError("normalizer channel count does not match phi input width");
  }
}

SetModel make_set_model(std::size_t channels, ActivitySpace activities,
                        const SetArchitecture& arch, std::optional<NormStats> norm,
                        std::uint64_t seed) {
  arch.validate();
  SetModel model;
  model.phi = Mlp::glorot(channels, arch.phi, Activation::relu, Activation::relu,
                          derive_seed(seed, 0));
  std::vector<std::size_t> rho_widths = arch.rho_hidden;
  rho_widths.push_back(activities.size());
  model.rho = Mlp::glorot(arch.phi.back(), rho_widths, Activation::relu, Activation::softmax,
                          derive_seed(seed, 1));
  model.activities = std::move(activities);
  model.norm = std::move(norm);
  model.validate();
  return model;
}

Matrix prepare_input(const SetModel& model, const SparseSegment& segment) {
  if (segment.cardinality() == 0) throw EmptySegmentError();
  if (segment.channel_count() != model.channels()) {
    throw DimensionError("segment has " + std::to_string(segment.channel_count()) +
                         " channels, model expects " + std::to_string(model.channels()));
  }
  return model.norm ? apply_normalizer(*model.norm, segment.values) : segment.values;
}

Matrix embed_samples(const SetModel& model, const SparseSegment& segment) {
  return model.phi.forward(prepare_input(model, segment));
}

namespace {

// Pools rows [first, first + count) of `embeddings`.
PoolResult pool_rows(const Matrix& embeddings, std::size_t first, std::size_t count) {
  if (count == 0) throw EmptySegmentError("cannot pool zero embeddings");
  PoolResult out;
  const auto top = embeddings.row(first);
  out.embedding.assign(top.begin(), top.end());
  out.argmax.assign(embeddings.cols(), 0);
  for (std::size_t r = 1; r < count; ++r) {
    const auto row = embeddings.row(first + r);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] > out.embedding[j]) {
        out.embedding[j] = row[j];
        out.argmax[j] = r;
      }
    }
  }
  return out;
}

struct StackedBatch {
  Matrix rows;
  std::vector<std::size_t> offsets;  // segment b owns rows [offsets[b], offsets[b+1])
};

StackedBatch stack(std::span<const Matrix> inputs, std::size_t channels) {
  StackedBatch out;
  std::size_t total = 0;
  for (const auto& m : inputs) {
    if (m.rows() == 0) throw EmptySegmentError();
    if (m.cols() != channels) throw DimensionError("segment input has the wrong channel count");
    total += m.rows();
  }
  std::vector<double> data;
  data.reserve(total * channels);
  out.offsets.push_back(0);
  for (const auto& m : inputs) {
    data.insert(data.end(), m.data().begin(), m.data().end());
    out.offsets.push_back(out.offsets.back() + m.rows());
  }
  out.rows = Matrix(total, channels, std::move(data));
  return out;
}

}  // namespace

PoolResult pool(const Matrix& embeddings) { return pool_rows(embeddings, 0, embeddings.rows()); }

std::vector<double> forward(const SetModel& model, const SparseSegment& segment) {
  const PoolResult pooled = pool(embed_samples(model, segment));
  const Matrix probs = model.rho.forward(Matrix(1, pooled.embedding.size(), pooled.embedding));
  return {probs.data().begin(), probs.data().end()};
}

Matrix forward_batch(const SetModel& model, std::span<const SparseSegment> segments) {
  std::vector<Matrix> inputs;
  inputs.reserve(segments.size());
  for (const auto& s : segments) inputs.push_back(prepare_input(model, s));
  const StackedBatch batch = stack(inputs, model.channels());
  const Matrix embedded = model.phi.forward(batch.rows);
  Matrix pooled(segments.size(), model.embedding_width());
  for (std::size_t b = 0; b < segments.size(); ++b) {
    const auto p = pool_rows(embedded, batch.offsets[b], batch.offsets[b + 1] - batch.offsets[b]);
    std::ranges::copy(p.embedding, pooled.row(b).begin());
  }
  return model.rho.forward(pooled);
}

std::size_t argmax_lowest(std::span<const double> values) {
  if (values.empty()) throw DimensionError("argmax of an empty vector");
  return static_cast<std::size_t>(std::ranges::max_element(values) - values.begin());
}

std::size_t predict(const SetModel& model, const SparseSegment& segment) {
  return argmax_lowest(forward(model, segment));
}

std::size_t contributing_count(const PoolResult& pooled, std::size_t cardinality) {
  std::vector<char> seen(cardinality, 0);
  std::size_t distinct = 0;
  for (auto idx : pooled.argmax) {
    if (idx >= cardinality) throw IndexError("pool argmax index exceeds segment cardinality");
    if (!seen[idx]) {
      seen[idx] = 1;
      ++distinct;
    }
  }
  return distinct;
}

SegmentAnalysis analyze(const SetModel& model, const SparseSegment& segment) {
  SegmentAnalysis out;
  out.pooled = pool(embed_samples(model, segment));
  const Matrix probs =
      model.rho.forward(Matrix(1, out.pooled.embedding.size(), out.pooled.embedding));
  out.probs.assign(probs.data().begin(), probs.data().end());
  out.predicted = argmax_lowest(out.probs);
  return out;
}

std::vector<std::span<const double>> SetGrads::views() const {
  auto out = phi.views();
  const auto r = rho.views();
  out.insert(out.end(), r.begin(), r.end());
  return out;
}

SetLossAndGrads set_loss_gradients(const SetModel& model, std::span<const Matrix> inputs,
                                   std::span<const std::size_t> labels) {
  if (inputs.size() != labels.size()) throw DimensionError("one label per segment required");
  if (inputs.empty()) throw EmptyInputError("empty training batch");
  const std::size_t z = model.embedding_width();
  const StackedBatch batch = stack(inputs, model.channels());

  const MlpTrace phi_trace = forward_trace(model.phi, batch.rows);
  Matrix pooled(inputs.size(), z);
  std::vector<std::vector<std::size_t>> winners(inputs.size());
  for (std::size_t b = 0; b < inputs.size(); ++b) {
    auto p = pool_rows(phi_trace.output, batch.offsets[b], batch.offsets[b + 1] - batch.offsets[b]);
    std::ranges::copy(p.embedding, pooled.row(b).begin());
    for (auto& idx : p.argmax) idx += batch.offsets[b];
    winners[b] = std::move(p.argmax);
  }

  const MlpTrace rho_trace = forward_trace(model.rho, pooled);
  SetLossAndGrads out;
  out.loss = nll_loss(rho_trace.output, labels);
  Backprop rho_back = backward(model.rho, rho_trace,
                               softmax_nll_logit_grad(rho_trace.output, labels),
                               GradientAt::logits);

  Matrix embed_grad(batch.rows.rows(), z);
  for (std::size_t b = 0; b < inputs.size(); ++b) {
    const auto g = rho_back.input_grad.row(b);
    for (std::size_t j = 0; j < z; ++j) embed_grad(winners[b][j], j) += g[j];
  }
  Backprop phi_back = backward(model.phi, phi_trace, embed_grad, GradientAt::output);

  out.grads.phi = std::move(phi_back.grads);
  out.grads.rho = std::move(rho_back.grads);
  return out;
}

std::vector<std::span<double>> parameters(SetModel& model) {
  auto out = model.phi.parameters();
  const auto r = model.rho.parameters();
  out.insert(out.end(), r.begin(), r.end());
  return out;
}

}  // namespace sparsesense
