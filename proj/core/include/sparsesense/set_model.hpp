#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sparsesense/data.hpp"
#include "sparsesense/matrix.hpp"
#include "sparsesense/nn.hpp"
#include "sparsesense/normalize.hpp"

namespace sparsesense {

/// Layer widths of the set network. phi maps each reading d -> ... -> z with
/// ReLU throughout; rho maps the pooled embedding z -> rho_hidden... -> c and
/// ends in softmax.
struct SetArchitecture {
  std::vector<std::size_t> phi{64, 128, 256};
  std::vector<std::size_t> rho_hidden{128, 64};

  void validate() const;
  friend bool operator==(const SetArchitecture&, const SetArchitecture&) = default;
};

/// Shared per-reading embedding, feature-wise max pool, segment classifier.
///
/// Model operations take raw segments: readings are normalized with `norm`
/// (when present) before entering phi.
struct SetModel {
  Mlp phi;
  Mlp rho;
  ActivitySpace activities;
  std::optional<NormStats> norm;

  std::size_t channels() const { return phi.input_width(); }
  std::size_t embedding_width() const { return phi.output_width(); }
  SetArchitecture architecture() const;
  void validate() const;

  friend bool operator==(const SetModel&, const SetModel&) = default;
};

SetModel make_set_model(std::size_t channels, ActivitySpace activities,
                        const SetArchitecture& arch, std::optional<NormStats> norm,
                        std::uint64_t seed);

/// Normalized m x d input matrix for phi.
Matrix prepare_input(const SetModel& model, const SparseSegment& segment);

/// Row i is phi applied to reading i.
Matrix embed_samples(const SetModel& model, const SparseSegment& segment);

struct PoolResult {
  std::vector<double> embedding;
  std::vector<std::size_t> argmax;  // per feature: first row attaining the max
};

PoolResult pool(const Matrix& embeddings);

std::vector<double> forward(const SetModel& model, const SparseSegment& segment);
/// One probability row per segment; row b equals forward(model, segments[b]).
Matrix forward_batch(const SetModel& model, std::span<const SparseSegment> segments);

/// Index of the largest value, lowest index on ties.
std::size_t argmax_lowest(std::span<const double> values);
std::size_t predict(const SetModel& model, const SparseSegment& segment);

/// Distinct readings that attain at least one feature maximum.
std::size_t contributing_count(const PoolResult& pooled, std::size_t cardinality);

struct SegmentAnalysis {
  PoolResult pooled;
  std::vector<double> probs;
  std::size_t predicted = 0;
};

SegmentAnalysis analyze(const SetModel& model, const SparseSegment& segment);

struct SetGrads {
  MlpGrads phi;
  MlpGrads rho;

  std::vector<std::span<const double>> views() const;
};

struct SetLossAndGrads {
  double loss = 0.0;
  SetGrads grads;
};

/// Mean nll_loss over a batch of already-normalized segment inputs and its
/// gradient. The pooled gradient is routed to the argmax reading of every
/// feature; each segment pools only over its own rows.
SetLossAndGrads set_loss_gradients(const SetModel& model, std::span<const Matrix> inputs,
                                   std::span<const std::size_t> labels);

/// phi parameters followed by rho parameters, matching SetGrads::views().
std::vector<std::span<double>> parameters(SetModel& model);

}  // namespace sparsesense
