#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "sparsesense/matrix.hpp"

namespace sparsesense {

enum class Activation { relu, softmax, none };

std::string_view to_string(Activation a);
Activation parse_activation(std::string_view name);

/// Fully connected layer computing activation(x W^T + b) row-wise.
struct DenseLayer {
  Matrix weights;  // out x in
  std::vector<double> bias;
  Activation activation = Activation::none;

  std::size_t in() const { return weights.cols(); }
  std::size_t out() const { return weights.rows(); }
};

/// Pre-activation x W^T + b for a batch of row vectors.
Matrix affine(const DenseLayer& layer, const Matrix& input);
void apply_activation(Activation activation, Matrix& values);
Matrix dense_forward(const DenseLayer& layer, const Matrix& input);

/// Numerically stable softmax: the max logit is subtracted first, so adding a
/// constant to every logit leaves the result unchanged.
std::vector<double> softmax(std::span<const double> logits);
void softmax_rows(Matrix& logits);

/// Probability floor applied before taking the log in nll_loss.
inline constexpr double kProbabilityFloor = 1e-12;

/// Mean over the batch of -ln(probs[i, labels[i]]).
double nll_loss(const Matrix& probs, std::span<const std::size_t> labels);

/// Glorot-uniform matrix: U(-a, a) with a = sqrt(6 / (cols + rows)).
Matrix init_params(std::size_t rows, std::size_t cols, std::uint64_t seed);

/// Ordered stack of dense layers. Softmax may only appear on the last layer.
class Mlp {
 public:
  Mlp() = default;
  explicit Mlp(std::vector<DenseLayer> layers);

  /// Builds layers input_width -> widths[0] -> ... -> widths.back(). Hidden
  /// layers use `hidden`, the last one uses `last`. Biases start at zero.
  static Mlp glorot(std::size_t input_width, std::span<const std::size_t> widths,
                    Activation hidden, Activation last, std::uint64_t seed);

  const std::vector<DenseLayer>& layers() const { return layers_; }
  std::size_t depth() const { return layers_.size(); }
  std::size_t input_width() const;
  std::size_t output_width() const;
  std::size_t parameter_count() const;
  std::vector<std::size_t> widths() const;

  Matrix forward(const Matrix& input) const;

  /// Weight and bias buffers in layer order (W0, b0, W1, b1, ...).
  std::vector<std::span<double>> parameters();

  friend bool operator==(const Mlp& a, const Mlp& b);

 private:
  std::vector<DenseLayer> layers_;
};

/// Activations cached by forward_trace for backpropagation.
struct MlpTrace {
  std::vector<Matrix> inputs;          // input to each layer
  std::vector<Matrix> preactivations;  // x W^T + b for each layer
  Matrix output;
};

MlpTrace forward_trace(const Mlp& mlp, const Matrix& input);

struct LayerGrads {
  Matrix weights;
  std::vector<double> bias;
};

struct MlpGrads {
  std::vector<LayerGrads> layers;

  static MlpGrads zeros_like(const Mlp& mlp);
  /// Gradient buffers in the same order as Mlp::parameters().
  std::vector<std::span<const double>> views() const;
  void add(const MlpGrads& other);
  void scale(double factor);
};

/// Where the upstream gradient handed to backward() is taken.
enum class GradientAt {
  output,  // w.r.t. the network output (after the last activation)
  logits,  // w.r.t. the last layer's pre-activation
};

struct Backprop {
  MlpGrads grads;
  Matrix input_grad;
};

Backprop backward(const Mlp& mlp, const MlpTrace& trace, const Matrix& upstream,
                  GradientAt at = GradientAt::output);

/// d(nll_loss)/d(logits) for a softmax output: (p - onehot) / batch.
Matrix softmax_nll_logit_grad(const Matrix& probs, std::span<const std::size_t> labels);

struct LossAndGrads {
  double loss = 0.0;
  MlpGrads grads;
};

/// Forward, nll_loss and analytic gradients for an MLP ending in softmax.
LossAndGrads loss_gradients(const Mlp& mlp, const Matrix& input,
                            std::span<const std::size_t> labels);

}  // namespace sparsesense
