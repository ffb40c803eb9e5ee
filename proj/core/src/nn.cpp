#include "sparsesense/nn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sparsesense/error.hpp"
#include "sparsesense/random.hpp"

namespace sparsesense {

std::string_view to_string(Activation a) {
  switch (a) {
    case Activation::relu:
      return "relu";
    case Activation::softmax:
      return "softmax";
    case Activation::none:
      return "none";
  }
  return "none";
}

Activation parse_activation(std::string_view name) {
  if (name == "relu") return Activation::relu;
  if (name == "softmax") return Activation::softmax;
  if (name == "none") return Activation::none;
  throw ConfigError("unknown activation '" + std::string(name) + "'");
}

namespace {

void check_layer_shape(const DenseLayer& layer) {
  if (layer.bias.size() != layer.out()) {
    throw DimensionError("layer bias length " + std::to_string(layer.bias.size()) +
                         " != output width " + std::to_string(layer.out()));
  }
}

}  // namespace

// Every output entry is accumulated as bias + x0*w0 + x1*w1 + ... in input
// order, skipping zero inputs, whichever loop shape is used. Single-row and
// batched evaluation of the same row therefore agree bitwise.
Matrix affine(const DenseLayer& layer, const Matrix& input) {
  check_layer_shape(layer);
  if (input.cols() != layer.in()) {
    throw DimensionError("dense layer expects " + std::to_string(layer.in()) +
                         " input columns, got " + std::to_string(input.cols()));
  }
  const std::size_t n_in = layer.in();
  const std::size_t n_out = layer.out();
  Matrix out(input.rows(), n_out);

  if (input.rows() <= 1) {
    for (std::size_t b = 0; b < input.rows(); ++b) {
      const auto x = input.row(b);
      auto y = out.row(b);
      for (std::size_t o = 0; o < n_out; ++o) {
        const auto w = layer.weights.row(o);
        double acc = layer.bias[o];
        for (std::size_t i = 0; i < n_in; ++i) {
          if (x[i] != 0.0) acc += x[i] * w[i];
        }
        y[o] = acc;
      }
    }
    return out;
  }

  std::vector<double> wt(n_in * n_out);
  for (std::size_t o = 0; o < n_out; ++o) {
    const auto w = layer.weights.row(o);
    for (std::size_t i = 0; i < n_in; ++i) wt[i * n_out + o] = w[i];
  }
  for (std::size_t b = 0; b < input.rows(); ++b) {
    const auto x = input.row(b);
    double* y = out.row(b).data();
    std::copy(layer.bias.begin(), layer.bias.end(), y);
    for (std::size_t i = 0; i < n_in; ++i) {
      const double xi = x[i];
      if (xi == 0.0) continue;
      const double* wrow = wt.data() + i * n_out;
      for (std::size_t o = 0; o < n_out; ++o) y[o] += xi * wrow[o];
    }
  }
  return out;
}

void apply_activation(Activation activation, Matrix& values) {
  switch (activation) {
    case Activation::relu:
      for (double& v : values.data()) v = v > 0.0 ? v : 0.0;
      break;
    case Activation::softmax:
      softmax_rows(values);
      break;
    case Activation::none:
      break;
  }
}

Matrix dense_forward(const DenseLayer& layer, const Matrix& input) {
  Matrix out = affine(layer, input);
  apply_activation(layer.activation, out);
  return out;
}

namespace {

void softmax_inplace(std::span<double> v) {
  const double peak = *std::ranges::max_element(v);
  double total = 0.0;
  for (double& x : v) {
    x = std::exp(x - peak);
    total += x;
  }
  for (double& x : v) x /= total;
}

}  // namespace

std::vector<double> softmax(std::span<const double> logits) {
  if (logits.size() < 2) throw DimensionError("softmax needs at least two logits");
  std::vector<double> out(logits.begin(), logits.end());
  softmax_inplace(out);
  return out;
}

void softmax_rows(Matrix& logits) {
  if (logits.cols() < 2) throw DimensionError("softmax needs at least two logits");
  for (std::size_t r = 0; r < logits.rows(); ++r) softmax_inplace(logits.row(r));
}

double nll_loss(const Matrix& probs, std::span<const std::size_t> labels) {
  if (labels.size() != probs.rows()) {
    throw DimensionError("nll_loss: " + std::to_string(labels.size()) + " labels for " +
                         std::to_string(probs.rows()) + " rows");
  }
  if (probs.rows() == 0) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < probs.rows(); ++i) {
    if (labels[i] >= probs.cols()) {
      throw IndexError("label " + std::to_string(labels[i]) + " out of range for " +
                       std::to_string(probs.cols()) + " classes");
    }
    total -= std::log(std::max(probs(i, labels[i]), kProbabilityFloor));
  }
  return total / static_cast<double>(probs.rows());
}

Matrix init_params(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  const double bound = std::sqrt(6.0 / static_cast<double>(rows + cols));
  Rng rng(seed);
  Matrix out(rows, cols);
  for (double& v : out.data()) v = rng.uniform(-bound, bound);
  return out;
}

Mlp::Mlp(std::vector<DenseLayer> layers) : layers_(std::move(layers)) {
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    check_layer_shape(layers_[k]);
    if (k + 1 < layers_.size()) {
      if (layers_[k].activation == Activation::softmax) {
        throw ConfigError("softmax is only permitted on the final layer");
      }
      if (layers_[k].out() != layers_[k + 1].in()) {
        throw DimensionError("layer " + std::to_string(k) + " outputs " +
                             std::to_string(layers_[k].out()) + " but layer " +
                             std::to_string(k + 1) + " expects " +
                             std::to_string(layers_[k + 1].in()));
      }
    }
  }
}

Mlp Mlp::glorot(std::size_t input_width, std::span<const std::size_t> widths,
                Activation hidden, Activation last, std::uint64_t seed) {
  if (widths.empty()) throw ConfigError("an MLP needs at least one layer");
  std::vector<DenseLayer> layers;
  std::size_t fan_in = input_width;
  for (std::size_t k = 0; k < widths.size(); ++k) {
    if (widths[k] == 0 || fan_in == 0) throw ConfigError("layer widths must be positive");
    DenseLayer layer;
    layer.weights = init_params(widths[k], fan_in, derive_seed(seed, k));
    layer.bias.assign(widths[k], 0.0);
    layer.activation = k + 1 == widths.size() ? last : hidden;
    layers.push_back(std::move(layer));
    fan_in = widths[k];
  }
  return Mlp(std::move(layers));
}

std::size_t Mlp::input_width() const { return layers_.empty() ? 0 : layers_.front().in(); }

std::size_t Mlp::output_width() const { return layers_.empty() ? 0 : layers_.back().out(); }

std::size_t Mlp::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += l.weights.size() + l.bias.size();
  return n;
}

std::vector<std::size_t> Mlp::widths() const {
  std::vector<std::size_t> out;
  for (const auto& l : layers_) out.push_back(l.out());
  return out;
}

Matrix Mlp::forward(const Matrix& input) const {
  if (layers_.empty()) throw ConfigError("forward on an empty MLP");
  Matrix x = dense_forward(layers_.front(), input);
  for (std::size_t k = 1; k < layers_.size(); ++k) x = dense_forward(layers_[k], x);
  return x;
}

std::vector<std::span<double>> Mlp::parameters() {
  std::vector<std::span<double>> out;
  for (auto& l : layers_) {
    out.emplace_back(l.weights.data());
    out.emplace_back(l.bias);
  }
  return out;
}

bool operator==(const Mlp& a, const Mlp& b) {
  if (a.layers_.size() != b.layers_.size()) return false;
  for (std::size_t k = 0; k < a.layers_.size(); ++k) {
    const auto& x = a.layers_[k];
    const auto& y = b.layers_[k];
    if (x.activation != y.activation || !(x.weights == y.weights) || x.bias != y.bias) {
      return false;
    }
  }
  return true;
}

MlpTrace forward_trace(const Mlp& mlp, const Matrix& input) {
  if (mlp.depth() == 0) throw ConfigError("forward on an empty MLP");
  MlpTrace trace;
  trace.inputs.reserve(mlp.depth());
  trace.preactivations.reserve(mlp.depth());
  Matrix x = input;
  for (const auto& layer : mlp.layers()) {
    Matrix pre = affine(layer, x);
    Matrix post = pre;
    apply_activation(layer.activation, post);
    trace.inputs.push_back(std::move(x));
    trace.preactivations.push_back(std::move(pre));
    x = std::move(post);
  }
  trace.output = std::move(x);
  return trace;
}

MlpGrads MlpGrads::zeros_like(const Mlp& mlp) {
  MlpGrads g;
  for (const auto& l : mlp.layers()) {
    g.layers.push_back({Matrix(l.out(), l.in()), std::vector<double>(l.out(), 0.0)});
  }
  return g;
}

std::vector<std::span<const double>> MlpGrads::views() const {
  std::vector<std::span<const double>> out;
  for (const auto& l : layers) {
    out.emplace_back(l.weights.data());
    out.emplace_back(l.bias);
  }
  return out;
}

void MlpGrads::add(const MlpGrads& other) {
  if (other.layers.size() != layers.size()) throw DimensionError("gradient depth mismatch");
  for (std::size_t k = 0; k < layers.size(); ++k) {
    auto dst = layers[k].weights.data();
    const auto src = other.layers[k].weights.data();
    if (dst.size() != src.size() || layers[k].bias.size() != other.layers[k].bias.size()) {
      throw DimensionError("gradient shape mismatch");
    }
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
    for (std::size_t i = 0; i < layers[k].bias.size(); ++i) {
      layers[k].bias[i] += other.layers[k].bias[i];
    }
  }
}

void MlpGrads::scale(double factor) {
  for (auto& l : layers) {
    for (double& v : l.weights.data()) v *= factor;
    for (double& v : l.bias) v *= factor;
  }
}

namespace {

// Turns a gradient w.r.t. a layer's output into one w.r.t. its pre-activation.
Matrix through_activation(Activation activation, const Matrix& pre, const Matrix& grad) {
  Matrix delta = grad;
  switch (activation) {
    case Activation::relu: {
      auto d = delta.data();
      const auto p = pre.data();
      for (std::size_t i = 0; i < d.size(); ++i) {
        if (!(p[i] > 0.0)) d[i] = 0.0;
      }
      break;
    }
    case Activation::softmax: {
      Matrix probs = pre;
      softmax_rows(probs);
      for (std::size_t r = 0; r < delta.rows(); ++r) {
        auto d = delta.row(r);
        const auto p = probs.row(r);
        double dot = 0.0;
        for (std::size_t j = 0; j < d.size(); ++j) dot += d[j] * p[j];
        for (std::size_t j = 0; j < d.size(); ++j) d[j] = p[j] * (d[j] - dot);
      }
      break;
    }
    case Activation::none:
      break;
  }
  return delta;
}

}  // namespace

Backprop backward(const Mlp& mlp, const MlpTrace& trace, const Matrix& upstream,
                  GradientAt at) {
  const auto& layers = mlp.layers();
  if (trace.inputs.size() != layers.size() || trace.preactivations.size() != layers.size()) {
    throw DimensionError("trace does not match network depth");
  }
  if (upstream.rows() != trace.output.rows() || upstream.cols() != mlp.output_width()) {
    throw DimensionError("upstream gradient shape does not match network output");
  }

  Backprop result;
  result.grads.layers.resize(layers.size());

  Matrix delta = at == GradientAt::logits
                     ? upstream
                     : through_activation(layers.back().activation,
                                          trace.preactivations.back(), upstream);

  for (std::size_t k = layers.size(); k-- > 0;) {
    const auto& layer = layers[k];
    const Matrix& x = trace.inputs[k];
    const std::size_t n_in = layer.in();
    const std::size_t n_out = layer.out();

    LayerGrads g{Matrix(n_out, n_in), std::vector<double>(n_out, 0.0)};
    for (std::size_t b = 0; b < delta.rows(); ++b) {
      const auto d = delta.row(b);
      const auto xb = x.row(b);
      for (std::size_t o = 0; o < n_out; ++o) {
        const double dbo = d[o];
        if (dbo == 0.0) continue;
        g.bias[o] += dbo;
        auto gw = g.weights.row(o);
        for (std::size_t i = 0; i < n_in; ++i) gw[i] += dbo * xb[i];
      }
    }

    Matrix input_grad(delta.rows(), n_in);
    for (std::size_t b = 0; b < delta.rows(); ++b) {
      const auto d = delta.row(b);
      auto gi = input_grad.row(b);
      for (std::size_t o = 0; o < n_out; ++o) {
        const double dbo = d[o];
        if (dbo == 0.0) continue;
        const auto w = layer.weights.row(o);
        for (std::size_t i = 0; i < n_in; ++i) gi[i] += dbo * w[i];
      }
    }
    result.grads.layers[k] = std::move(g);

    if (k == 0) {
      result.input_grad = std::move(input_grad);
    } else {
      delta = through_activation(layers[k - 1].activation, trace.preactivations[k - 1],
                                 input_grad);
    }
  }
  return result;
}

Matrix softmax_nll_logit_grad(const Matrix& probs, std::span<const std::size_t> labels) {
  if (labels.size() != probs.rows()) throw DimensionError("label count != batch size");
  Matrix grad = probs;
  const double inv_batch = 1.0 / static_cast<double>(probs.rows());
  for (std::size_t i = 0; i < probs.rows(); ++i) {
    if (labels[i] >= probs.cols()) throw IndexError("label index out of range");
    grad(i, labels[i]) -= 1.0;
    for (double& v : grad.row(i)) v *= inv_batch;
  }
  return grad;
}

LossAndGrads loss_gradients(const Mlp& mlp, const Matrix& input,
                            std::span<const std::size_t> labels) {
  if (mlp.depth() == 0 || mlp.layers().back().activation != Activation::softmax) {
    throw ConfigError("loss_gradients requires a softmax output layer");
  }
  const MlpTrace trace = forward_trace(mlp, input);
  LossAndGrads out;
  out.loss = nll_loss(trace.output, labels);
  out.grads = backward(mlp, trace, softmax_nll_logit_grad(trace.output, labels),
                       GradientAt::logits)
                  .grads;
  return out;
}

}  // namespace sparsesense
