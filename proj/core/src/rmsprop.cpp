#include "sparsesense/rmsprop.hpp"

#include <cmath>
#include <string>

#include "sparsesense/error.hpp"

namespace sparsesense {

void RmsPropConfig::validate() const {
  if (!(lr >= 0.0) || !std::isfinite(lr)) throw ConfigError("learning rate must be >= 0");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("RMSProp alpha must lie in (0, 1)");
  if (!(epsilon > 0.0)) throw ConfigError("RMSProp epsilon must be positive");
  if (!(weight_decay >= 0.0)) throw ConfigError("weight decay must be >= 0");
}

RmsProp::RmsProp(RmsPropConfig config) : config_(config) { config_.validate(); }

void RmsProp::set_lr(double lr) {
  if (!(lr >= 0.0)) throw ConfigError("learning rate must be >= 0");
  config_.lr = lr;
}

void RmsProp::step(std::span<const std::span<double>> params,
                   std::span<const std::span<const double>> grads) {
  if (params.size() != grads.size()) {
    throw DimensionError("rmsprop: " + std::to_string(params.size()) + " parameter buffers but " +
                         std::to_string(grads.size()) + " gradient buffers");
  }
  if (accumulators_.empty()) {
    for (const auto& p : params) accumulators_.emplace_back(p.size(), 0.0);
  }
  if (accumulators_.size() != params.size()) {
    throw DimensionError("rmsprop: parameter list changed between steps");
  }

  const double lr = config_.lr;
  const double alpha = config_.alpha;
  const double eps = config_.epsilon;
  const double decay = config_.weight_decay;

  for (std::size_t k = 0; k < params.size(); ++k) {
    auto theta = params[k];
    const auto g = grads[k];
    auto& v = accumulators_[k];
    if (theta.size() != g.size() || theta.size() != v.size()) {
      throw DimensionError("rmsprop: buffer " + std::to_string(k) + " shape mismatch");
    }
    for (std::size_t i = 0; i < theta.size(); ++i) {
      const double gi = g[i] + decay * theta[i];
      v[i] = alpha * v[i] + (1.0 - alpha) * gi * gi;
      const double update = lr * gi / (std::sqrt(v[i]) + eps);
      // A zero update must not flip the sign of a zero parameter.
      if (update != 0.0) theta[i] -= update;
    }
  }
}

}  // namespace sparsesense
