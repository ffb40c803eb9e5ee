#pragma once

#include <span>
#include <vector>

namespace sparsesense {

struct RmsPropConfig {
  double lr = 1e-4;
  double alpha = 0.99;
  double epsilon = 1e-8;
  double weight_decay = 0.0;

  void validate() const;
};

/// RMSProp with gradient-side L2 weight decay:
///   g' = g + weight_decay * theta
///   v  = alpha * v + (1 - alpha) * g'^2
///   theta -= lr * g' / (sqrt(v) + epsilon)
/// Accumulators are allocated on the first step and must keep matching the
/// parameter shapes afterwards.
class RmsProp {
 public:
  explicit RmsProp(RmsPropConfig config);

  void step(std::span<const std::span<double>> params,
            std::span<const std::span<const double>> grads);

  const RmsPropConfig& config() const { return config_; }
  void set_lr(double lr);
  const std::vector<std::vector<double>>& accumulators() const { return accumulators_; }

 private:
  RmsPropConfig config_;
  std::vector<std::vector<double>> accumulators_;
};

}  // namespace sparsesense
