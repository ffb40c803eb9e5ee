#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "sparsesense/error.hpp"
#include "sparsesense/rmsprop.hpp"

using namespace sparsesense;

namespace {

void step(RmsProp& opt, std::vector<double>& theta, const std::vector<double>& g) {
  const std::vector<std::span<double>> params{std::span<double>(theta)};
  const std::vector<std::span<const double>> grads{std::span<const double>(g)};
  opt.step(params, grads);
}

}  // namespace

TEST(RmsProp, ZeroGradientLeavesParamsAndDecaysAccumulator) {
  RmsProp opt({0.01, 0.9, 1e-8, 0.0});
  std::vector<double> theta{1.0, -2.0};
  step(opt, theta, {1.0, 2.0});
  const auto v0 = opt.accumulators()[0];
  const auto after_first = theta;
  step(opt, theta, {0.0, 0.0});
  EXPECT_EQ(theta, after_first);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_DOUBLE_EQ(opt.accumulators()[0][i], 0.9 * v0[i]);
}

TEST(RmsProp, HandEvaluatedFirstStep) {
  RmsProp opt({0.001, 0.99, 1e-8, 0.0});
  std::vector<double> theta{0.0};
  step(opt, theta, {1.0});
  EXPECT_NEAR(opt.accumulators()[0][0], 0.01, 1e-17);
  EXPECT_NEAR(theta[0], -0.001 / (0.1 + 1e-8), 1e-16);
  EXPECT_NEAR(theta[0], -0.0099999990, 1e-10);
}

TEST(RmsProp, AccumulatorFollowsGeometricRecursion) {
  const double alpha = 0.99;
  RmsProp opt({0.0, alpha, 1e-8, 0.0});
  std::vector<double> theta{0.5};
  double v = 0.0;
  for (int k = 0; k < 20; ++k) {
    step(opt, theta, {1.0});
    v = alpha * v + (1 - alpha);
    EXPECT_NEAR(opt.accumulators()[0][0], v, 1e-15);
    EXPECT_NEAR(opt.accumulators()[0][0], 1.0 - std::pow(alpha, k + 1), 1e-13);
  }
}

TEST(RmsProp, WeightDecayAddsToGradient) {
  RmsProp opt({0.1, 0.5, 1e-8, 0.25});
  std::vector<double> theta{2.0};
  step(opt, theta, {1.0});
  const double g = 1.0 + 0.25 * 2.0;
  const double v = 0.5 * g * g;
  EXPECT_DOUBLE_EQ(opt.accumulators()[0][0], v);
  EXPECT_DOUBLE_EQ(theta[0], 2.0 - 0.1 * g / (std::sqrt(v) + 1e-8));
}

TEST(RmsProp, ZeroLearningRateIsBitwiseIdentity) {
  sstest::Gen gen(3);
  RmsProp opt({0.0, 0.99, 1e-8, 1e-4});
  auto theta = sstest::random_vector(gen, 50);
  const auto original = theta;
  for (int k = 0; k < 10; ++k) step(opt, theta, sstest::random_vector(gen, 50));
  EXPECT_EQ(theta, original);
}

TEST(RmsProp, AccumulatorsStayNonnegative) {
  sstest::Gen gen(5);
  RmsProp opt({1e-3, 0.9, 1e-8, 1e-4});
  auto theta = sstest::random_vector(gen, 30);
  for (int k = 0; k < 50; ++k) {
    step(opt, theta, sstest::random_vector(gen, 30, -5, 5));
    for (double v : opt.accumulators()[0]) ASSERT_GE(v, 0.0);
  }
}

TEST(RmsProp, ShapeMismatchIsDimensionError) {
  RmsProp opt({0.1, 0.9, 1e-8, 0.0});
  std::vector<double> theta{1.0, 2.0};
  EXPECT_THROW(step(opt, theta, {1.0}), DimensionError);
}

TEST(RmsProp, InvalidConfigRejected) {
  EXPECT_THROW(RmsProp({-1.0, 0.9, 1e-8, 0.0}), ConfigError);
  EXPECT_THROW(RmsProp({0.1, 1.0, 1e-8, 0.0}), ConfigError);
  EXPECT_THROW(RmsProp({0.1, 0.9, 0.0, 0.0}), ConfigError);
  EXPECT_THROW(RmsProp({0.1, 0.9, 1e-8, -1.0}), ConfigError);
}
