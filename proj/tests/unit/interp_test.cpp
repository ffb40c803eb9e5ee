#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "oracles.hpp"
#include "sparsesense/error.hpp"
#include "sparsesense/interp.hpp"

using namespace sparsesense;

namespace {

std::vector<double> eval(const std::vector<double>& x, const std::vector<double>& y, InterpKind k,
                         const std::vector<double>& q) {
  return interpolate_channel(x, y, k, q);
}

std::vector<double> sorted_knots(sstest::Gen& gen, std::size_t n) {
  std::vector<double> x;
  double t = sstest::uniform(gen, -1, 1);
  for (std::size_t i = 0; i < n; ++i) {
    x.push_back(t);
    t += sstest::uniform(gen, 0.05, 1.0);
  }
  return x;
}

}  // namespace

TEST(Interp, LinearMidpoint) {
  EXPECT_EQ(eval({0, 2}, {0, 4}, InterpKind::linear, {1})[0], 2.0);
}

TEST(Interp, PreviousStep) {
  EXPECT_EQ(eval({0, 2}, {1, 5}, InterpKind::previous, {1})[0], 1.0);
}

TEST(Interp, NaturalCubicMatchesDenseOracle) {
  std::vector<double> x{0, 0.5, 1, 1.5, 2}, y;
  for (double t : x) y.push_back(t * t * t - 2 * t);
  const sstest::SplineOracle oracle(x, y);
  const CubicSpline spline(x, y);
  for (int i = 0; i <= 200; ++i) {
    const double t = 2.0 * i / 200.0;
    EXPECT_NEAR(spline(t), oracle(t), 1e-9) << t;
  }
  for (std::size_t i = 0; i < x.size(); ++i)
    EXPECT_NEAR(spline.curvatures()[i], oracle.second_derivatives()[i], 1e-12);
}

TEST(Interp, CubicReproducesCubicPolynomialWithMatchingEnds) {
  sstest::Gen gen(8);
  for (int trial = 0; trial < 100; ++trial) {
    const double a = sstest::uniform(gen, -2, 2), b = sstest::uniform(gen, -2, 2),
                 c = sstest::uniform(gen, -2, 2), d = sstest::uniform(gen, -2, 2);
    const auto f = [&](double t) { return ((a * t + b) * t + c) * t + d; };
    const auto df = [&](double t) { return (3 * a * t + 2 * b) * t + c; };
    const auto x = sorted_knots(gen, sstest::pick(gen, 4, 12));
    std::vector<double> y;
    for (double t : x) y.push_back(f(t));
    const CubicSpline s(x, y, SplineEnds::clamped, df(x.front()), df(x.back()));
    for (int i = 0; i <= 50; ++i) {
      const double t = x.front() + (x.back() - x.front()) * i / 50.0;
      EXPECT_NEAR(s(t), f(t), 1e-8);
    }
  }
}

TEST(Interp, NaturalCubicReproducesLines) {
  sstest::Gen gen(9);
  for (int trial = 0; trial < 100; ++trial) {
    const double m = sstest::uniform(gen, -3, 3), q = sstest::uniform(gen, -3, 3);
    const auto x = sorted_knots(gen, sstest::pick(gen, 4, 10));
    std::vector<double> y;
    for (double t : x) y.push_back(m * t + q);
    const CubicSpline s(x, y);
    for (int i = 0; i <= 40; ++i) {
      const double t = x.front() + (x.back() - x.front()) * i / 40.0;
      EXPECT_NEAR(s(t), m * t + q, 1e-9);
    }
  }
}

TEST(Interp, KnotValuesReproducedByEveryKind) {
  sstest::Gen gen(10);
  for (auto kind : {InterpKind::linear, InterpKind::previous, InterpKind::quadratic_spline,
                    InterpKind::cubic_spline}) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto x = sorted_knots(gen, sstest::pick(gen, 1, 15));
      const auto y = sstest::random_vector(gen, x.size(), -5, 5);
      const auto got = eval(x, y, kind, x);
      for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(got[i], y[i], 1e-9);
    }
  }
}

TEST(Interp, LinearBoundedAndMonotoneBetweenKnots) {
  sstest::Gen gen(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = sorted_knots(gen, sstest::pick(gen, 2, 8));
    const auto y = sstest::random_vector(gen, x.size(), -5, 5);
    for (std::size_t k = 0; k + 1 < x.size(); ++k) {
      std::vector<double> q;
      for (int i = 0; i <= 20; ++i) q.push_back(x[k] + (x[k + 1] - x[k]) * i / 20.0);
      const auto v = eval(x, y, InterpKind::linear, q);
      const double lo = std::min(y[k], y[k + 1]), hi = std::max(y[k], y[k + 1]);
      for (std::size_t i = 0; i < v.size(); ++i) {
        EXPECT_GE(v[i], lo - 1e-12);
        EXPECT_LE(v[i], hi + 1e-12);
        if (i > 0) {
          if (y[k + 1] >= y[k]) EXPECT_GE(v[i], v[i - 1] - 1e-12);
          else EXPECT_LE(v[i], v[i - 1] + 1e-12);
        }
      }
    }
  }
}

TEST(Interp, PreviousIsRightContinuousStep) {
  const std::vector<double> x{0, 1, 2}, y{3, 7, -1};
  const auto v = eval(x, y, InterpKind::previous, {0.0, 0.999, 1.0, 1.5, 2.0, 3.0});
  EXPECT_EQ(v, (std::vector<double>{3, 3, 7, 7, -1, -1}));
}

TEST(Interp, HoldFirstAndLastOutsideKnots) {
  for (auto kind : {InterpKind::linear, InterpKind::previous, InterpKind::quadratic_spline,
                    InterpKind::cubic_spline}) {
    const auto v = eval({1, 2, 3, 4}, {5, 6, 8, 7}, kind, {-10, 0.5, 4.5, 100});
    EXPECT_EQ(v, (std::vector<double>{5, 5, 7, 7})) << to_string(kind);
  }
}

TEST(Interp, QuadraticSplineIsC1AndReproducesLines) {
  sstest::Gen gen(12);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = sorted_knots(gen, sstest::pick(gen, 3, 10));
    const auto y = sstest::random_vector(gen, x.size(), -3, 3);
    const QuadraticSpline s(x, y);
    for (std::size_t k = 0; k + 1 < x.size(); ++k) {
      const double mid = 0.5 * (x[k] + x[k + 1]);
      const double h = 1e-7;
      const double left = (s(mid - h) - s(mid - 2 * h)) / h;
      const double right = (s(mid + 2 * h) - s(mid + h)) / h;
      // Both pieces extrapolated to the breakpoint agree.
      EXPECT_NEAR(s(mid - h) + h * left, s(mid + h) - h * right, 1e-7);
      EXPECT_NEAR(left, right, 1e-4 * std::max(1.0, std::abs(left)));
    }
    std::vector<double> line;
    for (double t : x) line.push_back(2 * t - 1);
    const QuadraticSpline l(x, line);
    for (int i = 0; i <= 30; ++i) {
      const double t = x.front() + (x.back() - x.front()) * i / 30.0;
      EXPECT_NEAR(l(t), 2 * t - 1, 1e-10);
    }
  }
}

TEST(Interp, FallbackChain) {
  EXPECT_EQ(fallback_kind(InterpKind::cubic_spline, 4), InterpKind::cubic_spline);
  EXPECT_EQ(fallback_kind(InterpKind::cubic_spline, 3), InterpKind::quadratic_spline);
  EXPECT_EQ(fallback_kind(InterpKind::cubic_spline, 2), InterpKind::linear);
  EXPECT_EQ(fallback_kind(InterpKind::quadratic_spline, 2), InterpKind::linear);
  EXPECT_EQ(fallback_kind(InterpKind::previous, 2), InterpKind::previous);
  EXPECT_EQ(fallback_kind(InterpKind::linear, 1), InterpKind::constant);
  EXPECT_EQ(fallback_kind(InterpKind::previous, 1), InterpKind::constant);
}

TEST(Interp, KindNames) {
  EXPECT_EQ(parse_interp_kind("cubic"), InterpKind::cubic_spline);
  EXPECT_EQ(parse_interp_kind("cubic_spline"), InterpKind::cubic_spline);
  EXPECT_EQ(parse_interp_kind("quadratic"), InterpKind::quadratic_spline);
  EXPECT_EQ(parse_interp_kind("previous"), InterpKind::previous);
  EXPECT_THROW(parse_interp_kind("akima"), InputError);
}

TEST(Resample, GridContract) {
  EXPECT_EQ(grid_size(2.0, 20.0), 40u);
  EXPECT_EQ(grid_size(0.01, 20.0), 1u);
  const auto g = make_grid(10.0, 2.0, 4);
  EXPECT_EQ(g, (std::vector<double>{10.0, 10.5, 11.0, 11.5}));
}

TEST(Resample, AlignedUniformSegmentIsBitwiseIdentity) {
  sstest::Gen gen(13);
  for (auto kind : {InterpKind::linear, InterpKind::previous, InterpKind::quadratic_spline,
                    InterpKind::cubic_spline}) {
    SparseSegment seg;
    seg.window_start = 4.0;
    seg.window_len = 2.0;
    seg.label = 1;
    for (int j = 0; j < 40; ++j) seg.add({4.0 + j * 2.0 / 40, sstest::random_vector(gen, 3)});
    const auto dense = resample(seg, kind, 20.0);
    EXPECT_EQ(dense.values, seg.values) << to_string(kind);
    EXPECT_EQ(dense.label, 1u);
    EXPECT_EQ(dense.used_kind, kind);
  }
}

TEST(Resample, FallbackRecordedAndDuplicatesAveraged) {
  SparseSegment seg;
  seg.window_len = 1.0;
  seg.add({0.25, {1.0}});
  seg.add({0.25, {3.0}});
  const auto dense = resample(seg, InterpKind::cubic_spline, 4.0);
  EXPECT_EQ(dense.used_kind, InterpKind::constant);
  for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(dense.values(j, 0), 2.0);
}

TEST(Resample, EmptySegmentRejected) {
  SparseSegment seg;
  seg.window_len = 1.0;
  EXPECT_THROW(resample(seg, InterpKind::linear, 10.0), EmptySegmentError);
}

TEST(InterpolationError, Examples) {
  DenseSegment a{{0, 1}, Matrix::from_rows({{0}, {2}}), 0, InterpKind::linear};
  DenseSegment b{{0, 1}, Matrix::from_rows({{1}, {1}}), 0, InterpKind::linear};
  EXPECT_EQ(interpolation_error(a, a), 0.0);
  EXPECT_EQ(interpolation_error(a, b), 1.0);
  DenseSegment shifted = a;
  for (auto& v : shifted.values.data()) v += 1.0;
  EXPECT_EQ(interpolation_error(shifted, a), 1.0);
  DenseSegment other{{0, 2}, Matrix::from_rows({{1}, {1}}), 0, InterpKind::linear};
  EXPECT_THROW(interpolation_error(a, other), DimensionError);
}
