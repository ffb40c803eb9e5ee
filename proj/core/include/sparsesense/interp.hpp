#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "sparsesense/data.hpp"
#include "sparsesense/matrix.hpp"

namespace sparsesense {

/// Per-channel interpolants. `constant` is only produced by the fallback
/// chain, when a segment holds a single distinct timestamp.
enum class InterpKind { linear, previous, quadratic_spline, cubic_spline, constant };

std::string_view to_string(InterpKind kind);
InterpKind parse_interp_kind(std::string_view name);

/// Fewest distinct knots the kind needs before it falls back.
std::size_t min_knots(InterpKind kind);
/// cubic -> quadratic -> linear -> previous -> constant until `knots` suffice.
InterpKind fallback_kind(InterpKind requested, std::size_t knots);

enum class SplineEnds { natural, clamped };

/// Cubic spline through (x_i, y_i) with strictly increasing x. Natural ends set
/// the second derivative to zero at both ends; clamped ends fix the first
/// derivative to the given slopes.
class CubicSpline {
 public:
  CubicSpline(std::vector<double> x, std::vector<double> y, SplineEnds ends = SplineEnds::natural,
              double start_slope = 0.0, double end_slope = 0.0);

  double operator()(double t) const;
  /// Second derivatives at the knots.
  std::span<const double> curvatures() const { return m_; }

 private:
  std::vector<double> x_, y_, m_;
};

/// C1 quadratic spline through (x_i, y_i) with breakpoints at the data
/// midpoints and zero second derivative on the two end pieces.
class QuadraticSpline {
 public:
  QuadraticSpline(std::vector<double> x, std::vector<double> y);

  double operator()(double t) const;

 private:
  std::vector<double> x_, y_, slope_, curv_;
};

/// Evaluates one channel at `query` points. `x` strictly increasing, same
/// length as `y`, at least one knot. Queries before the first knot take y[0],
/// after the last knot y.back(); a query equal to a knot returns its value.
std::vector<double> interpolate_channel(std::span<const double> x, std::span<const double> y,
                                        InterpKind kind, std::span<const double> query);

/// A segment resampled onto the regular grid window_start + j * window_len / m.
struct DenseSegment {
  std::vector<double> grid;
  Matrix values;  // m x d
  std::size_t label = 0;
  InterpKind used_kind = InterpKind::linear;
};

/// Grid size round(rate * window_len), at least 1.
std::size_t grid_size(double window_len, double target_rate);
std::vector<double> make_grid(double window_start, double window_len, std::size_t m);

/// Interpolates every channel independently onto the regular grid. Readings
/// sharing a timestamp are merged by averaging. Kinds that need more knots
/// than available fall back (see fallback_kind); used_kind records the kind
/// actually applied.
DenseSegment resample(const SparseSegment& segment, InterpKind kind, double target_rate);

/// RMSE over every grid point and channel.
double interpolation_error(const DenseSegment& dense, const DenseSegment& truth);

}  // namespace sparsesense
