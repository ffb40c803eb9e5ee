#include "sparsesense/interp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sparsesense/error.hpp"

namespace sparsesense {

std::string_view to_string(InterpKind kind) {
  switch (kind) {
    case InterpKind::linear:
      return "linear";
    case InterpKind::previous:
      return "previous";
    case InterpKind::quadratic_spline:
      return "quadratic";
    case InterpKind::cubic_spline:
      return "cubic";
    case InterpKind::constant:
      return "constant";
  }
  return "linear";
}

InterpKind parse_interp_kind(std::string_view name) {
  if (name == "linear") return InterpKind::linear;
  if (name == "previous") return InterpKind::previous;
  if (name == "quadratic" || name == "quadratic_spline") return InterpKind::quadratic_spline;
  if (name == "cubic" || name == "cubic_spline") return InterpKind::cubic_spline;
  if (name == "constant") return InterpKind::constant;
  throw ConfigError("unknown interpolation kind '" + std::string(name) + "'");
}

std::size_t min_knots(InterpKind kind) {
  switch (kind) {
    case InterpKind::cubic_spline:
      return 4;
    case InterpKind::quadratic_spline:
      return 3;
    case InterpKind::linear:
    case InterpKind::previous:
      return 2;
    case InterpKind::constant:
      return 1;
  }
  return 1;
}

InterpKind fallback_kind(InterpKind requested, std::size_t knots) {
  InterpKind kind = requested;
  while (min_knots(kind) > knots) {
    switch (kind) {
      case InterpKind::cubic_spline:
        kind = InterpKind::quadratic_spline;
        break;
      case InterpKind::quadratic_spline:
        kind = InterpKind::linear;
        break;
      case InterpKind::linear:
        kind = InterpKind::previous;
        break;
      case InterpKind::previous:
      case InterpKind::constant:
        kind = InterpKind::constant;
        if (knots == 0) throw EmptySegmentError("interpolation needs at least one knot");
        return kind;
    }
  }
  return kind;
}

namespace {

void check_knots(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionError("knot x and y lengths differ");
  if (x.empty()) throw EmptySegmentError("interpolation needs at least one knot");
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) throw InputError("knot abscissae must be strictly increasing");
  }
}

// Thomas algorithm for a tridiagonal system; sub[0] and super.back() unused.
std::vector<double> solve_tridiagonal(std::vector<double> sub, std::vector<double> diag,
                                      std::vector<double> super, std::vector<double> rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double w = sub[i] / diag[i - 1];
    diag[i] -= w * super[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  std::vector<double> out(n);
  out[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) out[i] = (rhs[i] - super[i] * out[i + 1]) / diag[i];
  return out;
}

// Index j with x[j] <= t < x[j+1], clamped to [0, n-2]. Needs n >= 2.
std::size_t interval_of(std::span<const double> x, double t) {
  const auto it = std::upper_bound(x.begin(), x.end(), t);
  const auto j = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - x.begin() - 1, 0));
  return std::min(j, x.size() - 2);
}

bool same_instant(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b));
}

}  // namespace

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y, SplineEnds ends,
                         double start_slope, double end_slope)
    : x_(std::move(x)), y_(std::move(y)) {
  check_knots(x_, y_);
  const std::size_t n = x_.size();
  if (n < 2) throw InputError("a cubic spline needs at least two knots");
  m_.assign(n, 0.0);

  std::vector<double> h(n - 1), slope(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    slope[i] = (y_[i + 1] - y_[i]) / h[i];
  }

  std::vector<double> sub(n, 0.0), diag(n, 1.0), super(n, 0.0), rhs(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    sub[i] = h[i - 1];
    diag[i] = 2.0 * (h[i - 1] + h[i]);
    super[i] = h[i];
    rhs[i] = 6.0 * (slope[i] - slope[i - 1]);
  }
  if (ends == SplineEnds::clamped) {
    diag[0] = 2.0 * h[0];
    super[0] = h[0];
    rhs[0] = 6.0 * (slope[0] - start_slope);
    sub[n - 1] = h[n - 2];
    diag[n - 1] = 2.0 * h[n - 2];
    rhs[n - 1] = 6.0 * (end_slope - slope[n - 2]);
  }
  // Natural ends keep rows 0 and n-1 as M = 0.
  m_ = solve_tridiagonal(std::move(sub), std::move(diag), std::move(super), std::move(rhs));
}

double CubicSpline::operator()(double t) const {
  if (t <= x_.front()) return y_.front();
  if (t >= x_.back()) return y_.back();
  const std::size_t i = interval_of(x_, t);
  if (same_instant(t, x_[i])) return y_[i];
  if (same_instant(t, x_[i + 1])) return y_[i + 1];
  const double h = x_[i + 1] - x_[i];
  const double a = x_[i + 1] - t;
  const double b = t - x_[i];
  return m_[i] * a * a * a / (6.0 * h) + m_[i + 1] * b * b * b / (6.0 * h) +
         (y_[i] - m_[i] * h * h / 6.0) * a / h + (y_[i + 1] - m_[i + 1] * h * h / 6.0) * b / h;
}

// Piece k lives on [mid_{k-1}, mid_k) around knot k and reads
//   P_k(t) = y_k + slope_k (t - x_k) + curv_k (t - x_k)^2.
// Value and slope continuity at every midpoint give, for interior k,
//   h_{k-1} c_{k-1} + 3 (h_{k-1} + h_k) c_k + h_k c_{k+1} = 4 (D_k - D_{k-1}),
// with D_k the secant slope and c_0 = c_{n-1} = 0 at the ends.
QuadraticSpline::QuadraticSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  check_knots(x_, y_);
  const std::size_t n = x_.size();
  if (n < 2) throw InputError("a quadratic spline needs at least two knots");

  std::vector<double> h(n - 1), secant(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    secant[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  std::vector<double> sub(n, 0.0), diag(n, 1.0), super(n, 0.0), rhs(n, 0.0);
  for (std::size_t k = 1; k + 1 < n; ++k) {
    sub[k] = h[k - 1];
    diag[k] = 3.0 * (h[k - 1] + h[k]);
    super[k] = h[k];
    rhs[k] = 4.0 * (secant[k] - secant[k - 1]);
  }
  curv_ = solve_tridiagonal(std::move(sub), std::move(diag), std::move(super), std::move(rhs));

  slope_.assign(n, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    slope_[k] = secant[k] - (3.0 * curv_[k] + curv_[k + 1]) * h[k] / 4.0;
  }
  slope_[n - 1] = secant[n - 2] + (curv_[n - 2] + 3.0 * curv_[n - 1]) * h[n - 2] / 4.0;
}

double QuadraticSpline::operator()(double t) const {
  if (t <= x_.front()) return y_.front();
  if (t >= x_.back()) return y_.back();
  const std::size_t j = interval_of(x_, t);
  if (same_instant(t, x_[j])) return y_[j];
  if (same_instant(t, x_[j + 1])) return y_[j + 1];
  const double mid = 0.5 * (x_[j] + x_[j + 1]);
  const std::size_t k = t < mid ? j : j + 1;
  const double u = t - x_[k];
  return y_[k] + slope_[k] * u + curv_[k] * u * u;
}

std::vector<double> interpolate_channel(std::span<const double> x, std::span<const double> y,
                                        InterpKind kind, std::span<const double> query) {
  check_knots(x, y);
  kind = fallback_kind(kind, x.size());
  std::vector<double> out(query.size());

  switch (kind) {
    case InterpKind::constant:
      std::fill(out.begin(), out.end(), y.front());
      break;
    case InterpKind::linear:
    case InterpKind::previous:
      for (std::size_t q = 0; q < query.size(); ++q) {
        const double t = query[q];
        if (t <= x.front()) {
          out[q] = y.front();
        } else if (t >= x.back()) {
          out[q] = y.back();
        } else {
          const std::size_t j = interval_of(x, t);
          if (same_instant(t, x[j])) {
            out[q] = y[j];
          } else if (same_instant(t, x[j + 1])) {
            out[q] = y[j + 1];
          } else if (kind == InterpKind::previous) {
            out[q] = y[j];
          } else {
            const double u = (t - x[j]) / (x[j + 1] - x[j]);
            out[q] = y[j] + (y[j + 1] - y[j]) * u;
          }
        }
      }
      break;
    case InterpKind::quadratic_spline: {
      const QuadraticSpline s({x.begin(), x.end()}, {y.begin(), y.end()});
      for (std::size_t q = 0; q < query.size(); ++q) out[q] = s(query[q]);
      break;
    }
    case InterpKind::cubic_spline: {
      const CubicSpline s({x.begin(), x.end()}, {y.begin(), y.end()});
      for (std::size_t q = 0; q < query.size(); ++q) out[q] = s(query[q]);
      break;
    }
  }
  return out;
}

std::size_t grid_size(double window_len, double target_rate) {
  if (!(window_len > 0.0) || !(target_rate > 0.0)) {
    throw ConfigError("window length and target rate must be positive");
  }
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(window_len * target_rate)));
}

std::vector<double> make_grid(double window_start, double window_len, std::size_t m) {
  std::vector<double> grid(m);
  for (std::size_t j = 0; j < m; ++j) {
    grid[j] = window_start + static_cast<double>(j) * window_len / static_cast<double>(m);
  }
  return grid;
}

DenseSegment resample(const SparseSegment& segment, InterpKind kind, double target_rate) {
  const std::size_t n = segment.cardinality();
  if (n == 0) throw EmptySegmentError();
  const std::size_t d = segment.channel_count();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::ranges::stable_sort(order, [&](std::size_t a, std::size_t b) {
    return segment.timestamps[a] < segment.timestamps[b];
  });

  // Distinct knot times; duplicate timestamps are averaged.
  std::vector<double> knots;
  Matrix knot_values(0, d);
  std::vector<double> acc(d);
  for (std::size_t i = 0; i < n;) {
    const double t = segment.timestamps[order[i]];
    std::fill(acc.begin(), acc.end(), 0.0);
    std::size_t count = 0;
    for (; i < n && segment.timestamps[order[i]] == t; ++i, ++count) {
      const auto row = segment.values.row(order[i]);
      for (std::size_t j = 0; j < d; ++j) acc[j] += row[j];
    }
    if (count > 1) {
      for (double& v : acc) v /= static_cast<double>(count);
    }
    knots.push_back(t);
    knot_values.append_row(acc);
  }

  DenseSegment out;
  out.label = segment.label;
  out.used_kind = fallback_kind(kind, knots.size());
  out.grid = make_grid(segment.window_start, segment.window_len,
                       grid_size(segment.window_len, target_rate));
  out.values = Matrix(out.grid.size(), d);

  std::vector<double> channel(knots.size());
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < knots.size(); ++i) channel[i] = knot_values(i, j);
    const auto column = interpolate_channel(knots, channel, out.used_kind, out.grid);
    for (std::size_t g = 0; g < column.size(); ++g) out.values(g, j) = column[g];
  }
  return out;
}

double interpolation_error(const DenseSegment& dense, const DenseSegment& truth) {
  if (dense.grid.size() != truth.grid.size() || dense.values.rows() != truth.values.rows() ||
      dense.values.cols() != truth.values.cols()) {
    throw DimensionError("interpolation_error: grids differ in shape");
  }
  for (std::size_t g = 0; g < dense.grid.size(); ++g) {
    if (!same_instant(dense.grid[g], truth.grid[g])) {
      throw DimensionError("interpolation_error: grids differ in timing");
    }
  }
  if (dense.values.empty()) return 0.0;
  double total = 0.0;
  const auto a = dense.values.data();
  const auto b = truth.values.data();
  for (std::size_t i = 0; i < a.size(); ++i) total += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(total / static_cast<double>(a.size()));
}

}  // namespace sparsesense
