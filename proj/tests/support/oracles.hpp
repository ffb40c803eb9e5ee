#pragma once

// Independent reference implementations used to check the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "sparsesense/data.hpp"

namespace sstest {

/// Softmax evaluated directly at extended precision (no max shift).
inline std::vector<long double> softmax_long(std::span<const double> logits) {
  std::vector<long double> e;
  long double sum = 0.0L;
  for (double v : logits) {
    e.push_back(std::exp(static_cast<long double>(v)));
    sum += e.back();
  }
  for (auto& v : e) v /= sum;
  return e;
}

/// Central difference of f with respect to `param`, restoring it afterwards.
inline double central_difference(const std::function<double()>& f, double& param, double h) {
  const double saved = param;
  param = saved + h;
  const double up = f();
  param = saved - h;
  const double down = f();
  param = saved;
  return (up - down) / (2.0 * h);
}

/// Relative error with an absolute floor so near-zero gradients compare sanely.
inline double relative_error(double a, double b, double floor = 1e-6) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

/// Solves A x = b by Gaussian elimination with partial pivoting.
inline std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (a[piv][col] == 0.0) throw std::runtime_error("singular system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

/// Cubic spline through (x, y) built from the full second-derivative system.
/// Natural ends unless clamped slopes are supplied.
class SplineOracle {
 public:
  SplineOracle(std::vector<double> x, std::vector<double> y, const double* start_slope = nullptr,
               const double* end_slope = nullptr)
      : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    std::vector<double> b(n, 0.0);
    auto h = [&](std::size_t i) { return x_[i + 1] - x_[i]; };
    auto slope = [&](std::size_t i) { return (y_[i + 1] - y_[i]) / h(i); };
    if (start_slope) {
      a[0][0] = 2.0 * h(0);
      a[0][1] = h(0);
      b[0] = 6.0 * (slope(0) - *start_slope);
    } else {
      a[0][0] = 1.0;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
      a[i][i - 1] = h(i - 1);
      a[i][i] = 2.0 * (h(i - 1) + h(i));
      a[i][i + 1] = h(i);
      b[i] = 6.0 * (slope(i) - slope(i - 1));
    }
    if (end_slope) {
      a[n - 1][n - 2] = h(n - 2);
      a[n - 1][n - 1] = 2.0 * h(n - 2);
      b[n - 1] = 6.0 * (*end_slope - slope(n - 2));
    } else {
      a[n - 1][n - 1] = 1.0;
    }
    m_ = solve_dense(a, b);
  }

  double operator()(double t) const {
    std::size_t i = 0;
    while (i + 2 < x_.size() && t > x_[i + 1]) ++i;
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - t) / h;
    const double b = (t - x_[i]) / h;
    return a * y_[i] + b * y_[i + 1] +
           ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
  }

  const std::vector<double>& second_derivatives() const { return m_; }

 private:
  std::vector<double> x_, y_, m_;
};

/// Brute-force windowing: for each window start t0 + k*stride <= t_last,
/// collect the indices of readings inside [start, start + len).
struct OracleWindow {
  double start = 0.0;
  std::vector<std::size_t> members;
};

inline std::vector<OracleWindow> scan_windows(const sparsesense::SensorStream& stream, double len,
                                              double stride) {
  std::vector<OracleWindow> out;
  if (stream.readings.empty()) return out;
  const double t0 = stream.readings.front().timestamp;
  const double tl = stream.readings.back().timestamp;
  for (std::size_t k = 0;; ++k) {
    const double start = t0 + static_cast<double>(k) * stride;
    if (start > tl) break;
    OracleWindow w{start, {}};
    for (std::size_t i = 0; i < stream.readings.size(); ++i) {
      const double t = stream.readings[i].timestamp;
      if (t >= start && t < start + len) w.members.push_back(i);
    }
    out.push_back(std::move(w));
  }
  return out;
}

/// Majority label by explicit counting; ties to the lowest index.
inline std::size_t oracle_majority(const std::vector<std::size_t>& labels) {
  std::map<std::size_t, std::size_t> count;
  for (auto l : labels) ++count[l];
  std::size_t best = 0, best_n = 0;
  for (auto [l, n] : count)
    if (n > best_n) best = l, best_n = n;
  return best;
}

/// Per-class precision/recall/F from an expanded list of (truth, prediction)
/// pairs, computed by direct counting.
struct OracleMetrics {
  std::vector<double> precision, recall, f1;
  double macro_precision = 0.0, macro_recall = 0.0, macro_f1 = 0.0;
};

inline OracleMetrics oracle_metrics(const std::vector<std::vector<std::size_t>>& confusion) {
  const std::size_t c = confusion.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t t = 0; t < c; ++t)
    for (std::size_t p = 0; p < c; ++p)
      for (std::size_t k = 0; k < confusion[t][p]; ++k) pairs.emplace_back(t, p);
  OracleMetrics m;
  for (std::size_t cls = 0; cls < c; ++cls) {
    double tp = 0, fp = 0, fn = 0;
    for (auto [t, p] : pairs) {
      if (t == cls && p == cls) tp += 1;
      else if (p == cls) fp += 1;
      else if (t == cls) fn += 1;
    }
    const double prec = tp + fp > 0 ? tp / (tp + fp) : 0.0;
    const double rec = tp + fn > 0 ? tp / (tp + fn) : 0.0;
    const double f = prec + rec > 0 ? 2 * prec * rec / (prec + rec) : 0.0;
    m.precision.push_back(prec);
    m.recall.push_back(rec);
    m.f1.push_back(f);
  }
  for (std::size_t cls = 0; cls < c; ++cls) {
    m.macro_precision += m.precision[cls] / static_cast<double>(c);
    m.macro_recall += m.recall[cls] / static_cast<double>(c);
    m.macro_f1 += m.f1[cls] / static_cast<double>(c);
  }
  return m;
}

}  // namespace sstest
