#include "sparsesense/metrics.hpp"

#include <cmath>
#include <numeric>

#include "sparsesense/error.hpp"

namespace sparsesense {

std::size_t EvalReport::total() const {
  std::size_t n = 0;
  for (const auto& row : confusion) n += std::accumulate(row.begin(), row.end(), std::size_t{0});
  return n;
}

EvalReport report_from_confusion(std::vector<std::vector<std::size_t>> confusion) {
  const std::size_t c = confusion.size();
  for (const auto& row : confusion) {
    if (row.size() != c) throw DimensionError("confusion matrix must be square");
  }
  EvalReport r;
  r.confusion = std::move(confusion);
  r.per_class.resize(c);
  std::size_t correct = 0;
  for (std::size_t k = 0; k < c; ++k) {
    auto& m = r.per_class[k];
    const std::size_t tp = r.confusion[k][k];
    correct += tp;
    for (std::size_t j = 0; j < c; ++j) {
      m.support += r.confusion[k][j];
      m.predicted += r.confusion[j][k];
    }
    m.degenerate = m.support == 0 || m.predicted == 0;
    m.precision = m.predicted ? static_cast<double>(tp) / static_cast<double>(m.predicted) : 0.0;
    m.recall = m.support ? static_cast<double>(tp) / static_cast<double>(m.support) : 0.0;
    const double denom = m.precision + m.recall;
    m.f1 = denom > 0.0 ? 2.0 * m.precision * m.recall / denom : 0.0;
  }
  if (c > 0) {
    for (const auto& m : r.per_class) {
      r.macro_precision += m.precision;
      r.macro_recall += m.recall;
      r.macro_f1 += m.f1;
    }
    r.macro_precision /= static_cast<double>(c);
    r.macro_recall /= static_cast<double>(c);
    r.macro_f1 /= static_cast<double>(c);
  }
  const std::size_t n = r.total();
  r.accuracy = n ? static_cast<double>(correct) / static_cast<double>(n) : 0.0;
  return r;
}

EvalReport evaluate_predictions(std::span<const std::size_t> truth,
                                std::span<const std::size_t> predicted, std::size_t classes) {
  if (truth.size() != predicted.size()) throw DimensionError("truth/prediction length mismatch");
  std::vector<std::vector<std::size_t>> confusion(classes, std::vector<std::size_t>(classes, 0));
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] >= classes || predicted[i] >= classes) throw IndexError("class index out of range");
    ++confusion[truth[i]][predicted[i]];
  }
  return report_from_confusion(std::move(confusion));
}

namespace {

// Predictions in chunks so large evaluation sets still use batched matmuls.
template <typename Model, typename BatchForward>
EvalReport evaluate_with(const Model& model, std::span<const SparseSegment> segments,
                         BatchForward batch_forward) {
  constexpr std::size_t kChunk = 128;
  std::vector<std::size_t> predicted;
  predicted.reserve(segments.size());
  for (std::size_t start = 0; start < segments.size(); start += kChunk) {
    const auto chunk = segments.subspan(start, std::min(kChunk, segments.size() - start));
    const Matrix probs = batch_forward(model, chunk);
    for (std::size_t b = 0; b < probs.rows(); ++b) predicted.push_back(argmax_lowest(probs.row(b)));
  }
  const auto truth = labels_of(segments);
  return evaluate_predictions(truth, predicted, model.activities.size());
}

}  // namespace

EvalReport evaluate(const SetModel& model, std::span<const SparseSegment> segments) {
  return evaluate_with(model, segments, forward_batch);
}

EvalReport evaluate(const DenseBaselineModel& model, std::span<const SparseSegment> segments) {
  return evaluate_with(model, segments, baseline_forward_batch);
}

MeanStd mean_std(std::span<const double> values) {
  MeanStd out;
  if (values.empty()) return out;
  const double n = static_cast<double>(values.size());
  // Shifting by the first value keeps identical inputs exact (std == 0).
  const double pivot = values.front();
  double shifted = 0.0;
  for (double v : values) shifted += v - pivot;
  out.mean = pivot + shifted / n;
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.std = std::sqrt(ss / n);
  return out;
}

}  // namespace sparsesense
