#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sparsesense/baseline.hpp"
#include "sparsesense/data.hpp"
#include "sparsesense/set_model.hpp"

namespace sparsesense {

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;    // true members
  std::size_t predicted = 0;  // predicted members
  /// Precision or recall undefined (no predictions or no support); the
  /// undefined quantity and F are reported as 0.
  bool degenerate = false;
};

/// confusion[t][p] counts segments of true class t predicted as p. Macro
/// metrics are unweighted means over all classes.
struct EvalReport {
  std::vector<std::vector<std::size_t>> confusion;
  std::vector<ClassMetrics> per_class;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  double accuracy = 0.0;

  std::size_t classes() const { return confusion.size(); }
  std::size_t total() const;
};

EvalReport report_from_confusion(std::vector<std::vector<std::size_t>> confusion);
EvalReport evaluate_predictions(std::span<const std::size_t> truth,
                                std::span<const std::size_t> predicted, std::size_t classes);

EvalReport evaluate(const SetModel& model, std::span<const SparseSegment> segments);
EvalReport evaluate(const DenseBaselineModel& model, std::span<const SparseSegment> segments);

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
};

MeanStd mean_std(std::span<const double> values);

}  // namespace sparsesense
