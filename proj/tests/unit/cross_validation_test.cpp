#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "sparsesense/cross_validation.hpp"
#include "sparsesense/segmentation.hpp"

using namespace sparsesense;

namespace {

TrainConfig quick_config() {
  TrainConfig c;
  c.lr = 5e-3;
  c.total_epochs = 4;
  c.lr_drop_epoch = 3;
  c.batch_size = 32;
  return c;
}

}  // namespace

TEST(CrossValidation, FoldsPartitionSegmentsAndRecomputeAggregates) {
  const auto cfg = sstest::separable_config(300);
  const auto segs = segment(synth_sparse_stream(cfg, 1), 2.0, 2.0).segments;
  const auto summary = cross_validate(segs, cfg.activities, 4, quick_config(), SetArchitecture{{8}, {8}});
  ASSERT_EQ(summary.folds.size(), 4u);
  std::size_t validated = 0;
  std::vector<double> f1;
  for (const auto& f : summary.folds) {
    EXPECT_EQ(f.train_segments + f.validation_segments, segs.size());
    EXPECT_EQ(f.report.total(), f.validation_segments);
    EXPECT_EQ(f.loss_trace.size(), 4u);
    validated += f.validation_segments;
    f1.push_back(f.report.macro_f1);
  }
  EXPECT_EQ(validated, segs.size());
  const auto ms = mean_std(f1);
  EXPECT_EQ(summary.f1.mean, ms.mean);
  EXPECT_EQ(summary.f1.std, ms.std);
  EXPECT_NE(summary.folds[0].norm, summary.folds[1].norm);
}

TEST(CrossValidation, AggregateMatchesHandComputation) {
  std::vector<CvFold> folds(2);
  folds[0].report = report_from_confusion({{2, 0}, {0, 2}});
  folds[1].report = report_from_confusion({{1, 1}, {1, 1}});
  const auto s = aggregate_folds(folds);
  EXPECT_DOUBLE_EQ(s.f1.mean, 0.75);
  EXPECT_DOUBLE_EQ(s.f1.std, 0.25);
  EXPECT_DOUBLE_EQ(s.precision.mean, 0.75);
}

TEST(CrossValidation, BaselineProtocolRuns) {
  const auto cfg = sstest::separable_config(200);
  const auto segs = segment(synth_sparse_stream(cfg, 2), 2.0, 2.0).segments;
  BaselineArchitecture arch;
  arch.hidden = {8};
  const auto summary = cross_validate_baseline(segs, cfg.activities, 3, quick_config(), arch);
  ASSERT_EQ(summary.folds.size(), 3u);
  std::size_t validated = 0;
  for (const auto& f : summary.folds) validated += f.report.total();
  EXPECT_EQ(validated, segs.size());
}
