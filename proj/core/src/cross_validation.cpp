#include "sparsesense/cross_validation.hpp"

#include <chrono>

#include "sparsesense/random.hpp"

namespace sparsesense {

CvSummary aggregate_folds(std::vector<CvFold> folds) {
  CvSummary out;
  std::vector<double> p, r, f;
  for (const auto& fold : folds) {
    p.push_back(fold.report.macro_precision);
    r.push_back(fold.report.macro_recall);
    f.push_back(fold.report.macro_f1);
  }
  out.precision = mean_std(p);
  out.recall = mean_std(r);
  out.f1 = mean_std(f);
  out.folds = std::move(folds);
  return out;
}

namespace {

std::vector<SparseSegment> pick(std::span<const SparseSegment> segments,
                                std::span<const std::size_t> idx) {
  std::vector<SparseSegment> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(segments[i]);
  return out;
}

template <typename FitEval>
CvSummary run_folds(std::span<const SparseSegment> segments, const ActivitySpace& activities,
                    std::size_t k, const TrainConfig& config, FitEval&& fit_eval) {
  const FoldPlan plan = stratified_folds(segments, k, derive_seed(config.seed, 10), &activities);
  std::vector<CvFold> folds;
  for (std::size_t f = 0; f < k; ++f) {
    const auto train_idx = plan.training_indices(f);
    const auto val_idx = plan.validation_indices(f);
    const auto train_set = pick(segments, train_idx);
    const auto val_set = pick(segments, val_idx);
    CvFold fold;
    fold.fold = f;
    fold.train_segments = train_set.size();
    fold.validation_segments = val_set.size();
    fit_eval(train_set, val_set, fold);
    folds.push_back(std::move(fold));
  }
  return aggregate_folds(std::move(folds));
}

}  // namespace

CvSummary cross_validate(std::span<const SparseSegment> segments, const ActivitySpace& activities,
                         std::size_t k, const TrainConfig& config, const SetArchitecture& arch) {
  return run_folds(segments, activities, k, config,
                   [&](const std::vector<SparseSegment>& tr, const std::vector<SparseSegment>& va,
                       CvFold& fold) {
                     auto trained = train(tr, activities, config, arch);
                     const auto t0 = std::chrono::steady_clock::now();
                     fold.report = evaluate(trained.model, va);
                     fold.eval_ms = std::chrono::duration<double, std::milli>(
                                        std::chrono::steady_clock::now() - t0)
                                        .count();
                     fold.norm = *trained.model.norm;
                     fold.loss_trace = std::move(trained.loss_trace);
                   });
}

CvSummary cross_validate_baseline(std::span<const SparseSegment> segments,
                                  const ActivitySpace& activities, std::size_t k,
                                  const TrainConfig& config, const BaselineArchitecture& arch) {
  return run_folds(segments, activities, k, config,
                   [&](const std::vector<SparseSegment>& tr, const std::vector<SparseSegment>& va,
                       CvFold& fold) {
                     auto trained = train_baseline(tr, activities, config, arch);
                     const auto t0 = std::chrono::steady_clock::now();
                     fold.report = evaluate(trained.model, va);
                     fold.eval_ms = std::chrono::duration<double, std::milli>(
                                        std::chrono::steady_clock::now() - t0)
                                        .count();
                     fold.norm = *trained.model.norm;
                     fold.loss_trace = std::move(trained.loss_trace);
                   });
}

}  // namespace sparsesense
