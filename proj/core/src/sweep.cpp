#include "sparsesense/sweep.hpp"

#include <chrono>

#include "sparsesense/cross_validation.hpp"
#include "sparsesense/error.hpp"
#include "sparsesense/random.hpp"
#include "sparsesense/segmentation.hpp"

namespace sparsesense {

std::string_view to_string(SweepModel model) {
  return model == SweepModel::set_model ? "set_model" : "baseline";
}

namespace {

using Confusion = std::vector<std::vector<std::size_t>>;

void accumulate(Confusion& into, const Confusion& add) {
  if (into.empty()) {
    into = add;
    return;
  }
  for (std::size_t t = 0; t < add.size(); ++t)
    for (std::size_t p = 0; p < add[t].size(); ++p) into[t][p] += add[t][p];
}

template <typename Model>
EvalReport timed_evaluate(const Model& model, std::span<const SparseSegment> segments,
                          double& elapsed_ms) {
  const auto t0 = std::chrono::steady_clock::now();
  EvalReport report = evaluate(model, segments);
  const auto t1 = std::chrono::steady_clock::now();
  elapsed_ms += std::chrono::duration<double, std::milli>(t1 - t0).count();
  return report;
}

}  // namespace

SweepResult sparsity_sweep(const SetModel& model, const DenseBaselineModel& baseline,
                           std::span<const SparseSegment> segments,
                           std::span<const double> drop_rates,
                           std::span<const std::uint64_t> seeds) {
  if (seeds.empty()) throw ConfigError("sparsity sweep needs at least one seed");
  SweepResult result;
  result.seeds.assign(seeds.begin(), seeds.end());
  for (double rate : drop_rates) {
    (void)drop_count(1, rate);  // validates the rate
    SweepRow set_row{SweepModel::set_model, rate, baseline.kind, baseline.window_len, {}, 0.0};
    SweepRow base_row{SweepModel::baseline, rate, baseline.kind, baseline.window_len, {}, 0.0};
    double set_ms = 0.0;
    double base_ms = 0.0;
    std::size_t evaluated = 0;
    if (rate == 0.0) {
      set_row.report = timed_evaluate(model, segments, set_ms);
      base_row.report = timed_evaluate(baseline, segments, base_ms);
      evaluated = segments.size();
    } else {
      Confusion set_conf, base_conf;
      for (auto seed : seeds) {
        std::vector<SparseSegment> sparse;
        sparse.reserve(segments.size());
        for (std::size_t i = 0; i < segments.size(); ++i)
          sparse.push_back(sparsify(segments[i], rate, derive_seed(seed, i)));
        accumulate(set_conf, timed_evaluate(model, sparse, set_ms).confusion);
        accumulate(base_conf, timed_evaluate(baseline, sparse, base_ms).confusion);
        evaluated += sparse.size();
      }
      set_row.report = report_from_confusion(std::move(set_conf));
      base_row.report = report_from_confusion(std::move(base_conf));
    }
    if (evaluated > 0) {
      set_row.latency_ms_per_segment = set_ms / static_cast<double>(evaluated);
      base_row.latency_ms_per_segment = base_ms / static_cast<double>(evaluated);
    }
    result.rows.push_back(std::move(set_row));
    result.rows.push_back(std::move(base_row));
  }
  return result;
}

namespace {

Confusion pooled(const CvSummary& cv) {
  Confusion conf;
  for (const auto& f : cv.folds) accumulate(conf, f.report.confusion);
  return conf;
}

double per_segment_ms(const CvSummary& cv) {
  double ms = 0.0;
  std::size_t n = 0;
  for (const auto& f : cv.folds) {
    ms += f.eval_ms;
    n += f.validation_segments;
  }
  return n == 0 ? 0.0 : ms / static_cast<double>(n);
}

}  // namespace

SweepResult interpolation_sweep(std::span<const SensorStream> streams,
                                const ActivitySpace& activities,
                                std::span<const double> window_lens,
                                std::span<const InterpKind> kinds, std::size_t folds,
                                const TrainConfig& config, const SetArchitecture& arch,
                                const BaselineArchitecture& baseline_arch) {
  SweepResult result;
  result.seeds.push_back(config.seed);
  for (double len : window_lens) {
    std::vector<SparseSegment> segments;
    for (const auto& stream : streams) {
      auto seg = segment(stream, len, len);
      for (auto& s : seg.segments) segments.push_back(std::move(s));
    }
    TrainConfig cfg = config;
    cfg.window_len = len;
    cfg.stride = len;
    {
      const auto cv = cross_validate(segments, activities, folds, cfg, arch);
      result.rows.push_back({SweepModel::set_model, 0.0, baseline_arch.kind, len,
                             report_from_confusion(pooled(cv)), per_segment_ms(cv)});
    }
    for (auto kind : kinds) {
      BaselineArchitecture ba = baseline_arch;
      ba.kind = kind;
      const auto cv = cross_validate_baseline(segments, activities, folds, cfg, ba);
      result.rows.push_back({SweepModel::baseline, 0.0, kind, len,
                             report_from_confusion(pooled(cv)), per_segment_ms(cv)});
    }
  }
  return result;
}

}  // namespace sparsesense
