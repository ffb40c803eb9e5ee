#include "sparsesense/latency.hpp"

#include <chrono>
#include <string>

#include "sparsesense/error.hpp"
#include "sparsesense/metrics.hpp"

namespace sparsesense {

TimingStats timing_stats(std::vector<double> samples_ms) {
  TimingStats out;
  const MeanStd ms = mean_std(samples_ms);
  out.mean_ms = ms.mean;
  out.std_ms = ms.std;
  out.samples_ms = std::move(samples_ms);
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

// Keeps the optimizer from discarding the timed work.
volatile double g_sink = 0.0;

}  // namespace

LatencyReport latency_bench(const SetModel& model, const DenseBaselineModel& baseline,
                            std::span<const SparseSegment> batch, std::size_t repetitions,
                            std::size_t warmups) {
  if (repetitions < kMinLatencyRepetitions)
    throw ConfigError("latency benchmark needs at least " +
                      std::to_string(kMinLatencyRepetitions) + " repetitions, got " +
                      std::to_string(repetitions));
  if (batch.empty()) throw EmptyInputError("latency benchmark needs a non-empty batch");

  const std::size_t width = baseline.mlp.input_width();
  std::vector<double> set_ms, total_ms, interp_ms;
  for (std::size_t r = 0; r < warmups + repetitions; ++r) {
    const bool record = r >= warmups;

    const auto s0 = Clock::now();
    const Matrix probs = forward_batch(model, batch);
    const auto s1 = Clock::now();
    g_sink = g_sink + probs(0, 0);

    const auto b0 = Clock::now();
    std::vector<double> flat;
    flat.reserve(batch.size() * width);
    for (const auto& s : batch) {
      const auto x = baseline_input(baseline, s);
      flat.insert(flat.end(), x.begin(), x.end());
    }
    const auto b1 = Clock::now();
    const Matrix base_probs = baseline.mlp.forward(Matrix(batch.size(), width, std::move(flat)));
    const auto b2 = Clock::now();
    g_sink = g_sink + base_probs(0, 0);

    if (record) {
      set_ms.push_back(ms_between(s0, s1));
      interp_ms.push_back(ms_between(b0, b1));
      total_ms.push_back(ms_between(b0, b2));
    }
  }

  LatencyReport report;
  report.batch_size = batch.size();
  report.repetitions = repetitions;
  report.warmups = warmups;
  report.set_model = timing_stats(std::move(set_ms));
  report.baseline_total = timing_stats(std::move(total_ms));
  report.baseline_interp = timing_stats(std::move(interp_ms));
  return report;
}

}  // namespace sparsesense
