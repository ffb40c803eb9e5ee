#include <benchmark/benchmark.h>

#include <vector>

#include "sparsesense/baseline.hpp"
#include "sparsesense/interp.hpp"
#include "sparsesense/random.hpp"
#include "sparsesense/segmentation.hpp"
#include "sparsesense/set_model.hpp"
#include "sparsesense/synthetic.hpp"

using namespace sparsesense;

namespace {

constexpr std::size_t kBatch = 128;

// Sparse 3-channel stream, mean gap `gap_s`, cut into 2 s windows.
std::vector<SparseSegment> batch_with_gap(double gap_s) {
  SynthConfig cfg{ActivitySpace({"a", "b", "c"}), Matrix::from_rows({{0, 0, 0}, {1, 1, 1}, {2, -1, 0.5}}), {0.3}};
  cfg.mean_gap_s = gap_s;
  cfg.rate_hz = 20.0;
  cfg.duration_s = 2.0 * kBatch * 1.5;
  auto segs = segment(synth_sparse_stream(cfg, 1), 2.0, 2.0).segments;
  segs.resize(kBatch);
  return segs;
}

double gap_for(const benchmark::State& state) { return static_cast<double>(state.range(0)) / 1000.0; }

void BM_SetForwardBatch(benchmark::State& state) {
  const auto segs = batch_with_gap(gap_for(state));
  const auto model = make_set_model(3, ActivitySpace({"a", "b", "c"}), SetArchitecture{}, std::nullopt, 1);
  for (auto _ : state) benchmark::DoNotOptimize(forward_batch(model, segs));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(segs.size()));
}

void BM_Resample(benchmark::State& state) {
  const auto segs = batch_with_gap(gap_for(state));
  const auto kind = static_cast<InterpKind>(state.range(1));
  for (auto _ : state)
    for (const auto& s : segs) benchmark::DoNotOptimize(resample(s, kind, 20.0));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(segs.size()));
  state.SetLabel(std::string(to_string(kind)));
}

void BM_BaselineForwardBatch(benchmark::State& state) {
  const auto segs = batch_with_gap(gap_for(state));
  const auto model =
      make_baseline(3, ActivitySpace({"a", "b", "c"}), BaselineArchitecture{}, 2.0, std::nullopt, 1);
  for (auto _ : state) benchmark::DoNotOptimize(baseline_forward_batch(model, segs));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(segs.size()));
}

}  // namespace

// Range 0 is the mean reading gap in milliseconds.
BENCHMARK(BM_SetForwardBatch)->Arg(50)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Resample)
    ->ArgsProduct({{500}, {static_cast<long>(InterpKind::linear), static_cast<long>(InterpKind::previous),
                           static_cast<long>(InterpKind::quadratic_spline),
                           static_cast<long>(InterpKind::cubic_spline)}})
    ->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_BaselineForwardBatch)->Arg(50)->Arg(500)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
