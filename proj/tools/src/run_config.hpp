#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sparsesense/baseline.hpp"
#include "sparsesense/csv_ingest.hpp"
#include "sparsesense/set_model.hpp"
#include "sparsesense/synthetic.hpp"
#include "sparsesense/train.hpp"

namespace sparsesense::cli {

struct CsvSource {
  std::filesystem::path path;
  CsvSchema schema;
};

/// `subjects` streams; subject s is generated from derive_seed(seed, s).
struct SyntheticSource {
  SynthConfig config;
  std::size_t subjects = 1;
  std::optional<std::uint64_t> seed;  // defaults to the run seed
};

struct ArchiveSource {
  std::filesystem::path path;
};

using DatasetSource = std::variant<CsvSource, SyntheticSource, ArchiveSource>;

enum class ModelKind { set, baseline, both };
std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);

enum class SweepMode { sparsity, interpolation };

struct SweepGrid {
  SweepMode mode = SweepMode::sparsity;
  std::vector<double> drop_rates;  // defaults to kDefaultDropRates
  std::vector<std::uint64_t> seeds{1, 2, 3};
  std::vector<double> window_lens{1.0, 2.0, 3.0, 4.0, 5.0};
  std::vector<InterpKind> interp_kinds{InterpKind::linear, InterpKind::previous,
                                       InterpKind::quadratic_spline, InterpKind::cubic_spline};
};

struct LatencySettings {
  std::size_t batch_size = 128;
  std::size_t repetitions = 30;
  std::size_t warmups = 5;
};

/// Fully resolved run description. The JSON form written into every manifest
/// round-trips through from_json/to_json, so a manifest can be fed back as
/// --config to repeat the run.
struct RunConfig {
  std::uint64_t seed = 1;
  std::filesystem::path out = "sparsesense-out";
  std::optional<DatasetSource> dataset;
  TrainConfig train;  // train.seed, window_len and stride mirror the top-level keys
  SetArchitecture architecture;
  BaselineArchitecture baseline;
  ModelKind kind = ModelKind::set;
  std::optional<std::filesystem::path> model;
  std::optional<std::filesystem::path> baseline_model;
  std::size_t folds = 7;
  SweepGrid sweep;
  LatencySettings latency;

  void validate() const;
};

RunConfig default_run_config();
/// Starts from the defaults and applies every key present in `text`. Unknown
/// keys are rejected. Manifest-only keys ("command", "outputs") are ignored.
RunConfig run_config_from_json(std::string_view text);
std::string run_config_to_json(const RunConfig& config);

/// Rewrites relative paths against `base`, so manifests stay valid from any
/// working directory.
void make_paths_absolute(RunConfig& config, const std::filesystem::path& base);

}  // namespace sparsesense::cli
