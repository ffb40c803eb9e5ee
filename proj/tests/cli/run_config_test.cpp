#include <gtest/gtest.h>

#include "run_config.hpp"
#include "sparsesense/error.hpp"

using namespace sparsesense;
using namespace sparsesense::cli;

TEST(RunConfig, DefaultsFollowTrainingSetup) {
  const auto c = run_config_from_json("{}");
  EXPECT_EQ(c.train.lr, 1e-4);
  EXPECT_EQ(c.train.batch_size, 128u);
  EXPECT_EQ(c.train.total_epochs, 150u);
  EXPECT_EQ(c.train.window_len, 2.0);
  EXPECT_EQ(c.folds, 7u);
  EXPECT_EQ(c.sweep.drop_rates.size(), 6u);
  EXPECT_FALSE(c.dataset.has_value());
}

TEST(RunConfig, JsonRoundTripIsStable) {
  auto c = run_config_from_json(R"({
    "seed": 9, "window_len": 3, "stride": 1.5, "kind": "both", "folds": 4,
    "dataset": {"synthetic": {"activities": ["a", "b"], "means": [[0, 1], [2, 3]],
                              "noise_scales": [0.1, 0.2], "duration_s": 50, "subjects": 2}},
    "train": {"lr": 0.003, "total_epochs": 20, "lr_drop_epoch": 10},
    "architecture": {"phi": [8, 4], "rho_hidden": []},
    "baseline": {"hidden": [5], "interp": "previous", "target_rate": 10},
    "model": "/tmp/m.json",
    "sweep": {"mode": "interpolation", "window_lens": [1, 2], "interp_kinds": ["linear"], "seeds": [4]},
    "latency": {"batch_size": 16, "repetitions": 40}
  })");
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.train.seed, 9u);
  EXPECT_EQ(c.train.window_len, 3.0);
  EXPECT_EQ(c.kind, ModelKind::both);
  EXPECT_EQ(c.baseline.kind, InterpKind::previous);
  EXPECT_EQ(c.architecture.rho_hidden.size(), 0u);
  ASSERT_TRUE(std::holds_alternative<SyntheticSource>(*c.dataset));
  EXPECT_EQ(std::get<SyntheticSource>(*c.dataset).subjects, 2u);
  EXPECT_EQ(c.sweep.mode, SweepMode::interpolation);
  const std::string once = run_config_to_json(c);
  EXPECT_EQ(run_config_to_json(run_config_from_json(once)), once);
}

TEST(RunConfig, CsvSchemaRoundTrip) {
  const auto c = run_config_from_json(R"({"dataset": {"csv": {"path": "raw.txt", "schema": {
      "channel_columns": [3, 4], "onehot_columns": [{"column": 5, "categories": ["1", "2"]}],
      "delimiter": ";", "timestamp_scale": 1e-9, "activities": ["Walking", "Sitting"]}}}})");
  const auto& src = std::get<CsvSource>(*c.dataset);
  EXPECT_EQ(src.schema.delimiter, ';');
  EXPECT_EQ(src.schema.channel_count(), 4u);
  EXPECT_EQ(run_config_to_json(run_config_from_json(run_config_to_json(c))), run_config_to_json(c));
}

TEST(RunConfig, ManifestKeysAccepted) {
  EXPECT_NO_THROW(run_config_from_json(R"({"command": "train", "outputs": ["a.csv"]})"));
}

TEST(RunConfig, RejectsMalformedConfigs) {
  EXPECT_THROW(run_config_from_json("{"), ConfigError);
  EXPECT_THROW(run_config_from_json(R"({"sed": 1})"), ConfigError);
  EXPECT_THROW(run_config_from_json(R"({"train": {"learning_rate": 1}})"), ConfigError);
  EXPECT_THROW(run_config_from_json(R"({"seed": "one"})"), ConfigError);
  EXPECT_THROW(run_config_from_json(R"({"kind": "tree"})"), ConfigError);
  EXPECT_THROW(run_config_from_json(R"({"dataset": {}})"), ConfigError);
  EXPECT_THROW(run_config_from_json(R"({"dataset": {"archive": "a", "csv": {"path": "b"}}})"), ConfigError);
}

TEST(RunConfig, ValidateCatchesBadValues) {
  auto c = default_run_config();
  c.folds = 1;
  EXPECT_THROW(c.validate(), ConfigError);
  c = default_run_config();
  c.sweep.drop_rates = {1.0};
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(RunConfig, RelativePathsResolvedAgainstBase) {
  auto c = run_config_from_json(R"({"out": "o", "model": "m.json", "dataset": {"archive": "a/s.csv"}})");
  make_paths_absolute(c, "/work");
  EXPECT_EQ(c.out, "/work/o");
  EXPECT_EQ(*c.model, "/work/m.json");
  EXPECT_EQ(std::get<ArchiveSource>(*c.dataset).path, "/work/a/s.csv");
}
