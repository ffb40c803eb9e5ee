#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "run_config.hpp"
#include "sparsesense/error.hpp"
#include "sparsesense/io_util.hpp"

namespace {

using namespace sparsesense;
using namespace sparsesense::cli;

constexpr int kExitInputError = 2;
constexpr int kExitInvariantError = 3;

/// Command-line overrides. Unset options leave the config value alone.
struct Flags {
  std::string config;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> archive;
  std::optional<std::string> csv;
  std::optional<std::string> model;
  std::optional<std::string> baseline_model;
  std::optional<std::string> kind;
  std::optional<std::size_t> folds;
  std::optional<std::size_t> epochs;
  std::optional<double> lr;
  std::optional<std::size_t> batch_size;
  std::optional<double> window_len;
  std::optional<double> stride;
  std::optional<std::string> interp;
  std::optional<std::string> mode;
  std::optional<std::size_t> repetitions;
};

void add_flags(CLI::App& sub, Flags& f) {
  sub.add_option("--config", f.config, "JSON run config or a previous run's manifest");
  sub.add_option("--out", f.out, "output directory");
  sub.add_option("--seed", f.seed, "run seed");
  sub.add_option("--archive", f.archive, "segment archive to use as the dataset");
  sub.add_option("--csv", f.csv, "raw sensor CSV to use as the dataset (schema from config)");
  sub.add_option("--model", f.model, "set model file");
  sub.add_option("--baseline-model", f.baseline_model, "baseline model file");
  sub.add_option("--kind", f.kind, "models to train or cross-validate: set, baseline or both");
  sub.add_option("--folds", f.folds, "cross-validation folds");
  sub.add_option("--epochs", f.epochs, "training epochs");
  sub.add_option("--lr", f.lr, "initial learning rate");
  sub.add_option("--batch-size", f.batch_size, "training mini-batch size");
  sub.add_option("--window-len", f.window_len, "segment window length in seconds");
  sub.add_option("--stride", f.stride, "segment stride in seconds");
  sub.add_option("--interp", f.interp, "baseline interpolant: linear, previous, quadratic, cubic");
  sub.add_option("--mode", f.mode, "sweep mode: sparsity or interpolation");
  sub.add_option("--repetitions", f.repetitions, "latency repetitions (at least 30)");
}

/// Defaults, then the config file, then flags.
RunConfig resolve(const Flags& f) {
  RunConfig c = f.config.empty() ? default_run_config() : run_config_from_json(read_text_file(f.config));
  if (f.out) c.out = *f.out;
  if (f.seed) c.seed = *f.seed;
  if (f.archive && f.csv) throw ConfigError("--archive and --csv are mutually exclusive");
  if (f.archive) c.dataset = ArchiveSource{*f.archive};
  if (f.csv) {
    CsvSource src{*f.csv, {}};
    if (c.dataset) {
      if (const auto* old = std::get_if<CsvSource>(&*c.dataset)) src.schema = old->schema;
    }
    c.dataset = src;
  }
  if (f.model) c.model = *f.model;
  if (f.baseline_model) c.baseline_model = *f.baseline_model;
  if (f.kind) c.kind = parse_model_kind(*f.kind);
  if (f.folds) c.folds = *f.folds;
  if (f.epochs) c.train.total_epochs = *f.epochs;
  if (f.lr) c.train.lr = *f.lr;
  if (f.batch_size) c.train.batch_size = *f.batch_size;
  if (f.window_len) c.train.window_len = *f.window_len;
  if (f.stride) c.train.stride = *f.stride;
  if (f.interp) c.baseline.kind = parse_interp_kind(*f.interp);
  if (f.mode) {
    if (*f.mode == "sparsity") {
      c.sweep.mode = SweepMode::sparsity;
    } else if (*f.mode == "interpolation") {
      c.sweep.mode = SweepMode::interpolation;
    } else {
      throw ConfigError("unknown sweep mode '" + *f.mode + "'");
    }
  }
  if (f.repetitions) c.latency.repetitions = *f.repetitions;
  c.train.seed = c.seed;
  make_paths_absolute(c, std::filesystem::current_path());
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Set-based activity recognition on sparse sensor streams"};
  app.require_subcommand(1);
  Flags flags;
  for (const auto& name : kCommands) add_flags(*app.add_subcommand(name), flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInputError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    for (const auto& path : run_command(command, resolve(flags), std::cerr)) std::cout << path.string() << '\n';
    return 0;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const InvariantError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInvariantError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInvariantError;
  }
}
