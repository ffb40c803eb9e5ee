#include "commands.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sparsesense/cross_validation.hpp"
#include "sparsesense/error.hpp"
#include "sparsesense/exports.hpp"
#include "sparsesense/io_util.hpp"
#include "sparsesense/latency.hpp"
#include "sparsesense/model_io.hpp"
#include "sparsesense/random.hpp"
#include "sparsesense/reports.hpp"
#include "sparsesense/segment_archive.hpp"
#include "sparsesense/segmentation.hpp"
#include "sparsesense/sweep.hpp"

namespace sparsesense::cli {

namespace fs = std::filesystem;

namespace {

/// Artifacts produced by a command, keyed by file name inside the output directory.
using Artifacts = std::vector<std::pair<std::string, std::string>>;

struct Dataset {
  ActivitySpace activities;
  std::vector<SensorStream> streams;  // empty for archive sources
  std::vector<SparseSegment> segments;
  double rate_hz = 0.0;
  std::size_t rows_read = 0;
  std::size_t rows_skipped = 0;
  std::size_t empty_windows = 0;
};

void require_file(const fs::path& path, const std::string& what) {
  if (!fs::is_regular_file(path)) throw IoError(what + " not found: '" + path.string() + "'");
}

void require_inputs(std::string_view command, const RunConfig& c) {
  if (!c.dataset) throw ConfigError(std::string(command) + " needs a dataset (config 'dataset', --archive or --csv)");
  if (const auto* a = std::get_if<ArchiveSource>(&*c.dataset)) require_file(a->path, "segment archive");
  if (const auto* s = std::get_if<CsvSource>(&*c.dataset)) require_file(s->path, "sensor CSV");
  const bool needs_set = command == "embed" || command == "density" || command == "latency" ||
                         (command == "sweep" && c.sweep.mode == SweepMode::sparsity);
  const bool needs_baseline = command == "latency" || (command == "sweep" && c.sweep.mode == SweepMode::sparsity);
  if (needs_set && !c.model) throw ConfigError(std::string(command) + " needs a set model (--model)");
  if (needs_baseline && !c.baseline_model) {
    throw ConfigError(std::string(command) + " needs a baseline model (--baseline-model)");
  }
  if (c.model) require_file(*c.model, "model file");
  if (c.baseline_model) require_file(*c.baseline_model, "baseline model file");
}

Dataset load_streams(const RunConfig& c) {
  Dataset d;
  if (const auto* s = std::get_if<SyntheticSource>(&*c.dataset)) {
    const std::uint64_t base = s->seed.value_or(c.seed);
    d.activities = s->config.activities;
    d.rate_hz = s->config.rate_hz;
    for (std::size_t i = 0; i < s->subjects; ++i) {
      SynthConfig cfg = s->config;
      if (s->subjects > 1) cfg.subject += "-" + std::to_string(i);
      d.streams.push_back(synth_sparse_stream(cfg, derive_seed(base, i)));
    }
    return d;
  }
  if (const auto* s = std::get_if<CsvSource>(&*c.dataset)) {
    auto r = ingest_csv(s->path, s->schema);
    d.activities = std::move(r.activities);
    d.streams = std::move(r.streams);
    d.rate_hz = s->schema.nominal_rate_hz;
    d.rows_read = r.rows_read;
    d.rows_skipped = r.rows_skipped;
    return d;
  }
  throw ConfigError("this command needs raw streams (a csv or synthetic dataset), not a segment archive");
}

/// Segments for the run. Archive windows override config window_len, so the
/// manifest records the length actually used.
Dataset load_segments(RunConfig& c) {
  if (const auto* a = std::get_if<ArchiveSource>(&*c.dataset)) {
    auto archive = read_segment_archive(a->path);
    Dataset d;
    d.activities = std::move(archive.activities);
    d.rate_hz = archive.rate_hz;
    d.segments = std::move(archive.segments);
    if (!d.segments.empty()) {
      const double len = d.segments.front().window_len;
      for (const auto& s : d.segments) {
        if (s.window_len != len) throw ConfigError("segment archive mixes window lengths");
      }
      c.train.window_len = len;
    }
    return d;
  }
  Dataset d = load_streams(c);
  for (const auto& stream : d.streams) {
    auto r = segment(stream, c.train.window_len, c.train.stride);
    d.empty_windows += r.empty_windows;
    std::move(r.segments.begin(), r.segments.end(), std::back_inserter(d.segments));
  }
  return d;
}

void require_segments(const Dataset& d) {
  if (d.segments.empty()) throw EmptyInputError("dataset produced no segments");
}

template <typename Model>
void check_compatible(const Model& model, const Dataset& d, const std::string& what) {
  if (model.activities != d.activities) {
    throw ConfigError(what + " activity space (" + model.activities.joined() +
                      ") differs from the dataset's (" + d.activities.joined() + ")");
  }
}

SetModel load_set(const RunConfig& c, const Dataset& d) {
  auto m = load_model(*c.model);
  check_compatible(m, d, "set model");
  return m;
}

DenseBaselineModel load_base(const RunConfig& c, const Dataset& d) {
  auto m = load_baseline(*c.baseline_model);
  check_compatible(m, d, "baseline model");
  return m;
}

bool wants_set(ModelKind k) { return k != ModelKind::baseline; }
bool wants_baseline(ModelKind k) { return k != ModelKind::set; }

Artifacts cmd_ingest(RunConfig& c, std::ostream& log) {
  if (std::holds_alternative<ArchiveSource>(*c.dataset)) {
    throw ConfigError("ingest needs a csv or synthetic dataset, not a segment archive");
  }
  const Dataset d = load_segments(c);
  std::size_t readings = 0;
  std::map<std::size_t, std::size_t> histogram;
  for (const auto& s : d.streams) readings += s.readings.size();
  for (const auto& s : d.segments) ++histogram[s.cardinality()];
  const std::size_t channels = d.segments.empty() ? 0 : d.segments.front().channel_count();

  std::ostringstream stats;
  stats << "streams,readings,rows_read,rows_skipped,segments,empty_windows,window_len,stride\n"
        << d.streams.size() << ',' << readings << ',' << d.rows_read << ',' << d.rows_skipped << ','
        << d.segments.size() << ',' << d.empty_windows << ',' << format_sig9(c.train.window_len) << ','
        << format_sig9(c.train.stride) << '\n';
  std::ostringstream hist;
  hist << "cardinality,segments\n";
  for (const auto& [m, n] : histogram) hist << m << ',' << n << '\n';

  log << "ingested " << d.streams.size() << " stream(s), " << d.segments.size() << " segments, "
      << d.rows_skipped << " skipped rows\n";
  return {{"segments.csv", format_segment_archive({d.activities, channels, d.rate_hz, d.segments})},
          {"ingest_stats.csv", stats.str()},
          {"cardinality_histogram.csv", hist.str()}};
}

Artifacts cmd_train(RunConfig& c, std::ostream& log) {
  const Dataset d = load_segments(c);
  require_segments(d);
  Artifacts out;
  if (wants_set(c.kind)) {
    const auto r = train(d.segments, d.activities, c.train, c.architecture);
    out.emplace_back("set_model.json", set_model_to_json(r.model));
    out.emplace_back("set_loss_trace.csv", loss_trace_csv(r.loss_trace, c.train));
    log << "set model trained on " << d.segments.size() << " segments, final loss "
        << format_sig9(r.loss_trace.back()) << '\n';
  }
  if (wants_baseline(c.kind)) {
    const auto r = train_baseline(d.segments, d.activities, c.train, c.baseline);
    out.emplace_back("baseline_model.json", baseline_to_json(r.model));
    out.emplace_back("baseline_loss_trace.csv", loss_trace_csv(r.loss_trace, c.train));
    log << "baseline trained on " << d.segments.size() << " segments, final loss "
        << format_sig9(r.loss_trace.back()) << '\n';
  }
  return out;
}

std::string pooled_confusion_csv(const CvSummary& s, const ActivitySpace& activities) {
  auto pooled = s.folds.front().report.confusion;
  for (std::size_t f = 1; f < s.folds.size(); ++f)
    for (std::size_t t = 0; t < pooled.size(); ++t)
      for (std::size_t p = 0; p < pooled.size(); ++p) pooled[t][p] += s.folds[f].report.confusion[t][p];
  return confusion_csv(report_from_confusion(std::move(pooled)), activities);
}

Artifacts cmd_eval(RunConfig& c, std::ostream& log) {
  const Dataset d = load_segments(c);
  require_segments(d);
  const ConfigEcho echo = echo_train_config(c.train);
  Artifacts out;
  if (c.model || c.baseline_model) {
    if (c.model) {
      const auto r = evaluate(load_set(c, d), d.segments);
      out.emplace_back("set_eval_report.csv", eval_report_csv(r, d.activities, echo));
      out.emplace_back("set_confusion.csv", confusion_csv(r, d.activities));
      log << "set model macro F " << format_sig9(r.macro_f1) << '\n';
    }
    if (c.baseline_model) {
      const auto r = evaluate(load_base(c, d), d.segments);
      out.emplace_back("baseline_eval_report.csv", eval_report_csv(r, d.activities, echo));
      out.emplace_back("baseline_confusion.csv", confusion_csv(r, d.activities));
      log << "baseline macro F " << format_sig9(r.macro_f1) << '\n';
    }
    return out;
  }
  if (wants_set(c.kind)) {
    const auto s = cross_validate(d.segments, d.activities, c.folds, c.train, c.architecture);
    out.emplace_back("set_cv_summary.csv", cv_summary_csv(s, echo));
    out.emplace_back("set_cv_confusion.csv", pooled_confusion_csv(s, d.activities));
    log << c.folds << "-fold set model macro F " << format_sig9(s.f1.mean) << " +- " << format_sig9(s.f1.std)
        << '\n';
  }
  if (wants_baseline(c.kind)) {
    const auto s = cross_validate_baseline(d.segments, d.activities, c.folds, c.train, c.baseline);
    out.emplace_back("baseline_cv_summary.csv", cv_summary_csv(s, echo));
    out.emplace_back("baseline_cv_confusion.csv", pooled_confusion_csv(s, d.activities));
    log << c.folds << "-fold baseline macro F " << format_sig9(s.f1.mean) << " +- " << format_sig9(s.f1.std)
        << '\n';
  }
  return out;
}

Artifacts cmd_sweep(RunConfig& c, std::ostream& log) {
  SweepResult r;
  if (c.sweep.mode == SweepMode::sparsity) {
    const Dataset d = load_segments(c);
    require_segments(d);
    r = sparsity_sweep(load_set(c, d), load_base(c, d), d.segments, c.sweep.drop_rates, c.sweep.seeds);
  } else {
    const Dataset d = load_streams(c);
    r = interpolation_sweep(d.streams, d.activities, c.sweep.window_lens, c.sweep.interp_kinds, c.folds, c.train,
                            c.architecture, c.baseline);
  }
  log << "sweep produced " << r.rows.size() << " rows\n";
  const ConfigEcho echo = echo_train_config(c.train);
  return {{"sweep_metrics.csv", sweep_metrics_csv(r, echo)}, {"sweep_latency.csv", sweep_latency_csv(r)}};
}

Artifacts cmd_latency(RunConfig& c, std::ostream& log) {
  const Dataset d = load_segments(c);
  if (d.segments.size() < c.latency.batch_size) {
    throw ConfigError("latency batch of " + std::to_string(c.latency.batch_size) + " segments requested but the dataset has " +
                      std::to_string(d.segments.size()));
  }
  const std::span<const SparseSegment> batch(d.segments.data(), c.latency.batch_size);
  const auto r = latency_bench(load_set(c, d), load_base(c, d), batch, c.latency.repetitions, c.latency.warmups);
  log << "set model " << format_sig9(r.set_model.mean_ms) << " ms, resample+baseline "
      << format_sig9(r.baseline_total.mean_ms) << " ms (resampling " << format_sig9(r.baseline_interp.mean_ms)
      << " ms) per batch of " << r.batch_size << '\n';
  return {{"latency.csv", latency_csv(r)}};
}

Artifacts cmd_embed(RunConfig& c, std::ostream& log) {
  const Dataset d = load_segments(c);
  require_segments(d);
  log << "embedding " << d.segments.size() << " segments\n";
  return {{"embeddings.csv", embeddings_csv(load_set(c, d), d.segments)}};
}

Artifacts cmd_density(RunConfig& c, std::ostream& log) {
  const Dataset d = load_segments(c);
  require_segments(d);
  const auto h = contributing_density(load_set(c, d), d.segments);
  for (std::size_t a = 0; a < h.activities.size(); ++a) {
    log << h.activities.name(a) << ": mean contributing readings " << format_sig9(h.mean_count(a)) << '\n';
  }
  return {{"density.csv", density_csv(h)}};
}

}  // namespace

std::vector<fs::path> run_command(std::string_view command, RunConfig config, std::ostream& log) {
  Artifacts (*fn)(RunConfig&, std::ostream&) = nullptr;
  if (command == "ingest") fn = cmd_ingest;
  if (command == "train") fn = cmd_train;
  if (command == "eval") fn = cmd_eval;
  if (command == "sweep") fn = cmd_sweep;
  if (command == "latency") fn = cmd_latency;
  if (command == "embed") fn = cmd_embed;
  if (command == "density") fn = cmd_density;
  if (fn == nullptr) throw ConfigError("unknown command '" + std::string(command) + "'");

  config.train.seed = config.seed;
  config.validate();
  require_inputs(command, config);
  const Artifacts artifacts = fn(config, log);

  std::vector<fs::path> written;
  nlohmann::json names = nlohmann::json::array();
  for (const auto& [name, content] : artifacts) {
    written.push_back(config.out / name);
    write_file_atomic(written.back(), content);
    names.push_back(name);
  }
  auto manifest = nlohmann::json::parse(run_config_to_json(config));
  manifest["command"] = std::string(command);
  manifest["outputs"] = names;
  written.push_back(config.out / (std::string(command) + "_manifest.json"));
  write_file_atomic(written.back(), manifest.dump(2) + "\n");
  return written;
}

}  // namespace sparsesense::cli
