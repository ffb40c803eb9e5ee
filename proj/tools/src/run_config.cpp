#include "run_config.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "sparsesense/error.hpp"
#include "sparsesense/sweep.hpp"

namespace sparsesense::cli {

using nlohmann::json;

namespace {

// Rejects keys outside `allowed` so that typos do not silently fall back to
// defaults.
void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError("'" + where + "' must be a JSON object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!ok.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read(const json& obj, const char* key, T& target, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    target = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("invalid value for '" + std::string(key) + "' in " + where);
  }
}

void read_path(const json& obj, const char* key, std::optional<std::filesystem::path>& target) {
  if (!obj.contains(key)) return;
  if (obj.at(key).is_null()) {
    target.reset();
    return;
  }
  std::string s;
  read(obj, key, s, "config");
  target = s;
}

std::vector<InterpKind> parse_kinds(const std::vector<std::string>& names) {
  std::vector<InterpKind> kinds;
  for (const auto& n : names) kinds.push_back(parse_interp_kind(n));
  return kinds;
}

CsvSchema schema_from_json(const json& j) {
  const std::string where = "dataset.csv.schema";
  check_keys(j, where,
             {"subject_column", "activity_column", "timestamp_column", "channel_columns", "onehot_columns",
              "column_count", "has_header", "delimiter", "timestamp_scale", "nominal_rate_hz", "activities"});
  CsvSchema s;
  read(j, "subject_column", s.subject_column, where);
  read(j, "activity_column", s.activity_column, where);
  read(j, "timestamp_column", s.timestamp_column, where);
  read(j, "channel_columns", s.channel_columns, where);
  read(j, "column_count", s.column_count, where);
  read(j, "has_header", s.has_header, where);
  read(j, "timestamp_scale", s.timestamp_scale, where);
  read(j, "nominal_rate_hz", s.nominal_rate_hz, where);
  read(j, "activities", s.activities, where);
  if (j.contains("delimiter")) {
    std::string d;
    read(j, "delimiter", d, where);
    if (d.size() != 1) throw ConfigError("delimiter must be a single character");
    s.delimiter = d[0];
  }
  if (j.contains("onehot_columns")) {
    if (!j["onehot_columns"].is_array()) throw ConfigError("onehot_columns must be an array");
    for (const auto& o : j["onehot_columns"]) {
      check_keys(o, where + ".onehot_columns", {"column", "categories"});
      OneHotColumn col;
      read(o, "column", col.column, where);
      read(o, "categories", col.categories, where);
      s.onehot_columns.push_back(std::move(col));
    }
  }
  return s;
}

json schema_to_json(const CsvSchema& s) {
  json onehot = json::array();
  for (const auto& o : s.onehot_columns) onehot.push_back({{"column", o.column}, {"categories", o.categories}});
  return {{"subject_column", s.subject_column},
          {"activity_column", s.activity_column},
          {"timestamp_column", s.timestamp_column},
          {"channel_columns", s.channel_columns},
          {"onehot_columns", onehot},
          {"column_count", s.column_count},
          {"has_header", s.has_header},
          {"delimiter", std::string(1, s.delimiter)},
          {"timestamp_scale", s.timestamp_scale},
          {"nominal_rate_hz", s.nominal_rate_hz},
          {"activities", s.activities}};
}

SyntheticSource synthetic_from_json(const json& j) {
  const std::string where = "dataset.synthetic";
  check_keys(j, where,
             {"activities", "means", "noise_scales", "mean_gap_s", "duration_s", "mean_dwell_s", "rate_hz",
              "subjects", "seed"});
  SyntheticSource src;
  std::vector<std::string> names;
  std::vector<std::vector<double>> means;
  read(j, "activities", names, where);
  read(j, "means", means, where);
  if (names.empty() || means.empty()) throw ConfigError(where + " needs 'activities' and 'means'");
  src.config.activities = ActivitySpace(names);
  const std::size_t d = means.front().size();
  src.config.means = Matrix(0, d);
  for (const auto& row : means) {
    if (row.size() != d) throw ConfigError(where + ".means rows must have equal length");
    src.config.means.append_row(row);
  }
  src.config.noise_scales = {0.3};
  read(j, "noise_scales", src.config.noise_scales, where);
  read(j, "mean_gap_s", src.config.mean_gap_s, where);
  read(j, "duration_s", src.config.duration_s, where);
  read(j, "mean_dwell_s", src.config.mean_dwell_s, where);
  read(j, "rate_hz", src.config.rate_hz, where);
  read(j, "subjects", src.subjects, where);
  if (j.contains("seed") && !j["seed"].is_null()) {
    std::uint64_t s = 0;
    read(j, "seed", s, where);
    src.seed = s;
  }
  return src;
}

json synthetic_to_json(const SyntheticSource& src) {
  std::vector<std::vector<double>> means;
  for (std::size_t r = 0; r < src.config.means.rows(); ++r) {
    const auto row = src.config.means.row(r);
    means.emplace_back(row.begin(), row.end());
  }
  return {{"activities", src.config.activities.names()},
          {"means", means},
          {"noise_scales", src.config.noise_scales},
          {"mean_gap_s", src.config.mean_gap_s},
          {"duration_s", src.config.duration_s},
          {"mean_dwell_s", src.config.mean_dwell_s},
          {"rate_hz", src.config.rate_hz},
          {"subjects", src.subjects},
          {"seed", src.seed ? json(*src.seed) : json(nullptr)}};
}

DatasetSource dataset_from_json(const json& j) {
  check_keys(j, "dataset", {"csv", "synthetic", "archive"});
  if (j.size() != 1) throw ConfigError("dataset must name exactly one source: csv, synthetic or archive");
  if (j.contains("archive")) {
    std::string p;
    read(j, "archive", p, "dataset");
    return ArchiveSource{p};
  }
  if (j.contains("synthetic")) return synthetic_from_json(j["synthetic"]);
  const json& c = j["csv"];
  check_keys(c, "dataset.csv", {"path", "schema"});
  CsvSource src;
  std::string p;
  read(c, "path", p, "dataset.csv");
  if (p.empty()) throw ConfigError("dataset.csv needs a 'path'");
  src.path = p;
  if (c.contains("schema")) src.schema = schema_from_json(c["schema"]);
  return src;
}

json dataset_to_json(const DatasetSource& src) {
  if (const auto* a = std::get_if<ArchiveSource>(&src)) return {{"archive", a->path.string()}};
  if (const auto* s = std::get_if<SyntheticSource>(&src)) return {{"synthetic", synthetic_to_json(*s)}};
  const auto& c = std::get<CsvSource>(src);
  return {{"csv", {{"path", c.path.string()}, {"schema", schema_to_json(c.schema)}}}};
}

}  // namespace

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::set:
      return "set";
    case ModelKind::baseline:
      return "baseline";
    case ModelKind::both:
      return "both";
  }
  return "set";
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "set") return ModelKind::set;
  if (name == "baseline") return ModelKind::baseline;
  if (name == "both") return ModelKind::both;
  throw ConfigError("unknown model kind '" + std::string(name) + "' (expected set, baseline or both)");
}

RunConfig default_run_config() {
  RunConfig c;
  c.sweep.drop_rates = kDefaultDropRates;
  return c;
}

void RunConfig::validate() const {
  train.validate();
  architecture.validate();
  baseline.validate();
  if (train.seed != seed) throw InvariantError("train seed out of sync with run seed");
  if (folds < 2) throw ConfigError("folds must be >= 2");
  if (sweep.seeds.empty()) throw ConfigError("sweep.seeds must not be empty");
  for (double p : sweep.drop_rates) {
    if (!(p >= 0.0 && p < 1.0)) throw ConfigError("sweep drop rates must lie in [0, 1)");
  }
  for (double w : sweep.window_lens) {
    if (!(w > 0.0)) throw ConfigError("sweep window lengths must be positive");
  }
  if (latency.batch_size < 1) throw ConfigError("latency.batch_size must be >= 1");
  if (const auto* s = dataset ? std::get_if<SyntheticSource>(&*dataset) : nullptr) {
    s->config.validate();
    if (s->subjects < 1) throw ConfigError("synthetic subjects must be >= 1");
  }
  if (const auto* c = dataset ? std::get_if<CsvSource>(&*dataset) : nullptr) c->schema.validate();
}

RunConfig run_config_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(doc, "config",
             {"command", "outputs", "seed", "out", "window_len", "stride", "dataset", "train", "architecture",
              "baseline", "kind", "model", "baseline_model", "folds", "sweep", "latency"});
  RunConfig c = default_run_config();
  read(doc, "seed", c.seed, "config");
  c.train.seed = c.seed;
  if (doc.contains("out")) {
    std::string out;
    read(doc, "out", out, "config");
    c.out = out;
  }
  read(doc, "window_len", c.train.window_len, "config");
  read(doc, "stride", c.train.stride, "config");
  if (doc.contains("dataset") && !doc["dataset"].is_null()) c.dataset = dataset_from_json(doc["dataset"]);
  if (doc.contains("train")) {
    const json& t = doc["train"];
    check_keys(t, "train",
               {"batch_size", "lr", "lr_drop_factor", "lr_drop_epoch", "total_epochs", "weight_decay", "alpha",
                "epsilon"});
    read(t, "batch_size", c.train.batch_size, "train");
    read(t, "lr", c.train.lr, "train");
    read(t, "lr_drop_factor", c.train.lr_drop_factor, "train");
    read(t, "lr_drop_epoch", c.train.lr_drop_epoch, "train");
    read(t, "total_epochs", c.train.total_epochs, "train");
    read(t, "weight_decay", c.train.weight_decay, "train");
    read(t, "alpha", c.train.alpha, "train");
    read(t, "epsilon", c.train.epsilon, "train");
  }
  if (doc.contains("architecture")) {
    const json& a = doc["architecture"];
    check_keys(a, "architecture", {"phi", "rho_hidden"});
    read(a, "phi", c.architecture.phi, "architecture");
    read(a, "rho_hidden", c.architecture.rho_hidden, "architecture");
  }
  if (doc.contains("baseline")) {
    const json& b = doc["baseline"];
    check_keys(b, "baseline", {"hidden", "interp", "target_rate"});
    read(b, "hidden", c.baseline.hidden, "baseline");
    read(b, "target_rate", c.baseline.target_rate, "baseline");
    if (b.contains("interp")) {
      std::string k;
      read(b, "interp", k, "baseline");
      c.baseline.kind = parse_interp_kind(k);
    }
  }
  if (doc.contains("kind")) {
    std::string k;
    read(doc, "kind", k, "config");
    c.kind = parse_model_kind(k);
  }
  read_path(doc, "model", c.model);
  read_path(doc, "baseline_model", c.baseline_model);
  read(doc, "folds", c.folds, "config");
  if (doc.contains("sweep")) {
    const json& s = doc["sweep"];
    check_keys(s, "sweep", {"mode", "drop_rates", "seeds", "window_lens", "interp_kinds"});
    if (s.contains("mode")) {
      std::string m;
      read(s, "mode", m, "sweep");
      if (m == "sparsity") {
        c.sweep.mode = SweepMode::sparsity;
      } else if (m == "interpolation") {
        c.sweep.mode = SweepMode::interpolation;
      } else {
        throw ConfigError("unknown sweep mode '" + m + "' (expected sparsity or interpolation)");
      }
    }
    read(s, "drop_rates", c.sweep.drop_rates, "sweep");
    read(s, "seeds", c.sweep.seeds, "sweep");
    read(s, "window_lens", c.sweep.window_lens, "sweep");
    if (s.contains("interp_kinds")) {
      std::vector<std::string> names;
      read(s, "interp_kinds", names, "sweep");
      c.sweep.interp_kinds = parse_kinds(names);
    }
  }
  if (doc.contains("latency")) {
    const json& l = doc["latency"];
    check_keys(l, "latency", {"batch_size", "repetitions", "warmups"});
    read(l, "batch_size", c.latency.batch_size, "latency");
    read(l, "repetitions", c.latency.repetitions, "latency");
    read(l, "warmups", c.latency.warmups, "latency");
  }
  return c;
}

std::string run_config_to_json(const RunConfig& c) {
  std::vector<std::string> kinds;
  for (auto k : c.sweep.interp_kinds) kinds.emplace_back(to_string(k));
  const auto path_or_null = [](const std::optional<std::filesystem::path>& p) {
    return p ? json(p->string()) : json(nullptr);
  };
  json doc = {
      {"seed", c.seed},
      {"out", c.out.string()},
      {"window_len", c.train.window_len},
      {"stride", c.train.stride},
      {"dataset", c.dataset ? dataset_to_json(*c.dataset) : json(nullptr)},
      {"train",
       {{"batch_size", c.train.batch_size},
        {"lr", c.train.lr},
        {"lr_drop_factor", c.train.lr_drop_factor},
        {"lr_drop_epoch", c.train.lr_drop_epoch},
        {"total_epochs", c.train.total_epochs},
        {"weight_decay", c.train.weight_decay},
        {"alpha", c.train.alpha},
        {"epsilon", c.train.epsilon}}},
      {"architecture", {{"phi", c.architecture.phi}, {"rho_hidden", c.architecture.rho_hidden}}},
      {"baseline",
       {{"hidden", c.baseline.hidden},
        {"interp", std::string(to_string(c.baseline.kind))},
        {"target_rate", c.baseline.target_rate}}},
      {"kind", std::string(to_string(c.kind))},
      {"model", path_or_null(c.model)},
      {"baseline_model", path_or_null(c.baseline_model)},
      {"folds", c.folds},
      {"sweep",
       {{"mode", c.sweep.mode == SweepMode::sparsity ? "sparsity" : "interpolation"},
        {"drop_rates", c.sweep.drop_rates},
        {"seeds", c.sweep.seeds},
        {"window_lens", c.sweep.window_lens},
        {"interp_kinds", kinds}}},
      {"latency",
       {{"batch_size", c.latency.batch_size},
        {"repetitions", c.latency.repetitions},
        {"warmups", c.latency.warmups}}},
  };
  return doc.dump(2) + "\n";
}

void make_paths_absolute(RunConfig& c, const std::filesystem::path& base) {
  const auto fix = [&](std::filesystem::path& p) {
    if (!p.empty() && p.is_relative()) p = (base / p).lexically_normal();
  };
  fix(c.out);
  if (c.model) fix(*c.model);
  if (c.baseline_model) fix(*c.baseline_model);
  if (c.dataset) {
    if (auto* a = std::get_if<ArchiveSource>(&*c.dataset)) fix(a->path);
    if (auto* s = std::get_if<CsvSource>(&*c.dataset)) fix(s->path);
  }
}

}  // namespace sparsesense::cli
