#include "sparsesense/csv_ingest.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "sparsesense/error.hpp"
#include "sparsesense/io_util.hpp"

namespace sparsesense {

std::size_t CsvSchema::expected_columns() const {
  if (column_count != 0) return column_count;
  std::size_t top = std::max({subject_column, activity_column, timestamp_column});
  for (auto c : channel_columns) top = std::max(top, c);
  for (const auto& h : onehot_columns) top = std::max(top, h.column);
  return top + 1;
}

std::size_t CsvSchema::channel_count() const {
  std::size_t n = channel_columns.size();
  for (const auto& h : onehot_columns) n += h.categories.size();
  return n;
}

void CsvSchema::validate() const {
  if (channel_columns.empty()) throw ConfigError("schema maps no channel columns");
  std::set<std::size_t> used{subject_column, activity_column, timestamp_column};
  for (auto c : channel_columns) used.insert(c);
  for (const auto& h : onehot_columns) {
    used.insert(h.column);
    if (h.categories.empty()) throw ConfigError("one-hot column declares no categories");
    if (std::set<std::string>(h.categories.begin(), h.categories.end()).size() != h.categories.size())
      throw ConfigError("one-hot column declares a category twice");
  }
  if (used.size() != channel_columns.size() + onehot_columns.size() + 3)
    throw ConfigError("schema maps a column twice");
  if (*used.rbegin() >= expected_columns()) {
    throw ConfigError("schema column_count is smaller than the mapped columns");
  }
  if (!(timestamp_scale > 0.0)) throw ConfigError("timestamp_scale must be positive");
  if (!(nominal_rate_hz > 0.0)) throw ConfigError("nominal_rate_hz must be positive");
  if (delimiter == ';') throw ConfigError("';' is reserved as the WISDM line terminator");
}

namespace {

struct Row {
  std::string subject;
  std::string activity;
  SensorReading reading;
};

std::optional<Row> parse_row(std::string_view line, const CsvSchema& schema) {
  if (!line.empty() && line.back() == ';') line.remove_suffix(1);
  const auto fields = split(line, schema.delimiter);
  if (fields.size() != schema.expected_columns()) return std::nullopt;

  Row row;
  row.subject = std::string(trim(fields[schema.subject_column]));
  row.activity = std::string(trim(fields[schema.activity_column]));
  if (row.subject.empty() || row.activity.empty()) return std::nullopt;

  const auto ts = parse_double(fields[schema.timestamp_column]);
  if (!ts) return std::nullopt;
  row.reading.timestamp = *ts * schema.timestamp_scale;
  if (!std::isfinite(row.reading.timestamp) || row.reading.timestamp < 0.0) return std::nullopt;

  row.reading.channels.reserve(schema.channel_count());
  for (auto col : schema.channel_columns) {
    const auto v = parse_double(fields[col]);
    if (!v || !std::isfinite(*v)) return std::nullopt;
    row.reading.channels.push_back(*v);
  }
  for (const auto& h : schema.onehot_columns) {
    const auto value = trim(fields[h.column]);
    const auto it = std::find(h.categories.begin(), h.categories.end(), value);
    if (it == h.categories.end()) return std::nullopt;
    const auto hot = static_cast<std::size_t>(it - h.categories.begin());
    for (std::size_t k = 0; k < h.categories.size(); ++k)
      row.reading.channels.push_back(k == hot ? 1.0 : 0.0);
  }
  return row;
}

}  // namespace

IngestResult ingest_csv_text(std::string_view text, const CsvSchema& schema) {
  schema.validate();
  IngestResult result;
  std::vector<Row> rows;
  bool header_pending = schema.has_header;

  for (auto raw : split(text, '\n')) {
    const auto line = trim(raw);
    if (line.empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    ++result.rows_read;
    auto row = parse_row(line, schema);
    if (!row) {
      ++result.rows_skipped;
      continue;
    }
    rows.push_back(std::move(*row));
  }

  std::vector<std::string> names = schema.activities;
  if (names.empty()) {
    std::set<std::string> found;
    for (const auto& r : rows) found.insert(r.activity);
    names.assign(found.begin(), found.end());
  }
  if (rows.empty()) throw EmptyInputError("no valid rows in input");
  if (names.size() < 2) throw EmptyInputError("input contains fewer than two activities");
  result.activities = ActivitySpace(names);

  std::map<std::string, std::size_t> stream_of;
  for (const auto& r : rows) {
    const auto label = result.activities.index_of(r.activity);
    if (!label) {
      ++result.rows_skipped;
      continue;
    }
    auto [it, inserted] = stream_of.try_emplace(r.subject, result.streams.size());
    if (inserted) {
      SensorStream s;
      s.subject = r.subject;
      s.nominal_rate_hz = schema.nominal_rate_hz;
      result.streams.push_back(std::move(s));
    }
    auto& s = result.streams[it->second];
    s.readings.push_back(r.reading);
    s.labels.push_back(*label);
  }
  if (result.streams.empty()) throw EmptyInputError("no rows match the declared activities");

  for (auto& s : result.streams) {
    std::vector<std::size_t> order(s.readings.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::ranges::stable_sort(order, [&](std::size_t a, std::size_t b) {
      return s.readings[a].timestamp < s.readings[b].timestamp;
    });
    SensorStream sorted;
    sorted.subject = s.subject;
    sorted.nominal_rate_hz = s.nominal_rate_hz;
    for (auto i : order) {
      sorted.readings.push_back(std::move(s.readings[i]));
      sorted.labels.push_back(s.labels[i]);
    }
    s = std::move(sorted);
  }
  return result;
}

IngestResult ingest_csv(const std::filesystem::path& path, const CsvSchema& schema) {
  if (!std::filesystem::exists(path)) throw IoError("input file '" + path.string() + "' does not exist");
  return ingest_csv_text(read_text_file(path), schema);
}

}  // namespace sparsesense
