#include "sparsesense/data.hpp"

#include <algorithm>
#include <set>

#include "sparsesense/error.hpp"

namespace sparsesense {

ActivitySpace::ActivitySpace(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() < 2) throw ConfigError("an activity space needs at least two activities");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw ConfigError("activity names must be non-empty");
    if (n.find_first_of(",;\n\r\"") != std::string::npos) {
      throw ConfigError("activity name '" + n + "' contains a reserved character");
    }
    if (!seen.insert(n).second) throw ConfigError("duplicate activity name '" + n + "'");
  }
}

const std::string& ActivitySpace::name(std::size_t index) const {
  if (index >= names_.size()) throw IndexError("activity index " + std::to_string(index));
  return names_[index];
}

std::optional<std::size_t> ActivitySpace::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::string ActivitySpace::joined() const {
  std::string out;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (i) out += ';';
    out += names_[i];
  }
  return out;
}

ActivitySpace ActivitySpace::parse_joined(std::string_view text) {
  std::vector<std::string> names;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(';', start);
    names.emplace_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return ActivitySpace(std::move(names));
}

std::size_t SensorStream::channel_count() const {
  return readings.empty() ? 0 : readings.front().channels.size();
}

void SensorStream::validate(const ActivitySpace& activities) const {
  if (labels.size() != readings.size()) {
    throw DimensionError("stream '" + subject + "': label count != reading count");
  }
  const std::size_t d = channel_count();
  for (std::size_t i = 0; i < readings.size(); ++i) {
    if (readings[i].channels.size() != d) {
      throw DimensionError("stream '" + subject + "': inconsistent channel count");
    }
    if (labels[i] >= activities.size()) {
      throw IndexError("stream '" + subject + "': label outside the activity space");
    }
    if (readings[i].timestamp < 0.0 || (i > 0 && readings[i].timestamp < readings[i - 1].timestamp)) {
      throw InputError("stream '" + subject + "': timestamps must be nonnegative and sorted");
    }
  }
}

SensorReading SparseSegment::reading(std::size_t i) const {
  const auto row = values.row(i);
  return {timestamps.at(i), std::vector<double>(row.begin(), row.end())};
}

void SparseSegment::add(const SensorReading& r) {
  values.append_row(r.channels);
  timestamps.push_back(r.timestamp);
}

SparseSegment SparseSegment::subset(std::span<const std::size_t> rows) const {
  SparseSegment out;
  out.window_start = window_start;
  out.window_len = window_len;
  out.label = label;
  out.values = values.select_rows(rows);
  out.timestamps.reserve(rows.size());
  for (auto r : rows) out.timestamps.push_back(timestamps.at(r));
  return out;
}

SparseSegment SparseSegment::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != cardinality()) throw DimensionError("permutation length mismatch");
  return subset(perm);
}

std::vector<std::size_t> labels_of(std::span<const SparseSegment> segments) {
  std::vector<std::size_t> out;
  out.reserve(segments.size());
  for (const auto& s : segments) out.push_back(s.label);
  return out;
}

}  // namespace sparsesense
