#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sparsesense/matrix.hpp"

namespace sparsesense {

/// One timestamped d-channel measurement.
struct SensorReading {
  double timestamp = 0.0;  // seconds
  std::vector<double> channels;

  friend bool operator==(const SensorReading&, const SensorReading&) = default;
};

/// Ordered list of activity names; index order is fixed for a model's life.
class ActivitySpace {
 public:
  ActivitySpace() = default;
  explicit ActivitySpace(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t index) const;
  std::optional<std::size_t> index_of(std::string_view name) const;
  const std::vector<std::string>& names() const { return names_; }

  /// Names joined with ';' (the delimiter used in file headers).
  std::string joined() const;
  static ActivitySpace parse_joined(std::string_view text);

  friend bool operator==(const ActivitySpace&, const ActivitySpace&) = default;

 private:
  std::vector<std::string> names_;
};

/// A subject's raw stream. labels[i] annotates readings[i].
struct SensorStream {
  std::vector<SensorReading> readings;
  std::vector<std::size_t> labels;
  std::string subject;
  double nominal_rate_hz = 20.0;

  std::size_t channel_count() const;
  /// Checks channel counts, label bounds and timestamp order.
  void validate(const ActivitySpace& activities) const;
};

/// Readings from one time window, treated as an unordered set.
///
/// Stored column-wise for the network: row i of `values` holds the channels
/// of the reading taken at `timestamps[i]`. Row order carries no meaning.
struct SparseSegment {
  std::vector<double> timestamps;
  Matrix values;  // m x d
  double window_start = 0.0;
  double window_len = 0.0;
  std::size_t label = 0;

  std::size_t cardinality() const { return timestamps.size(); }
  std::size_t channel_count() const { return values.cols(); }
  SensorReading reading(std::size_t i) const;
  void add(const SensorReading& reading);
  /// Keeps the given rows, in the given order.
  SparseSegment subset(std::span<const std::size_t> rows) const;
  /// Reorders readings; perm[i] names the source row of new row i.
  SparseSegment permuted(std::span<const std::size_t> perm) const;

  friend bool operator==(const SparseSegment&, const SparseSegment&) = default;
};

std::vector<std::size_t> labels_of(std::span<const SparseSegment> segments);

}  // namespace sparsesense
