#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "sparsesense/data.hpp"

namespace sparsesense {

/// Categorical column (e.g. an RFID antenna id) expanded into one indicator
/// channel per category. Values outside `categories` make the row malformed.
struct OneHotColumn {
  std::size_t column = 0;
  std::vector<std::string> categories;
};

/// Column mapping for raw sensor CSV files. Defaults match the WISDM raw
/// layout: subject,activity,timestamp,x,y,z with no header.
struct CsvSchema {
  std::size_t subject_column = 0;
  std::size_t activity_column = 1;
  std::size_t timestamp_column = 2;
  std::vector<std::size_t> channel_columns{3, 4, 5};
  /// Indicator channels appended after the numeric channels, in this order.
  std::vector<OneHotColumn> onehot_columns;
  /// Expected number of fields per row; 0 means "highest mapped column + 1".
  std::size_t column_count = 0;
  bool has_header = false;
  char delimiter = ',';
  /// Multiplier converting the file's timestamp unit into seconds.
  double timestamp_scale = 1.0;
  double nominal_rate_hz = 20.0;
  /// Declared activity space. Empty means: discover names, sorted.
  std::vector<std::string> activities;

  std::size_t expected_columns() const;
  std::size_t channel_count() const;
  void validate() const;
};

struct IngestResult {
  std::vector<SensorStream> streams;  // one per subject, first-appearance order
  ActivitySpace activities;
  std::size_t rows_read = 0;     // non-blank data lines
  std::size_t rows_skipped = 0;  // malformed lines
};

/// Parses a raw sensor CSV. A single trailing ';' per line is tolerated;
/// lines with a wrong field count, blank fields, unparseable numbers or
/// undeclared activities are skipped and counted. Readings within each
/// subject are sorted by timestamp with a stable order for ties.
IngestResult ingest_csv(const std::filesystem::path& path, const CsvSchema& schema);
IngestResult ingest_csv_text(std::string_view text, const CsvSchema& schema);

}  // namespace sparsesense
