#include "sparsesense/segment_archive.hpp"

#include "sparsesense/error.hpp"
#include "sparsesense/io_util.hpp"

namespace sparsesense {

namespace {

constexpr std::string_view kMagic = "#sparsesense-segments";

std::string header_value(std::string_view header, std::string_view key) {
  for (auto field : split(header, ',')) {
    const auto eq = field.find('=');
    if (eq != std::string_view::npos && field.substr(0, eq) == key) {
      return std::string(field.substr(eq + 1));
    }
  }
  throw LoadError("segment archive header lacks '" + std::string(key) + "'");
}

double need_double(std::string_view text, std::size_t line_no) {
  const auto v = parse_double(text);
  if (!v) throw LoadError("segment archive line " + std::to_string(line_no) + ": bad number");
  return *v;
}

std::size_t need_count(std::string_view text, std::size_t line_no) {
  const auto v = parse_int(text);
  if (!v || *v < 0) {
    throw LoadError("segment archive line " + std::to_string(line_no) + ": bad count");
  }
  return static_cast<std::size_t>(*v);
}

}  // namespace

std::string format_segment_archive(const SegmentArchive& archive) {
  std::string out;
  out += kMagic;
  out += ",version=1,d=" + std::to_string(archive.channels) +
         ",rate_hz=" + format_exact(archive.rate_hz) +
         ",activities=" + archive.activities.joined() + "\n";
  for (const auto& seg : archive.segments) {
    if (seg.channel_count() != archive.channels && seg.cardinality() > 0) {
      throw DimensionError("segment channel count differs from archive d");
    }
    out += "segment," + format_exact(seg.window_start) + "," + format_exact(seg.window_len) +
           "," + std::to_string(seg.label) + "," + std::to_string(seg.cardinality()) + "\n";
    for (std::size_t i = 0; i < seg.cardinality(); ++i) {
      out += "reading," + format_exact(seg.timestamps[i]);
      for (double v : seg.values.row(i)) out += "," + format_exact(v);
      out += "\n";
    }
  }
  return out;
}

SegmentArchive parse_segment_archive(std::string_view text) {
  const auto lines = split(text, '\n');
  if (lines.empty() || !trim(lines[0]).starts_with(kMagic)) {
    throw LoadError("not a segment archive (missing header)");
  }
  const auto header = trim(lines[0]);
  if (header_value(header, "version") != "1") throw LoadError("unsupported segment archive version");

  SegmentArchive archive;
  archive.channels = need_count(header_value(header, "d"), 1);
  archive.rate_hz = need_double(header_value(header, "rate_hz"), 1);
  try {
    archive.activities = ActivitySpace::parse_joined(header_value(header, "activities"));
  } catch (const ConfigError& e) {
    throw LoadError(std::string("segment archive activities: ") + e.what());
  }

  SparseSegment* current = nullptr;
  std::size_t expected = 0;
  for (std::size_t n = 1; n < lines.size(); ++n) {
    const auto line = trim(lines[n]);
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields[0] == "segment") {
      if (current && current->cardinality() != expected) {
        throw LoadError("segment archive line " + std::to_string(n + 1) + ": truncated segment");
      }
      if (fields.size() != 5) throw LoadError("segment archive line " + std::to_string(n + 1) + ": bad segment record");
      SparseSegment seg;
      seg.window_start = need_double(fields[1], n + 1);
      seg.window_len = need_double(fields[2], n + 1);
      seg.label = need_count(fields[3], n + 1);
      if (seg.label >= archive.activities.size()) {
        throw LoadError("segment archive line " + std::to_string(n + 1) + ": label out of range");
      }
      seg.values = Matrix(0, archive.channels);
      expected = need_count(fields[4], n + 1);
      archive.segments.push_back(std::move(seg));
      current = &archive.segments.back();
    } else if (fields[0] == "reading") {
      if (!current || current->cardinality() >= expected) {
        throw LoadError("segment archive line " + std::to_string(n + 1) + ": unexpected reading");
      }
      if (fields.size() != archive.channels + 2) {
        throw LoadError("segment archive line " + std::to_string(n + 1) + ": wrong channel count");
      }
      SensorReading r;
      r.timestamp = need_double(fields[1], n + 1);
      for (std::size_t j = 0; j < archive.channels; ++j) r.channels.push_back(need_double(fields[j + 2], n + 1));
      current->add(r);
    } else {
      throw LoadError("segment archive line " + std::to_string(n + 1) + ": unknown record");
    }
  }
  if (current && current->cardinality() != expected) throw LoadError("segment archive: truncated final segment");
  return archive;
}

void write_segment_archive(const std::filesystem::path& path, const SegmentArchive& archive) {
  write_file_atomic(path, format_segment_archive(archive));
}

SegmentArchive read_segment_archive(const std::filesystem::path& path) {
  return parse_segment_archive(read_text_file(path));
}

}  // namespace sparsesense
