#include "sparsesense/exports.hpp"

#include <algorithm>

#include "sparsesense/io_util.hpp"

namespace sparsesense {

std::string embeddings_csv(const SetModel& model, std::span<const SparseSegment> segments) {
  const std::size_t z = model.embedding_width();
  std::string out = "# z=" + std::to_string(z) + ",activities=" + model.activities.joined() + "\n";
  out += "true_label,predicted_label";
  for (std::size_t j = 0; j < z; ++j) out += ",e_" + std::to_string(j);
  out += '\n';
  for (const auto& s : segments) {
    const SegmentAnalysis a = analyze(model, s);
    out += model.activities.name(s.label);
    out += ',';
    out += model.activities.name(a.predicted);
    for (double v : a.pooled.embedding) {
      out += ',';
      out += format_exact(v);
    }
    out += '\n';
  }
  return out;
}

void export_embeddings(const SetModel& model, std::span<const SparseSegment> segments,
                       const std::filesystem::path& path) {
  write_file_atomic(path, embeddings_csv(model, segments));
}

std::size_t DensityHistogram::segments_of(std::size_t activity) const {
  std::size_t n = 0;
  for (auto c : counts.at(activity)) n += c;
  return n;
}

double DensityHistogram::mean_count(std::size_t activity) const {
  const std::size_t n = segments_of(activity);
  if (n == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < counts[activity].size(); ++k)
    sum += static_cast<double>((k + 1) * counts[activity][k]);
  return sum / static_cast<double>(n);
}

DensityHistogram contributing_density(const SetModel& model,
                                      std::span<const SparseSegment> segments) {
  DensityHistogram h{model.activities, 0, {}};
  std::size_t max_m = 0;
  for (const auto& s : segments) max_m = std::max(max_m, s.cardinality());
  h.max_count = std::min(max_m, model.embedding_width());
  h.counts.assign(model.activities.size(), std::vector<std::size_t>(h.max_count, 0));
  for (const auto& s : segments) {
    const std::size_t k = contributing_count(pool(embed_samples(model, s)), s.cardinality());
    h.counts.at(s.label).at(k - 1) += 1;
  }
  return h;
}

std::string density_csv(const DensityHistogram& histogram) {
  std::string out = "activity,contributing_count,segments,fraction\n";
  for (std::size_t a = 0; a < histogram.counts.size(); ++a) {
    const std::size_t n = histogram.segments_of(a);
    for (std::size_t k = 0; k < histogram.max_count; ++k) {
      const std::size_t c = histogram.counts[a][k];
      const double frac = n == 0 ? 0.0 : static_cast<double>(c) / static_cast<double>(n);
      out += histogram.activities.name(a) + ',' + std::to_string(k + 1) + ',' +
             std::to_string(c) + ',' + format_sig9(frac) + '\n';
    }
  }
  return out;
}

}  // namespace sparsesense
