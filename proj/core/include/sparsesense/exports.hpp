#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "sparsesense/data.hpp"
#include "sparsesense/set_model.hpp"

namespace sparsesense {

/// Embedding table:
///   # z=<z>,activities=<a;b;...>
///   true_label,predicted_label,e_0,...,e_{z-1}
/// one row per segment, labels by name, values in shortest round-trip form.
std::string embeddings_csv(const SetModel& model, std::span<const SparseSegment> segments);
void export_embeddings(const SetModel& model, std::span<const SparseSegment> segments,
                       const std::filesystem::path& path);

/// counts[a][k - 1] is the number of segments of activity a with k
/// contributing samples, k in 1..max_count, max_count = min(max m, z).
struct DensityHistogram {
  ActivitySpace activities;
  std::size_t max_count = 0;
  std::vector<std::vector<std::size_t>> counts;

  std::size_t segments_of(std::size_t activity) const;
  double mean_count(std::size_t activity) const;  // 0 when the activity has no segments
};

DensityHistogram contributing_density(const SetModel& model,
                                      std::span<const SparseSegment> segments);

/// Long format: activity,contributing_count,segments,fraction
std::string density_csv(const DensityHistogram& histogram);

}  // namespace sparsesense
