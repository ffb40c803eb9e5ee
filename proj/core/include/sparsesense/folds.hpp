#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sparsesense/data.hpp"

namespace sparsesense {

/// Assignment of every segment to one of k folds.
struct FoldPlan {
  std::size_t k = 0;
  std::vector<std::size_t> assignments;  // segment index -> fold

  std::vector<std::size_t> validation_indices(std::size_t fold) const;
  std::vector<std::size_t> training_indices(std::size_t fold) const;
};

/// Shuffles each class's members with a seeded generator and deals them to
/// folds round-robin. The dealing position carries over from one class to the
/// next, which keeps fold totals balanced as well as per-class counts.
/// Throws StratificationError naming any class with fewer than k members;
/// with an activity space, classes absent from `labels` count as empty.
FoldPlan stratified_folds(std::span<const std::size_t> labels, std::size_t k,
                          std::uint64_t seed, const ActivitySpace* activities = nullptr);

FoldPlan stratified_folds(std::span<const SparseSegment> segments, std::size_t k,
                          std::uint64_t seed, const ActivitySpace* activities = nullptr);

}  // namespace sparsesense
