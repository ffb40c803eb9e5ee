#include "sparsesense/folds.hpp"

#include <algorithm>
#include <map>

#include "sparsesense/error.hpp"
#include "sparsesense/random.hpp"

namespace sparsesense {

std::vector<std::size_t> FoldPlan::validation_indices(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (assignments[i] == fold) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FoldPlan::training_indices(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (assignments[i] != fold) out.push_back(i);
  }
  return out;
}

FoldPlan stratified_folds(std::span<const std::size_t> labels, std::size_t k,
                          std::uint64_t seed, const ActivitySpace* activities) {
  if (k < 2) throw ConfigError("stratified_folds needs k >= 2");
  std::map<std::size_t, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < labels.size(); ++i) members[labels[i]].push_back(i);
  if (activities) {
    for (std::size_t c = 0; c < activities->size(); ++c) members.try_emplace(c);
  }

  for (const auto& [label, idx] : members) {
    if (idx.size() < k) {
      std::string name = activities && label < activities->size() ? activities->name(label)
                                                                   : std::to_string(label);
      throw StratificationError("class '" + name + "' has " + std::to_string(idx.size()) +
                                " segments, fewer than k = " + std::to_string(k));
    }
  }

  FoldPlan plan;
  plan.k = k;
  plan.assignments.assign(labels.size(), 0);
  Rng rng(seed);
  std::size_t next_fold = 0;
  for (auto& [label, idx] : members) {
    rng.shuffle(std::span<std::size_t>(idx));
    for (auto i : idx) {
      plan.assignments[i] = next_fold;
      next_fold = (next_fold + 1) % k;
    }
  }
  return plan;
}

FoldPlan stratified_folds(std::span<const SparseSegment> segments, std::size_t k,
                          std::uint64_t seed, const ActivitySpace* activities) {
  const auto labels = labels_of(segments);
  return stratified_folds(labels, k, seed, activities);
}

}  // namespace sparsesense
