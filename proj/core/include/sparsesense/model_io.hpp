#pragma once

#include <filesystem>
#include <string>

#include "sparsesense/baseline.hpp"
#include "sparsesense/set_model.hpp"

namespace sparsesense {

inline constexpr int kModelFormatVersion = 1;

/// Model files are single JSON documents holding the format version, model
/// kind, activity names, dimensions, layer widths, normalizer stats, every
/// parameter as a row-major list and a digest over the rest of the document.
/// Doubles are written in round-trip form, so a loaded model predicts
/// bitwise-identically to the saved one.
std::string set_model_to_json(const SetModel& model);
SetModel set_model_from_json(std::string_view text);

std::string baseline_to_json(const DenseBaselineModel& model);
DenseBaselineModel baseline_from_json(std::string_view text);

void save_model(const SetModel& model, const std::filesystem::path& path);
void save_model(const DenseBaselineModel& model, const std::filesystem::path& path);
SetModel load_model(const std::filesystem::path& path);
DenseBaselineModel load_baseline(const std::filesystem::path& path);

}  // namespace sparsesense
