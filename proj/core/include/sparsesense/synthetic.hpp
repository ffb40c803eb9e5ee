#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sparsesense/data.hpp"
#include "sparsesense/matrix.hpp"

namespace sparsesense {

/// Parameters of the synthetic sparse-stream generator.
///
/// Activities follow a semi-Markov chain: each episode lasts a dwell time
/// drawn uniformly from [0.5, 1.5] * mean_dwell_s, and the next activity is
/// drawn uniformly from the other activities. Reading gaps are exponential
/// with mean `mean_gap_s`, floored at the sensor period 1 / rate_hz. Each
/// reading equals its activity's mean vector plus N(0, noise^2) per channel.
struct SynthConfig {
  ActivitySpace activities;
  Matrix means;                     // c x d, one row per activity
  std::vector<double> noise_scales; // one per activity, or a single shared value
  double mean_gap_s = 0.37;
  double duration_s = 1000.0;
  double mean_dwell_s = 30.0;
  double rate_hz = 40.0;
  std::string subject = "synthetic";

  double noise_for(std::size_t activity) const;
  void validate() const;
};

SensorStream synth_sparse_stream(const SynthConfig& config, std::uint64_t seed);

}  // namespace sparsesense
