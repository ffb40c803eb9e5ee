#include "sparsesense/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "sparsesense/error.hpp"
#include "sparsesense/random.hpp"

namespace sparsesense {

double SynthConfig::noise_for(std::size_t activity) const {
  return noise_scales.size() == 1 ? noise_scales.front() : noise_scales.at(activity);
}

void SynthConfig::validate() const {
  if (activities.size() < 2) throw ConfigError("synthetic config needs at least two activities");
  if (means.rows() != activities.size() || means.cols() == 0) {
    throw ConfigError("synthetic config needs one mean vector per activity");
  }
  if (noise_scales.size() != 1 && noise_scales.size() != activities.size()) {
    throw ConfigError("noise_scales must hold one value or one per activity");
  }
  for (double s : noise_scales) {
    if (!(s >= 0.0)) throw ConfigError("noise scales must be nonnegative");
  }
  if (!(mean_gap_s > 0.0)) throw ConfigError("mean_gap_s must be positive");
  if (!(duration_s > 0.0)) throw ConfigError("duration_s must be positive");
  if (!(mean_dwell_s > 0.0)) throw ConfigError("mean_dwell_s must be positive");
  if (!(rate_hz > 0.0)) throw ConfigError("rate_hz must be positive");
}

SensorStream synth_sparse_stream(const SynthConfig& config, std::uint64_t seed) {
  config.validate();
  const std::size_t c = config.activities.size();
  const std::size_t d = config.means.cols();
  const double min_gap = 1.0 / config.rate_hz;

  // Separate streams for the activity chain and the readings so that changing
  // one setting does not reshuffle the other.
  Rng chain(derive_seed(seed, 0));
  Rng sensor(derive_seed(seed, 1));

  SensorStream stream;
  stream.subject = config.subject;
  stream.nominal_rate_hz = config.rate_hz;

  std::size_t activity = chain.below(c);
  double episode_end = config.mean_dwell_s * chain.uniform(0.5, 1.5);
  double t = 0.0;
  while (t < config.duration_s) {
    while (t >= episode_end) {
      std::size_t next = chain.below(c - 1);
      if (next >= activity) ++next;
      activity = next;
      episode_end += config.mean_dwell_s * chain.uniform(0.5, 1.5);
    }
    SensorReading r;
    r.timestamp = t;
    r.channels.resize(d);
    const double noise = config.noise_for(activity);
    for (std::size_t j = 0; j < d; ++j) {
      const double eps = sensor.normal();
      r.channels[j] = noise == 0.0 ? config.means(activity, j) : config.means(activity, j) + noise * eps;
    }
    stream.readings.push_back(std::move(r));
    stream.labels.push_back(activity);
    t += std::max(sensor.exponential(config.mean_gap_s), min_gap);
  }
  return stream;
}

}  // namespace sparsesense
