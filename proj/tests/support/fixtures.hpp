#pragma once

// Shared synthetic datasets.

#include "sparsesense/synthetic.hpp"

namespace sstest {

/// Three activities with well separated channel means, sparse irregular
/// readings (mean gap 0.5 s).
inline sparsesense::SynthConfig separable_config(double duration_s = 600.0) {
  sparsesense::SynthConfig c{
      sparsesense::ActivitySpace({"lying", "walking", "running"}),
      sparsesense::Matrix::from_rows({{0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}, {2.0, -1.0, 0.5}}),
      {0.3}};
  c.mean_gap_s = 0.5;
  c.duration_s = duration_s;
  c.mean_dwell_s = 30.0;
  c.rate_hz = 20.0;
  return c;
}

/// One low-variance and one high-variance activity sharing a mean, plus a
/// third activity with a distinct mean. Uniform 20 Hz sampling.
inline sparsesense::SynthConfig static_dynamic_config(double duration_s = 600.0) {
  sparsesense::SynthConfig c{
      sparsesense::ActivitySpace({"static", "dynamic", "offset"}),
      sparsesense::Matrix::from_rows({{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {2.0, 2.0, 2.0}}),
      {0.1, 1.0, 0.1}};
  c.mean_gap_s = 1e-9;  // every gap is floored to the 20 Hz sensor period
  c.duration_s = duration_s;
  c.mean_dwell_s = 20.0;
  c.rate_hz = 20.0;
  return c;
}

}  // namespace sstest
