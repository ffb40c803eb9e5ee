#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace sparsesense {

/// Mixes a base seed with a stream tag (splitmix64 finalizer). Used to derive
/// independent child seeds, e.g. one per layer or per sweep repetition.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

/// Seeded generator with platform-independent sampling.
///
/// The std distributions are implementation-defined, so every draw here is
/// built directly from the raw 64-bit mt19937_64 output. A given seed yields
/// the same stream on every conforming toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform01();
  double uniform(double lo, double hi);
  /// Uniform integer in [0, n). n must be positive.
  std::size_t below(std::size_t n);
  /// Standard normal (Box-Muller, one value per call).
  double normal();
  double exponential(double mean);

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sparsesense
