#pragma once

#include <cstdint>
#include <random>

namespace gmmse {

/// SplitMix64 finalizer. Used to expand user seeds and to derive
/// independent per-point seeds in sweeps.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed for stream `index` of a run seeded with `seed`:
/// splitmix64(splitmix64(seed) + index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Bit-reproducible random source.
///
/// Engine is std::mt19937_64 (output sequence fixed by the standard) seeded
/// with splitmix64(seed). Uniforms take the top 53 bits of one engine word.
/// Normals use the Box-Muller transform; both outputs of a pair are used,
/// cosine branch first. The library's std distributions are avoided because
/// their outputs differ between standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Uniform on [0, 1).
  double uniform();
  /// Standard normal.
  double normal();

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace gmmse
