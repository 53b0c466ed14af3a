#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace sunlab {

/// SplitMix64 finalizer. Used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// FNV-1a over the bytes of a purpose tag.
std::uint64_t fnv1a64(std::string_view text) noexcept;

/// Seed of the stream named by (root seed, purpose, index). Pure function, so
/// any language holding the same three values derives the same stream.
std::uint64_t derive_seed(std::uint64_t root, std::string_view purpose, std::uint64_t index = 0) noexcept;

/// A named reproducible random stream.
///
/// Raw bits come from std::mt19937_64, whose output sequence is fixed by the
/// standard. The floating-point transforms below are spelled out here instead
/// of using <random> distributions, whose algorithms are implementation-defined.
class RandomStream {
 public:
  RandomStream(std::uint64_t root, std::string_view purpose, std::uint64_t index = 0);
  explicit RandomStream(std::uint64_t derived_seed);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer on [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  /// Standard normal via Box-Muller (cosine branch only; one draw per call).
  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }

  /// Normal draw truncated to (0, inf) by resampling.
  double positive_normal(double mean, double sd);

 private:
  std::mt19937_64 engine_;
};

}  // namespace sunlab
