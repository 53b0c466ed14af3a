#include "sunlab/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sunlab {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view text) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::uint64_t derive_seed(std::uint64_t root, std::string_view purpose, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(root ^ fnv1a64(purpose)) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

RandomStream::RandomStream(std::uint64_t root, std::string_view purpose, std::uint64_t index)
    : engine_(derive_seed(root, purpose, index)) {}

RandomStream::RandomStream(std::uint64_t derived_seed) : engine_(derived_seed) {}

double RandomStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t RandomStream::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("RandomStream::below: bound must be positive");
  // Rejection on the top of the range keeps the draw exactly uniform.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

double RandomStream::normal() {
  double u1;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double RandomStream::positive_normal(double mean, double sd) {
  for (int i = 0; i < 1000; ++i) {
    const double v = normal(mean, sd);
    if (v > 0.0) return v;
  }
  throw std::runtime_error("positive_normal: no positive draw after 1000 attempts");
}

}  // namespace sunlab
