#pragma once

#include <cstdint>
#include <random>

namespace hbk {

/// SplitMix64 finalizer; derives independent stream seeds from (seed, index).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t campaign_seed, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(campaign_seed) ^ (index * 0xd1b54a32d192ed03ULL));
}

/// mt19937_64 with hand-rolled conversions so sampled values do not depend on
/// the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on the open interval (0, 1).
  double uniform_open() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  /// Uniform integer in [lo, hi].
  std::uint64_t integer(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo + 1;
    return lo + engine_() % span;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hbk
