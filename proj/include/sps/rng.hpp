#pragma once

#include <cmath>
#include <cstdint>

#include "sps/common.hpp"

namespace sps::rng {

// Counter-based generator built on the splitmix64 finalizer. Every draw is a
// pure function of (seed, counter), so streams are random-access: any element
// of a sequence can be produced without generating its predecessors. That is
// what makes record replay and thread-count-independent sampling possible.

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

/// i-th element of the stream identified by `seed`.
inline std::uint64_t at(std::uint64_t seed, std::uint64_t i) {
  return mix64(seed + (i + 1) * kGolden);
}

/// Derives an independent child seed; used for (masterSeed, record, stream)
/// splitting so distinct records get statistically independent draws.
inline std::uint64_t derive(std::uint64_t seed, std::uint64_t a,
                            std::uint64_t b = 0) {
  return mix64(at(seed, a) ^ at(seed ^ 0x6A09E667F3BCC909ull, b));
}

/// Uniform double in [0, 1).
inline double uniform01(std::uint64_t seed, std::uint64_t i) {
  return static_cast<double>(at(seed, i) >> 11) * 0x1.0p-53;
}

/// Standard normal via Box-Muller; one value per counter, fully deterministic.
inline double gaussian(std::uint64_t seed, std::uint64_t i) {
  // Map to (0,1] so the log argument never vanishes.
  const double u1 =
      (static_cast<double>(at(seed, 2 * i) >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(at(seed, 2 * i + 1) >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

/// FNV-1a over the raw bytes of a double vector; used to key deterministic
/// perturbation directions to the point being perturbed.
inline std::uint64_t content_hash(const Vec& x) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (double v : x) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(v));
    __builtin_memcpy(&bits, &v, sizeof(bits));
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xFFu;
      h *= 0x100000001B3ull;
    }
  }
  return h;
}

}  // namespace sps::rng
