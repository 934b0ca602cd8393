/**
 * @file rng.hpp
 * @brief Deterministic, platform-independent random numbers.
 *
 * std::mt19937_64's output sequence is fixed by the standard, but the
 * distributions are not; campaigns promise byte-identical reports for a
 * given seed, so the integer draw is implemented here (rejection sampling)
 * instead of via std::uniform_int_distribution.
 */
#pragma once

#include <cstdint>
#include <random>

namespace paradec {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform draw from {lo, ..., hi}, inclusive; lo <= hi.
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo + 1;  // 0 encodes the full 2^64 range
    if (span == 0) return engine_();
    const std::uint64_t limit = std::uint64_t(-span) % span;  // 2^64 mod span
    std::uint64_t draw = engine_();
    while (draw < limit) draw = engine_();
    return lo + draw % span;
  }

  /// Uniform index in [0, n).
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0, n - 1)); }

  bool coin() { return (engine_() & 1u) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace paradec
