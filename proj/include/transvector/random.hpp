#pragma once

#include "transvector/rational.hpp"

#include <cstdint>

namespace transvector {

/// Counter-based generator: every draw is a pure function of
/// (seed, stream, counter), so parallel samples stay reproducible without
/// sharing state.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t bits(std::uint64_t stream, std::uint64_t counter) const {
    std::uint64_t z = mix(seed_ ^ mix(stream + 0x9e3779b97f4a7c15ULL)) + counter * 0xbf58476d1ce4e5b9ULL;
    return mix(z);
  }

  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::uint64_t stream, std::uint64_t counter, std::int64_t lo, std::int64_t hi) const {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(bits(stream, counter) % span);
  }

  /// Uniform double in [0, 1).
  double uniform(std::uint64_t stream, std::uint64_t counter) const {
    return static_cast<double>(bits(stream, counter) >> 11) * 0x1.0p-53;
  }

  /// p/q with |p| <= max_num and 1 <= q <= max_den.
  Rational small_rational(std::uint64_t stream, std::uint64_t counter, int max_num = 9, int max_den = 4) const {
    const auto p = uniform_int(stream, 2 * counter, -max_num, max_num);
    const auto q = uniform_int(stream, 2 * counter + 1, 1, max_den);
    Rational r(static_cast<long>(p), static_cast<unsigned long>(q));
    r.canonicalize();
    return r;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
};

}  // namespace transvector
