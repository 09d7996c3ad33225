#pragma once

#include <cstdint>

namespace vilenkin {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Word `slot` of the stream keyed by (seed, trial). Counter-based, so any
/// trial can be regenerated on its own and results do not depend on the
/// order in which trials run.
constexpr std::uint64_t stream_word(std::uint64_t seed, std::uint64_t trial, std::uint64_t slot) {
  return mix64(mix64(mix64(seed) ^ trial) ^ (slot * 0xd1b54a32d192ed03ULL));
}

/// Sequential generator over one (seed, trial) stream. Integer draws use
/// only integer arithmetic, so they agree on every platform.
class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::uint64_t trial) : seed_(seed), trial_(trial) {}

  std::uint64_t next() { return stream_word(seed_, trial_, slot_++); }

  /// Uniform in 0:n-1 (n >= 1), by rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }

  /// Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  std::uint64_t seed_;
  std::uint64_t trial_;
  std::uint64_t slot_ = 0;
};

}  // namespace vilenkin
