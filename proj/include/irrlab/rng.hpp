#pragma once

#include <cstdint>

namespace irrlab {

/// splitmix64: counter-based generator. `splitmix64(seed, i)` is a pure
/// function of (seed, i), so independent substreams are just distinct
/// counter values; merge order never affects the stream.
inline std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + counter * 0x9E3779B97F4A7C15ULL + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Uniform double in [0, 1).
inline double uniform01(std::uint64_t seed, std::uint64_t counter) {
    return static_cast<double>(splitmix64(seed, counter) >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n).
inline std::uint64_t uniform_below(std::uint64_t seed, std::uint64_t counter, std::uint64_t n) {
    return splitmix64(seed, counter) % n;
}

/// Stateful convenience wrapper around the counter-based core.
class SplitMix {
  public:
    explicit SplitMix(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed ^ (0x6A09E667F3BCC909ULL * (stream + 1))), counter_(0) {}

    std::uint64_t next() { return splitmix64(seed_, counter_++); }
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    std::uint64_t next_below(std::uint64_t n) { return next() % n; }

  private:
    std::uint64_t seed_;
    std::uint64_t counter_;
};

} // namespace irrlab
