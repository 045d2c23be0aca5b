#pragma once

#include <cstddef>
#include <cstdint>

namespace fracineq {

/// Counter-based generator: the stream for (seed, key) is a pure function of
/// both, so work items keyed by index draw the same numbers whatever thread
/// or order they run in.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t key, std::uint64_t subkey = 0)
      : state_(mix(mix(seed) ^ mix(key + 0x9e3779b97f4a7c15ULL) ^ mix(subkey + 0xd1b54a32d192ed03ULL))) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform index in [0, n); n > 0.
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(next() % n); }

  template <class Container>
  const auto& pick(const Container& c) {
    return c[index(c.size())];
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace fracineq
