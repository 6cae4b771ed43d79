#pragma once

#include <cstdint>
#include <span>

namespace nsvm {

// splitmix64. Pinned algorithm so that seeded runs reproduce bit-for-bit
// across platforms and standard library versions.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0,1), 53 random bits
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform in [-1,1)
  double uniform_pm1() { return 2.0 * uniform01() - 1.0; }

  // fair sign in {-1,+1}
  double sign() { return (next() >> 63) ? 1.0 : -1.0; }

  // uniform integer in [0, bound); bound > 0
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }
};

// Decorrelated child seed for a numbered stream (per draw, per fold, ...).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 g(seed ^ (0xd1342543de82ef95ull * (stream + 1)));
  return g.next();
}

template <typename T>
void shuffle(std::span<T> values, SplitMix64& g) {
  for (std::size_t i = values.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(g.below(i));
    T tmp = values[i - 1];
    values[i - 1] = values[j];
    values[j] = tmp;
  }
}

}  // namespace nsvm
