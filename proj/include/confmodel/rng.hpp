#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>

namespace confmodel {

__extension__ typedef unsigned __int128 uint128_t;
__extension__ typedef __int128 int128_t;

// Portable random source for every sampler.
//
// Engine: std::mt19937_64 seeded with a single 64-bit value. Its output
// sequence is fixed by the C++ standard, and the bounded / real-valued draws
// below avoid std:: distributions (whose algorithms are implementation
// defined), so a seed reproduces the same chain on every platform.
//
// Stream splitting: chain c of a run seeded with s uses
// Rng::for_stream(s, c), i.e. mt19937_64(splitmix64(s ^ splitmix64(c + 1))).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng for_stream(std::uint64_t seed, std::uint64_t stream) {
    return Rng(splitmix64(seed ^ splitmix64(stream + 1)));
  }

  static std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, bound); bound > 0. Lemire's multiply-and-reject.
  std::uint64_t below(std::uint64_t bound) {
    uint128_t m = static_cast<uint128_t>(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<uint128_t>(next()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool coin() { return (next() >> 63) != 0; }

  template <class It>
  void shuffle(It first, It last) {
    const auto n = static_cast<std::uint64_t>(last - first);
    for (std::uint64_t i = n; i > 1; --i) {
      const std::uint64_t j = below(i);
      std::iter_swap(first + static_cast<std::ptrdiff_t>(i - 1),
                     first + static_cast<std::ptrdiff_t>(j));
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace confmodel
