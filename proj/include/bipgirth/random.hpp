#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace bipgirth {

struct Seed {
  std::uint64_t value = 0;
  friend bool operator==(Seed, Seed) = default;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Child seed for an independent stream: splitmix64(parent ^ splitmix64(stream + 1)).
Seed derive_seed(Seed parent, std::uint64_t stream);

// Engine is std::mt19937_64; all distributions below are implemented here so
// a seed reproduces the same draws on every standard library.
class Rng {
 public:
  explicit Rng(Seed seed) : engine_(seed.value) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit() < p; }

  template <class T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace bipgirth
