#include "bipgirth/random.hpp"

namespace bipgirth {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Seed derive_seed(Seed parent, std::uint64_t stream) {
  return Seed{splitmix64(parent.value ^ splitmix64(stream + 1))};
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // Rejection on the biased tail keeps the result exactly uniform.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t x = next();
    if (x >= threshold) return x % bound;
  }
}

}  // namespace bipgirth
