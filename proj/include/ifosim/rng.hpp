#ifndef IFOSIM_RNG_HPP
#define IFOSIM_RNG_HPP

#include <cstdint>
#include <random>

namespace ifo {

// splitmix64 output function (Vigna). Used to derive independent replica
// seeds from (base_seed, index) so results do not depend on scheduling.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(base + index * 0x9e3779b97f4a7c15ULL);
}

// Uniform double in [0, 1) from the top 53 bits; portable across libstdc++
// versions, unlike std::uniform_real_distribution.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace ifo

#endif
