#ifndef DD_RNG_HPP
#define DD_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace dd {

// Splitmix64 step, used only to turn (seed, stream) pairs into well-mixed
// engine seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Counter-based seeding: every (seed, stream) pair yields an independent,
// reproducible engine, so parallel loops can hand out one stream per work
// item without any shared RNG state.
inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s);
  s ^= 0x6a09e667f3bcc909ull + stream + (stream << 17);
  std::uint64_t b = splitmix64(s);
  return std::mt19937_64(a ^ (b + 0x9e3779b97f4a7c15ull * (stream + 1)));
}

// Uniform double in (0, 1]; never returns 0 so it is safe under log().
inline double uniform_unit(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1p-53;
}

// Box-Muller normal draw. std::normal_distribution is implementation
// defined; this keeps draws identical for a given engine everywhere.
inline double normal(std::mt19937_64& rng) {
  double u1 = uniform_unit(rng);
  double u2 = uniform_unit(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

}  // namespace dd

#endif
