// Seeded, substream-capable randomness helpers. Every stochastic routine in
// the library derives a private mt19937_64 from (seed, stream index) so that
// restarts/trials can run concurrently and still reproduce bit-identically.
// Sampling goes through the helpers below rather than <random> distributions,
// whose algorithms are implementation-defined.
#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace bis::rng {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Independent stream for (seed, index); distinct indexes give uncorrelated
// generators.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed ^ (0xA0761D6478BD642FULL * (index + 1));
  std::uint64_t s0 = splitmix64(s);
  std::uint64_t s1 = splitmix64(s);
  return std::mt19937_64(s0 ^ (s1 << 1));
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Unbiased uniform index in [0, n).
inline std::size_t uniform_index(std::size_t n, std::mt19937_64& gen) {
  if (n == 0) throw std::invalid_argument("uniform_index over empty range");
  std::uint64_t bound = n;
  std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % bound;
  std::uint64_t x;
  do {
    x = gen();
  } while (x >= limit);
  return static_cast<std::size_t>(x % bound);
}

// CDF-inversion sample from a probability mass vector.
inline std::size_t sample_index(std::span<const double> probs,
                                std::mt19937_64& gen) {
  double u = uniform01(gen);
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return i;
  }
  // Rounding left u above the accumulated mass; return the last nonzero bin.
  for (std::size_t i = probs.size(); i-- > 0;) {
    if (probs[i] > 0.0) return i;
  }
  throw std::invalid_argument("sample_index over zero-mass vector");
}

// Symmetric Dirichlet(1) draw: a uniform point on the simplex.
inline std::vector<double> dirichlet_uniform(std::size_t n,
                                             std::mt19937_64& gen) {
  std::vector<double> v(n);
  double sum = 0.0;
  for (double& x : v) {
    double u = uniform01(gen);
    if (u <= 0.0) u = 0x1.0p-53;
    x = -std::log(u);
    sum += x;
  }
  for (double& x : v) x /= sum;
  return v;
}

}  // namespace bis::rng
