#ifndef CORESET_RNG_HPP
#define CORESET_RNG_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>

namespace coreset {

// splitmix64 step; used to whiten seeds and derive substreams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t x = (state += 0x9e3779b97f4a7c15ULL);
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_label(std::string_view label) {
  // FNV-1a
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Deterministic seeded generator. All randomness in the project flows through
// this class so that identical seeds give identical results on every platform;
// raw mt19937_64 output is mapped to doubles/indices without touching the
// implementation-defined std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {
    std::uint64_t s = seed;
    engine_.seed(splitmix64(s));
  }

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n), rejection sampled to avoid modulo bias.
  std::size_t uniform_index(std::size_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index: empty range");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return static_cast<std::size_t>(x % n);
  }

  // Derive an independent substream from the *original* seed and a label.
  // Forking does not consume or depend on this generator's state.
  Rng fork(std::string_view label, std::uint64_t index = 0) const {
    std::uint64_t s = seed_;
    std::uint64_t a = splitmix64(s);
    s = a ^ hash_label(label);
    a = splitmix64(s);
    s = a ^ (0x9e3779b97f4a7c15ULL * (index + 1));
    return Rng(splitmix64(s));
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace coreset

#endif  // CORESET_RNG_HPP
