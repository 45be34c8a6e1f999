#pragma once

// Deterministic randomness. Every experiment hangs off a single 64-bit seed;
// subsystem streams are derived by hashing the seed with a label and integer
// coordinates, so results are independent of evaluation order.

#include <cstdint>
#include <cmath>
#include <string_view>
#include <vector>

namespace netext {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// xoshiro256++ core
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) {
      sm = splitmix64(sm);
      word = sm;
    }
    if (state_[0] == 0 && state_[1] == 0 && state_[2] == 0 && state_[3] == 0) state_[0] = 1;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // uniform in [0,1), 53-bit resolution
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // uniform integer in [0, n)
  std::uint64_t below(std::uint64_t n) {
    // multiply-shift; bias is negligible for our n (tests and sampling only)
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
    return static_cast<std::uint64_t>(m >> 64);
  }

  // standard normal via Box-Muller (no state cached; second value discarded)
  double normal() {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  std::vector<double> gaussian_vector(std::size_t dim) {
    std::vector<double> v(dim);
    for (auto& x : v) x = normal();
    return v;
  }

  // uniform direction on the unit sphere (normalized gaussian)
  std::vector<double> unit_vector(std::size_t dim) {
    std::vector<double> v(dim);
    double s = 0.0;
    do {
      s = 0.0;
      for (auto& x : v) {
        x = normal();
        s += x * x;
      }
    } while (s == 0.0);
    const double inv = 1.0 / std::sqrt(s);
    for (auto& x : v) x *= inv;
    return v;
  }

  // uniform in the closed euclidean ball of the given radius
  std::vector<double> in_ball(std::size_t dim, double radius) {
    std::vector<double> v = unit_vector(dim);
    const double r = radius * std::pow(uniform01(), 1.0 / static_cast<double>(dim));
    for (auto& x : v) x *= r;
    return v;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t state_[4];
};

inline std::uint64_t mix_label(std::uint64_t h, std::string_view label) {
  for (const char c : label) h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<unsigned char>(c)));
  return h;
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
  return mix_label(splitmix64(seed), label);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view label, std::uint64_t i0) {
  return splitmix64(derive_seed(seed, label) ^ i0);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view label, std::uint64_t i0,
                                 std::uint64_t i1) {
  return splitmix64(derive_seed(seed, label, i0) ^ i1);
}

inline RngStream derive_stream(std::uint64_t seed, std::string_view label) {
  return RngStream(derive_seed(seed, label));
}

inline RngStream derive_stream(std::uint64_t seed, std::string_view label, std::uint64_t i0) {
  return RngStream(derive_seed(seed, label, i0));
}

inline RngStream derive_stream(std::uint64_t seed, std::string_view label, std::uint64_t i0,
                               std::uint64_t i1) {
  return RngStream(derive_seed(seed, label, i0, i1));
}

}  // namespace netext
