#pragma once

#include <cstdint>
#include <initializer_list>

namespace fplab::rng {

// Counter-based generator: every draw is a pure function of (key, counter),
// so adding primes/trials to a sweep never perturbs other draws.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_key(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x6a09e667f3bcc909ull;
  for (std::uint64_t v : parts) h = splitmix64(h ^ splitmix64(v));
  return h;
}

struct Counter {
  std::uint64_t key = 0;

  std::uint64_t at(std::uint64_t counter) const {
    return splitmix64(key ^ splitmix64(counter + 0x9e3779b97f4a7c15ull));
  }
  // Uniform in [0, 1) with 53 bits of precision.
  double unit(std::uint64_t counter) const {
    return static_cast<double>(at(counter) >> 11) * 0x1.0p-53;
  }
  std::uint64_t below(std::uint64_t counter, std::uint64_t n) const {
    return at(counter) % n;
  }
};

}  // namespace fplab::rng
