#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace fplab {

// Arithmetic in Z/m for moduli below 2^31, so products fit in 64 bits.

inline std::uint64_t mod_reduce(std::int64_t v, std::uint64_t m) {
  std::int64_t r = v % static_cast<std::int64_t>(m);
  if (r < 0) r += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(r);
}

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  std::uint64_t s = a + b;
  return s >= m ? s - m : s;
}

inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return a >= b ? a - b : a + m - b;
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return (a * b) % m;
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t acc = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) acc = mul_mod(acc, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return acc;
}

// Inverse modulo a prime p; requires a != 0 mod p.
inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0) throw std::domain_error("inv_mod: zero has no inverse");
  return pow_mod(a, p - 2, p);
}

// Representative of t mod m in [-(m/2), m/2] (for even m the range is (-m/2, m/2]).
inline std::int64_t centered_residue(std::uint64_t t, std::uint64_t m) {
  t %= m;
  if (t <= m / 2) return static_cast<std::int64_t>(t);
  return static_cast<std::int64_t>(t) - static_cast<std::int64_t>(m);
}

// Deterministic Miller-Rabin; the base set is exact for any 64-bit input.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  auto mulm = [n](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % n);
  };
  auto powm = [&](std::uint64_t base, std::uint64_t exp) {
    std::uint64_t acc = 1;
    while (exp) {
      if (exp & 1) acc = mulm(acc, base);
      base = mulm(base, base);
      exp >>= 1;
    }
    return acc;
  };
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powm(a, d);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulm(x, x);
      if (x == n - 1) { witness = false; break; }
    }
    if (witness) return false;
  }
  return true;
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

}  // namespace fplab
