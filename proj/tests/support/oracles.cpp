#include "oracles.hpp"

#include <numbers>

#include "fplab/modmath.hpp"

namespace fplab::oracles {

bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (std::uint64_t d = 5; d * d <= n; d += 6) {
    if (n % d == 0) return false;
    if (n % (d + 2) == 0) return false;
  }
  return true;
}

std::vector<std::int64_t> direct_rep_counts(const FpSet& a, const FpSet& b, bool difference) {
  const std::uint64_t p = a.prime();
  std::vector<std::int64_t> counts(p, 0);
  const auto ea = a.elements();
  const auto eb = b.elements();
  for (std::uint64_t x : ea)
    for (std::uint64_t y : eb) {
      const std::uint64_t t = difference ? sub_mod(y, x, p) : add_mod(x, y, p);
      ++counts[t];
    }
  return counts;
}

std::vector<std::complex<double>> direct_convolve(const GridFunction& f, const GridFunction& g) {
  const std::uint64_t p = f.prime();
  std::vector<std::complex<double>> out(p, {0.0, 0.0});
  for (std::uint64_t x = 0; x < p; ++x)
    for (std::uint64_t a = 0; a < p; ++a) out[x] += f[a] * g[sub_mod(x, a, p)];
  return out;
}

std::vector<std::complex<double>> direct_correlate(const GridFunction& f, const GridFunction& g) {
  const std::uint64_t p = f.prime();
  std::vector<std::complex<double>> out(p, {0.0, 0.0});
  for (std::uint64_t x = 0; x < p; ++x)
    for (std::uint64_t a = 0; a < p; ++a) out[x] += std::conj(f[a]) * g[add_mod(a, x, p)];
  return out;
}

std::vector<std::complex<double>> direct_dft(const GridFunction& f) {
  const std::uint64_t p = f.prime();
  std::vector<std::complex<double>> out(p, {0.0, 0.0});
  for (std::uint64_t xi = 0; xi < p; ++xi) {
    std::complex<double> acc{0.0, 0.0};
    for (std::uint64_t x = 0; x < p; ++x) {
      const double angle =
          -2.0 * std::numbers::pi * static_cast<double>((x * xi) % p) / static_cast<double>(p);
      acc += f[x] * std::polar(1.0, angle);
    }
    out[xi] = acc;
  }
  return out;
}

ScalingSearch exhaustive_scaling(const std::vector<std::int64_t>& exponents, std::uint64_t p,
                                 std::uint64_t c_bound) {
  const std::uint64_t m = p - 1;
  for (std::uint64_t l = 1; l <= p - 2; ++l) {
    if (gcd_u64(l, m) != 1) continue;
    std::uint64_t worst = 0;
    for (std::int64_t r : exponents) {
      const std::uint64_t prod = mul_mod(mod_reduce(r, m), l, m);
      const std::int64_t c = centered_residue(prod, m);
      worst = std::max<std::uint64_t>(worst, static_cast<std::uint64_t>(c < 0 ? -c : c));
    }
    if (worst <= c_bound) return ScalingSearch{true, l, worst};
  }
  return {};
}

FpSet naive_sumset(const FpSet& a, const FpSet& b) {
  FpSet out(a.context());
  const std::uint64_t p = a.prime();
  for (std::uint64_t x : a.elements())
    for (std::uint64_t y : b.elements()) out.insert(add_mod(x, y, p));
  return out;
}

}  // namespace fplab::oracles
