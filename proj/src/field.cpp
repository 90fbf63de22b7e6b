#include "fplab/field.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fplab/modmath.hpp"

namespace fplab {

namespace {
constexpr std::size_t kDirectDftThreshold = 32;
}

FieldContext::FieldContext(std::uint64_t p) : p_(p) {
  if (p < 3 || p % 2 == 0)
    throw std::invalid_argument("field modulus must be an odd prime >= 3, got " + std::to_string(p));
  if (!is_prime(p))
    throw std::invalid_argument("field modulus is not prime: " + std::to_string(p));
  if (p > kMaxPrime)
    throw std::invalid_argument("field modulus exceeds the 2^31 support bound");

  if (p > kTableLimit) return;  // set algebra only; no transform tables

  const double two_pi = 2.0 * std::numbers::pi;
  roots_.resize(p);
  for (std::uint64_t t = 0; t < p; ++t)
    roots_[t] = std::polar(1.0, two_pi * static_cast<double>(t) / static_cast<double>(p));

  if (p <= kDirectDftThreshold) return;

  // chirp-z plan: X[k] = c[k] * (a ** b)[k] with a[n] = x[n]*c[n], b = conj(c)
  // wrapped; c[n] = exp(-i*pi*n^2/p) computed through n^2 mod 2p to keep the
  // angle argument small.
  fft_size_ = std::bit_ceil(2 * p - 1);
  chirp_.resize(p);
  const std::uint64_t two_p = 2 * p;
  for (std::uint64_t n = 0; n < p; ++n) {
    std::uint64_t sq = (n * n) % two_p;
    chirp_[n] = std::polar(1.0, -std::numbers::pi * static_cast<double>(sq) / static_cast<double>(p));
  }
  twiddle_.resize(fft_size_ / 2);
  for (std::size_t j = 0; j < fft_size_ / 2; ++j)
    twiddle_[j] = std::polar(1.0, -two_pi * static_cast<double>(j) / static_cast<double>(fft_size_));

  std::vector<std::complex<double>> kernel(fft_size_, std::complex<double>{0.0, 0.0});
  for (std::uint64_t n = 0; n < p; ++n) {
    kernel[n] = std::conj(chirp_[n]);
    if (n > 0) kernel[fft_size_ - n] = std::conj(chirp_[n]);
  }
  fft_pow2(kernel, false);
  kernel_fft_ = std::move(kernel);
}

void FieldContext::fft_pow2(std::vector<std::complex<double>>& a, bool inverse) const {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t step = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < len / 2; ++j) {
        std::complex<double> w = twiddle_[j * step];
        if (inverse) w = std::conj(w);
        std::complex<double> u = a[i + j];
        std::complex<double> v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
      }
    }
  }
  if (inverse) {
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& z : a) z *= scale;
  }
}

std::vector<std::complex<double>> FieldContext::forward_dft(
    std::span<const std::complex<double>> x) const {
  if (!has_transform_tables())
    throw std::logic_error("transform tables unavailable for p > 2^22");
  if (x.size() != p_) throw std::invalid_argument("forward_dft: input length must equal p");

  std::vector<std::complex<double>> out(p_);
  if (p_ <= kDirectDftThreshold) {
    for (std::uint64_t k = 0; k < p_; ++k) {
      std::complex<double> acc{0.0, 0.0};
      for (std::uint64_t n = 0; n < p_; ++n)
        acc += x[n] * std::conj(roots_[(n * k) % p_]);
      out[k] = acc;
    }
    return out;
  }

  std::vector<std::complex<double>> a(fft_size_, std::complex<double>{0.0, 0.0});
  for (std::uint64_t n = 0; n < p_; ++n) a[n] = x[n] * chirp_[n];
  fft_pow2(a, false);
  for (std::size_t i = 0; i < fft_size_; ++i) a[i] *= kernel_fft_[i];
  fft_pow2(a, true);
  for (std::uint64_t k = 0; k < p_; ++k) out[k] = a[k] * chirp_[k];
  return out;
}

FieldRef make_field(std::uint64_t p) { return std::make_shared<const FieldContext>(p); }

ExponentTuple classify_exponent_tuple(std::span<const std::int64_t> rs,
                                      const FieldContext& ctx,
                                      const ThresholdParams& params) {
  if (rs.empty()) throw std::invalid_argument("exponent tuple must be nonempty");
  const std::uint64_t m = ctx.unit_group_order();

  ExponentTuple t;
  t.exponents.assign(rs.begin(), rs.end());
  t.c_gen = params.c_gen;
  t.delta = params.delta;
  t.reduced.reserve(rs.size());
  for (std::int64_t r : rs) {
    if (r == 0) throw std::invalid_argument("exponent 0 is not allowed");
    t.reduced.push_back(mod_reduce(r, m));
  }
  const std::size_t k = rs.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (t.reduced[i] == t.reduced[j])
        throw std::invalid_argument("exponents must be pairwise distinct mod p-1");

  t.gcds.reserve(k);
  for (std::uint64_t e : t.reduced) t.gcds.push_back(gcd_u64(e, m));

  t.pair_gcds.assign(k, std::vector<std::uint64_t>(k, 0));
  const double pair_cap = std::pow(static_cast<double>(ctx.prime()), 1.0 - params.delta);
  bool generic = true, coprime = true;
  for (std::size_t i = 0; i < k; ++i) {
    if (t.gcds[i] > static_cast<std::uint64_t>(params.c_gen)) generic = false;
    if (t.gcds[i] != 1) coprime = false;
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      std::uint64_t d = sub_mod(t.reduced[i], t.reduced[j], m);
      t.pair_gcds[i][j] = gcd_u64(d, m);
      if (static_cast<double>(t.pair_gcds[i][j]) >= pair_cap) generic = false;
    }
  }
  t.generic = generic;
  t.coprime = coprime;
  if (coprime) {
    t.scaling = find_scaling(t, ctx, params);
    t.bounded = t.scaling.has_value();
  }
  return t;
}

std::optional<ScalingWitness> find_scaling(const ExponentTuple& t,
                                           const FieldContext& ctx,
                                           const ThresholdParams& params) {
  if (!t.coprime) throw std::invalid_argument("find_scaling requires a coprime tuple");
  const std::uint64_t m = ctx.unit_group_order();
  const std::uint64_t cap = params.l_max == 0 ? (ctx.prime() >= 3 ? ctx.prime() - 2 : 1) : params.l_max;
  for (std::uint64_t l = 1; l <= cap; ++l) {
    if (gcd_u64(l, m) != 1) continue;
    std::uint64_t worst = 0;
    for (std::uint64_t e : t.reduced) {
      std::int64_t c = centered_residue(mul_mod(e, l, m), m);
      worst = std::max<std::uint64_t>(worst, static_cast<std::uint64_t>(c < 0 ? -c : c));
    }
    if (worst <= static_cast<std::uint64_t>(params.c_bound)) return ScalingWitness{l, worst};
  }
  return std::nullopt;
}

}  // namespace fplab
