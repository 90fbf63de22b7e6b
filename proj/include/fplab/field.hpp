#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace fplab {

/// Thresholds that make the tuple classes decidable at finite p.
struct ThresholdParams {
  int c_gen = 8;           // cap on gcd(r_i, p-1) for a generic exponent
  double delta = 0.1;      // pairwise gcd bound exponent: gcd(r_i - r_j, p-1) < p^(1-delta)
  int c_bound = 8;         // cap on |r_i * L mod (p-1)| for a bounded tuple
  std::uint64_t l_max = 0; // scaling search cap; 0 means p-2
};

/// Immutable per-prime context: the modulus plus precomputed transform tables.
/// Set algebra works for any prime up to 2^31; spectral operations need the
/// tables, which are built only for p <= kTableLimit.
class FieldContext {
 public:
  static constexpr std::uint64_t kMaxPrime = 1ull << 31;
  static constexpr std::uint64_t kTableLimit = 1ull << 22;

  explicit FieldContext(std::uint64_t p);

  std::uint64_t prime() const noexcept { return p_; }
  std::uint64_t unit_group_order() const noexcept { return p_ - 1; }
  bool has_transform_tables() const noexcept { return !roots_.empty(); }

  /// e(t) = exp(2*pi*i*t/p), t in [0, p).
  std::complex<double> root(std::uint64_t t) const { return roots_[t]; }
  std::span<const std::complex<double>> roots() const { return roots_; }

  // Length-p forward transform X[k] = sum_n x[n] * conj(e(nk)); x must have
  // size p. Chirp-z for general p, direct evaluation below a small threshold.
  std::vector<std::complex<double>> forward_dft(std::span<const std::complex<double>> x) const;

 private:
  std::uint64_t p_;
  std::vector<std::complex<double>> roots_;

  // chirp-z plan: fft_size_ >= 2p-1 is a power of two
  std::size_t fft_size_ = 0;
  std::vector<std::complex<double>> chirp_;       // exp(-i*pi*n^2/p)
  std::vector<std::complex<double>> kernel_fft_;  // transform of the wrapped conjugate chirp
  std::vector<std::complex<double>> twiddle_;     // radix-2 roots, size fft_size_/2

  void fft_pow2(std::vector<std::complex<double>>& a, bool inverse) const;
};

using FieldRef = std::shared_ptr<const FieldContext>;

/// Builds a context for an odd prime p >= 3; rejects anything else.
FieldRef make_field(std::uint64_t p);

struct ScalingWitness {
  std::uint64_t l = 0;
  std::uint64_t max_abs_residue = 0;
};

/// An exponent tuple (r_1, ..., r_k) with its gcd profile and class flags.
struct ExponentTuple {
  std::vector<std::int64_t> exponents;                 // as given
  std::vector<std::uint64_t> reduced;                  // r_i mod (p-1)
  std::vector<std::uint64_t> gcds;                     // gcd(r_i, p-1)
  std::vector<std::vector<std::uint64_t>> pair_gcds;   // gcd(r_i - r_j, p-1); diagonal 0
  bool generic = false;
  bool coprime = false;
  bool bounded = false;
  std::optional<ScalingWitness> scaling;
  int c_gen = 0;
  double delta = 0.0;

  std::size_t size() const noexcept { return exponents.size(); }
};

/// Populates gcd fields and class flags. Rejects empty input, zero exponents,
/// and duplicates mod p-1. For coprime tuples a scaling witness is searched
/// and, if found, sets the bounded flag.
ExponentTuple classify_exponent_tuple(std::span<const std::int64_t> rs,
                                      const FieldContext& ctx,
                                      const ThresholdParams& params = {});

/// Smallest L in [1, l_max], coprime to p-1, with every |centered(r_i * L)|
/// <= c_bound; nullopt when no such L exists. Requires a coprime tuple.
std::optional<ScalingWitness> find_scaling(const ExponentTuple& t,
                                           const FieldContext& ctx,
                                           const ThresholdParams& params = {});

}  // namespace fplab
