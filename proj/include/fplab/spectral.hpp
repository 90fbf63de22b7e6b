#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "fplab/fpset.hpp"

namespace fplab {

/// Raised when the exact-integer contract of the spectral path cannot be met
/// (some rounded value deviates from the raw value by 0.25 or more).
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense complex-valued function on F_p. The integral flag marks functions
/// known to take integer values; it gates the exact rounding contract of
/// convolve/correlate.
class GridFunction {
 public:
  GridFunction(FieldRef ctx, std::vector<std::complex<double>> values, bool integral = false);

  static GridFunction zero(FieldRef ctx);
  static GridFunction constant(FieldRef ctx, std::complex<double> c);
  static GridFunction delta(FieldRef ctx, std::uint64_t at);
  static GridFunction indicator(const FpSet& a);

  const FieldRef& context() const noexcept { return ctx_; }
  std::uint64_t prime() const noexcept { return ctx_->prime(); }
  std::span<const std::complex<double>> values() const noexcept { return values_; }
  std::complex<double> operator[](std::uint64_t x) const { return values_[x]; }
  bool integral() const noexcept { return integral_; }

  std::complex<double> sum() const;
  double l1_norm() const;
  double l2_norm() const;

  GridFunction scaled(std::complex<double> c) const;
  GridFunction plus(const GridFunction& other) const;
  GridFunction minus(const GridFunction& other) const;
  GridFunction pointwise(const GridFunction& other) const;

 private:
  FieldRef ctx_;
  std::vector<std::complex<double>> values_;
  bool integral_;
};

/// Fourier coefficients indexed by frequency; coeffs[0] equals the sum of the
/// transformed function's values.
struct Spectrum {
  FieldRef ctx;
  std::vector<std::complex<double>> coeffs;
};

/// Forward transform: coeffs[xi] = sum_x f(x) * conj(e(xi*x)).
Spectrum dft(const GridFunction& f);

/// Inverse: f(x) = (1/p) * sum_xi coeffs[xi] * e(xi*x).
GridFunction idft(const Spectrum& s);

/// (f*g)(x) = sum_{a+b=x} f(a) g(b). When both inputs carry the integral flag
/// the result is rounded to exact integers and any deviation >= 0.25 throws
/// PrecisionError.
GridFunction convolve(const GridFunction& f, const GridFunction& g);

/// (f o g)(x) = sum_{b-a=x} conj(f(a)) g(b); same exactness contract.
GridFunction correlate(const GridFunction& f, const GridFunction& g);

/// (1/p) * sum_xi |fhat(xi)|.
double wiener_norm(const GridFunction& f);
double wiener_norm(const FpSet& a);

/// |p*sum|f|^2 - sum|fhat|^2| / (p*sum|f|^2); 0 for the zero function.
double parseval_defect(const GridFunction& f);

}  // namespace fplab
