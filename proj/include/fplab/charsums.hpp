#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "fplab/field.hpp"

namespace fplab {

/// f(x) = sum_j a_j * (x - s_j)^{d_j}. Negative exponents put a pole at the
/// shift; pole points are excluded from character sums.
struct SparseTerm {
  std::uint64_t coeff = 1;  // in F_p, nonzero
  std::int64_t exponent = 1;
  std::uint64_t shift = 0;  // in F_p
};

struct SparsePolynomial {
  std::vector<SparseTerm> terms;
};

SparsePolynomial make_sparse_polynomial(std::span<const SparseTerm> terms, const FieldContext& ctx);

/// Evaluates f at x; returns false when x is a pole.
bool eval_sparse(const SparsePolynomial& f, std::uint64_t x, const FieldContext& ctx,
                 std::uint64_t& out);

/// sum over non-pole x of e(a * f(x)); a != 0 required.
std::complex<double> char_sum(const SparsePolynomial& f, std::uint64_t a, const FieldContext& ctx);

/// All nontrivial monomial character sums at once: result[a] = sum_x e(a*x^d)
/// for a in [0, p); O(p) per frequency via the value histogram of x^d.
std::vector<std::complex<double>> power_char_sum_scan(const FieldContext& ctx, std::uint64_t d);

/// h(x) = sum_i x^{r_i} + sum_j (x - s)^{d_j}; rs and ds must be generic and
/// bounded when nonempty. Poles (0 for negative r, s for negative d) excluded.
struct ShiftedPowerSum {
  std::complex<double> value;
  double sqrt_p_ratio = 0.0;  // |value| / sqrt(p)
  bool degenerate = false;    // h constant on its non-pole domain
};

ShiftedPowerSum shifted_power_sum(std::span<const std::int64_t> rs, std::span<const std::int64_t> ds,
                                  std::uint64_t s, std::uint64_t a, const FieldContext& ctx,
                                  const ThresholdParams& params = {});

/// Rational map numerator/denominator, gcd factored out at construction.
struct RationalMap {
  std::vector<std::uint64_t> numerator;    // coefficients, ascending degree
  std::vector<std::uint64_t> denominator;  // never the zero polynomial
  std::uint64_t deg_num = 0;
  std::uint64_t deg_den = 0;
};

RationalMap make_rational_map(std::span<const std::uint64_t> num, std::span<const std::uint64_t> den,
                              const FieldContext& ctx);

struct RationalCharSum {
  std::complex<double> value;
  std::uint64_t pole_count = 0;
  double weil_threshold = 0.0;  // (d1 + d2 + 1) * sqrt(p)
  bool exceeds_threshold = false;
  bool constant_flagged = false;
};

/// sum over non-pole x of e(a * f(x)); a != 0 required. Constant maps are
/// flagged, their sum still returned.
RationalCharSum rational_char_sum(const RationalMap& f, std::uint64_t a, const FieldContext& ctx);

}  // namespace fplab
