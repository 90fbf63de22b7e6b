#include "fplab/charsums.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fplab/modmath.hpp"

namespace fplab {

SparsePolynomial make_sparse_polynomial(std::span<const SparseTerm> terms, const FieldContext& ctx) {
  const std::uint64_t p = ctx.prime();
  SparsePolynomial f;
  for (const auto& t : terms) {
    if (t.coeff % p == 0) throw std::invalid_argument("sparse polynomial: zero coefficient");
    if (t.shift >= p) throw std::invalid_argument("sparse polynomial: shift out of range");
    f.terms.push_back(SparseTerm{t.coeff % p, t.exponent, t.shift});
  }
  for (std::size_t i = 0; i < f.terms.size(); ++i)
    for (std::size_t j = i + 1; j < f.terms.size(); ++j) {
      const auto& a = f.terms[i];
      const auto& b = f.terms[j];
      if (a.coeff == b.coeff && a.exponent == b.exponent && a.shift == b.shift)
        throw std::invalid_argument("sparse polynomial: duplicate term");
    }
  return f;
}

bool eval_sparse(const SparsePolynomial& f, std::uint64_t x, const FieldContext& ctx,
                 std::uint64_t& out) {
  const std::uint64_t p = ctx.prime();
  std::uint64_t acc = 0;
  for (const auto& t : f.terms) {
    const std::uint64_t base = sub_mod(x % p, t.shift, p);
    std::uint64_t val;
    if (base == 0) {
      if (t.exponent < 0) return false;  // pole
      val = t.exponent == 0 ? 1 : 0;
    } else {
      val = pow_mod(base, mod_reduce(t.exponent, p - 1), p);
    }
    acc = add_mod(acc, mul_mod(t.coeff, val, p), p);
  }
  out = acc;
  return true;
}

std::complex<double> char_sum(const SparsePolynomial& f, std::uint64_t a, const FieldContext& ctx) {
  const std::uint64_t p = ctx.prime();
  a %= p;
  if (a == 0) throw std::invalid_argument("char_sum: the character must be nontrivial (a != 0)");
  std::complex<double> acc{0.0, 0.0};
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t v;
    if (!eval_sparse(f, x, ctx, v)) continue;
    acc += ctx.root(mul_mod(a, v, p));
  }
  return acc;
}

std::vector<std::complex<double>> power_char_sum_scan(const FieldContext& ctx, std::uint64_t d) {
  const std::uint64_t p = ctx.prime();
  if (d == 0) throw std::invalid_argument("power_char_sum_scan: exponent must be nonzero");
  std::vector<std::uint64_t> hist(p, 0);
  for (std::uint64_t x = 0; x < p; ++x) ++hist[pow_mod(x, d, p)];
  std::vector<std::complex<double>> out(p, {0.0, 0.0});
  for (std::uint64_t a = 0; a < p; ++a) {
    std::complex<double> acc{0.0, 0.0};
    for (std::uint64_t t = 0; t < p; ++t)
      if (hist[t]) acc += static_cast<double>(hist[t]) * ctx.root(mul_mod(a, t, p));
    out[a] = acc;
  }
  return out;
}

ShiftedPowerSum shifted_power_sum(std::span<const std::int64_t> rs, std::span<const std::int64_t> ds,
                                  std::uint64_t s, std::uint64_t a, const FieldContext& ctx,
                                  const ThresholdParams& params) {
  const std::uint64_t p = ctx.prime();
  a %= p;
  if (a == 0) throw std::invalid_argument("shifted_power_sum: a must be nonzero");
  auto require_generic_bounded = [&](std::span<const std::int64_t> t, const char* which) {
    if (t.empty()) return;
    ExponentTuple cls = classify_exponent_tuple(t, ctx, params);
    if (!cls.generic || !cls.bounded)
      throw std::invalid_argument(std::string("shifted_power_sum: ") + which +
                                  " tuple must be generic and bounded");
  };
  require_generic_bounded(rs, "first");
  require_generic_bounded(ds, "second");

  std::vector<SparseTerm> terms;
  for (std::int64_t r : rs) terms.push_back(SparseTerm{1, r, 0});
  for (std::int64_t d : ds) terms.push_back(SparseTerm{1, d, s % p});
  SparsePolynomial h = make_sparse_polynomial(terms, ctx);

  ShiftedPowerSum out;
  std::complex<double> acc{0.0, 0.0};
  bool first = true, constant = true;
  std::uint64_t first_val = 0;
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t v;
    if (!eval_sparse(h, x, ctx, v)) continue;
    if (first) { first_val = v; first = false; }
    else if (v != first_val) constant = false;
    acc += ctx.root(mul_mod(a, v, p));
  }
  out.value = acc;
  out.sqrt_p_ratio = std::abs(acc) / std::sqrt(static_cast<double>(p));
  out.degenerate = constant;
  return out;
}

namespace {

std::uint64_t poly_degree(const std::vector<std::uint64_t>& c) {
  for (std::size_t i = c.size(); i-- > 0;)
    if (c[i] != 0) return static_cast<std::uint64_t>(i);
  return 0;
}

bool poly_is_zero(const std::vector<std::uint64_t>& c) {
  return std::all_of(c.begin(), c.end(), [](std::uint64_t v) { return v == 0; });
}

void poly_trim(std::vector<std::uint64_t>& c) {
  while (c.size() > 1 && c.back() == 0) c.pop_back();
}

// remainder of a by b over F_p
std::vector<std::uint64_t> poly_mod(std::vector<std::uint64_t> a, const std::vector<std::uint64_t>& b,
                                    std::uint64_t p) {
  poly_trim(a);
  const std::uint64_t db = poly_degree(b);
  const std::uint64_t lead_inv = inv_mod(b[db], p);
  while (!poly_is_zero(a) && poly_degree(a) >= db) {
    const std::uint64_t da = poly_degree(a);
    const std::uint64_t q = mul_mod(a[da], lead_inv, p);
    for (std::uint64_t i = 0; i <= db; ++i)
      a[da - db + i] = sub_mod(a[da - db + i], mul_mod(q, b[i], p), p);
    poly_trim(a);
  }
  return a;
}

std::vector<std::uint64_t> poly_gcd(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b,
                                    std::uint64_t p) {
  poly_trim(a);
  poly_trim(b);
  while (!poly_is_zero(b)) {
    auto r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  // normalize monic
  const std::uint64_t d = poly_degree(a);
  if (!poly_is_zero(a) && a[d] != 1) {
    const std::uint64_t inv = inv_mod(a[d], p);
    for (auto& c : a) c = mul_mod(c, inv, p);
  }
  return a;
}

// exact division (no remainder by construction)
std::vector<std::uint64_t> poly_div(std::vector<std::uint64_t> a, const std::vector<std::uint64_t>& b,
                                    std::uint64_t p) {
  poly_trim(a);
  const std::uint64_t db = poly_degree(b);
  const std::uint64_t da = poly_degree(a);
  if (poly_is_zero(a)) return {0};
  std::vector<std::uint64_t> q(da - db + 1, 0);
  const std::uint64_t lead_inv = inv_mod(b[db], p);
  while (!poly_is_zero(a) && poly_degree(a) >= db) {
    const std::uint64_t d = poly_degree(a);
    const std::uint64_t c = mul_mod(a[d], lead_inv, p);
    q[d - db] = c;
    for (std::uint64_t i = 0; i <= db; ++i)
      a[d - db + i] = sub_mod(a[d - db + i], mul_mod(c, b[i], p), p);
    poly_trim(a);
  }
  return q;
}

std::uint64_t poly_eval(const std::vector<std::uint64_t>& c, std::uint64_t x, std::uint64_t p) {
  std::uint64_t acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = add_mod(mul_mod(acc, x, p), c[i], p);
  return acc;
}

}  // namespace

RationalMap make_rational_map(std::span<const std::uint64_t> num, std::span<const std::uint64_t> den,
                              const FieldContext& ctx) {
  const std::uint64_t p = ctx.prime();
  std::vector<std::uint64_t> n(num.begin(), num.end());
  std::vector<std::uint64_t> d(den.begin(), den.end());
  for (auto& c : n) c %= p;
  for (auto& c : d) c %= p;
  if (n.empty()) n = {0};
  poly_trim(n);
  poly_trim(d);
  if (d.empty() || poly_is_zero(d))
    throw std::invalid_argument("rational map: denominator must be a nonzero polynomial");
  if (!poly_is_zero(n)) {
    auto g = poly_gcd(n, d, p);
    if (poly_degree(g) > 0) {
      n = poly_div(std::move(n), g, p);
      d = poly_div(std::move(d), g, p);
    }
  }
  RationalMap f;
  f.deg_num = poly_is_zero(n) ? 0 : poly_degree(n);
  f.deg_den = poly_degree(d);
  f.numerator = std::move(n);
  f.denominator = std::move(d);
  return f;
}

RationalCharSum rational_char_sum(const RationalMap& f, std::uint64_t a, const FieldContext& ctx) {
  const std::uint64_t p = ctx.prime();
  a %= p;
  if (a == 0) throw std::invalid_argument("rational_char_sum: a must be nonzero");
  RationalCharSum out;
  std::complex<double> acc{0.0, 0.0};
  bool first = true, constant = true;
  std::uint64_t first_val = 0;
  for (std::uint64_t x = 0; x < p; ++x) {
    const std::uint64_t den = poly_eval(f.denominator, x, p);
    if (den == 0) { ++out.pole_count; continue; }
    const std::uint64_t v = mul_mod(poly_eval(f.numerator, x, p), inv_mod(den, p), p);
    if (first) { first_val = v; first = false; }
    else if (v != first_val) constant = false;
    acc += ctx.root(mul_mod(a, v, p));
  }
  out.value = acc;
  out.weil_threshold =
      static_cast<double>(f.deg_num + f.deg_den + 1) * std::sqrt(static_cast<double>(p));
  out.exceeds_threshold = std::abs(acc) > out.weil_threshold;
  out.constant_flagged = constant;
  return out;
}

}  // namespace fplab
