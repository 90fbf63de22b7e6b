#include "fplab/setops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fplab/modmath.hpp"
#include "fplab/spectral.hpp"

namespace fplab {

FpSet sumset(const FpSet& a, const FpSet& b) {
  require_same_field(a, b);
  FpSet out(a.context());
  if (a.empty() || b.empty()) return out;
  const FpSet& small = a.size() <= b.size() ? a : b;
  const FpSet& big = a.size() <= b.size() ? b : a;
  small.for_each([&](std::uint64_t s) { out = out | big.shifted(s); });
  return out;
}

namespace {

// n-fold sumset by binary doubling: (m+n)S = mS + nS.
FpSet nfold(const FpSet& s, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("iterated_sumset: coefficients must be >= 1");
  if (s.empty()) return s;
  FpSet base = s;
  FpSet acc(s.context());
  bool have_acc = false;
  while (n) {
    if (n & 1) {
      acc = have_acc ? sumset(acc, base) : base;
      have_acc = true;
    }
    n >>= 1;
    if (n) base = sumset(base, base);
  }
  return acc;
}

}  // namespace

FpSet iterated_sumset(std::span<const std::uint64_t> coeffs, std::span<const FpSet> sets) {
  if (sets.empty() || coeffs.size() != sets.size())
    throw std::invalid_argument("iterated_sumset: need matching nonempty coefficient/set lists");
  FpSet acc = nfold(sets[0], coeffs[0]);
  for (std::size_t i = 1; i < sets.size(); ++i) {
    require_same_field(sets[0], sets[i]);
    acc = sumset(acc, nfold(sets[i], coeffs[i]));
  }
  return acc;
}

FpSet inverse_set(const FpSet& a) {
  const std::uint64_t p = a.prime();
  FpSet out(a.context());
  a.for_each([&](std::uint64_t x) {
    if (x != 0) out.insert(inv_mod(x, p));
  });
  return out;
}

FpSet pow_map(const FpSet& a, std::int64_t r) {
  if (r == 0) throw std::invalid_argument("pow_map: exponent must be nonzero");
  const std::uint64_t p = a.prime();
  const std::uint64_t e = mod_reduce(r, p - 1);
  FpSet out(a.context());
  a.for_each([&](std::uint64_t x) {
    if (x == 0) {
      if (r > 0) out.insert(0);  // 0^r = 0; for r < 0, 0 is dropped
      return;
    }
    out.insert(pow_mod(x, e, p));
  });
  return out;
}

FpSet root_set(const FpSet& p_set, std::int64_t r) {
  if (r == 0) throw std::invalid_argument("root_set: exponent must be nonzero");
  const std::uint64_t p = p_set.prime();
  const std::uint64_t e = mod_reduce(r, p - 1);
  FpSet out(p_set.context());
  if (r > 0 && p_set.contains(0)) out.insert(0);
  for (std::uint64_t x = 1; x < p; ++x)
    if (p_set.contains(pow_mod(x, e, p))) out.insert(x);
  return out;
}

RepProfile rep_profile(const FpSet& a, const FpSet& b, RepMode mode) {
  require_same_field(a, b);
  GridFunction fa = GridFunction::indicator(a);
  GridFunction fb = GridFunction::indicator(b);
  GridFunction prof = mode == RepMode::Sum ? convolve(fa, fb) : correlate(fa, fb);
  std::vector<std::int64_t> values(prof.values().size());
  for (std::size_t i = 0; i < values.size(); ++i)
    values[i] = static_cast<std::int64_t>(std::llround(prof.values()[i].real()));
  return RepProfile{a.context(), std::move(values), mode};
}

std::int64_t popularity_threshold(double eps, std::uint64_t p) {
  if (!(eps > 0.0)) throw std::invalid_argument("popularity parameter must be positive");
  double t = eps * static_cast<double>(p);
  // Guard against 1-ulp overshoot when eps was derived from an integer ratio.
  return static_cast<std::int64_t>(std::ceil(t - 1e-9 * std::max(1.0, t)));
}

FpSet popular_sumset(const FpSet& a, const FpSet& b, double eps, RepMode mode) {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("popular_sumset: eps must be in (0, 1]");
  RepProfile prof = rep_profile(a, b, mode);
  const std::int64_t thr = popularity_threshold(eps, a.prime());
  FpSet out(a.context());
  for (std::uint64_t x = 0; x < a.prime(); ++x)
    if (prof.values[x] >= thr) out.insert(x);
  return out;
}

UnionBoundAudit union_bound_audit(std::span<const FpSet> sets, std::uint64_t k, std::uint64_t l) {
  if (sets.empty()) throw std::invalid_argument("union_bound_audit: empty set list");
  const std::size_t n = sets.size();
  for (std::size_t i = 0; i < n; ++i)
    if (sets[i].size() < k)
      throw std::invalid_argument("union_bound_audit: |S_" + std::to_string(i) +
                                  "| < k violates the size hypothesis");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (sets[i].intersection_size(sets[j]) > l)
        throw std::invalid_argument("union_bound_audit: |S_" + std::to_string(i) + " ∩ S_" +
                                    std::to_string(j) + "| > l violates the intersection hypothesis");

  FpSet u = sets[0];
  for (std::size_t i = 1; i < n; ++i) u = u | sets[i];

  UnionBoundAudit audit;
  audit.union_size = u.size();
  const double nd = static_cast<double>(n), kd = static_cast<double>(k), ld = static_cast<double>(l);
  audit.bound = nd * kd * kd / (kd + nd * ld);
  audit.pass = static_cast<double>(audit.union_size) >= audit.bound - 1e-9;

  if (l > 0 && nd * ld >= kd) {
    audit.k2l_applicable = true;
    audit.k2l_ratio = static_cast<double>(audit.union_size) * ld / (kd * kd);
  }
  const double g = static_cast<double>(sets[0].prime());
  if (ld * g < kd * kd) {
    audit.ground_applicable = true;
    audit.ground_cap = (g / kd) / (1.0 - ld * g / (kd * kd));
    audit.ground_pass = nd <= audit.ground_cap + 1e-9;
  }
  return audit;
}

SumsetInequalityAudit sumset_inequality_audit(const FpSet& a, const FpSet& b, const FpSet& c,
                                              std::uint64_t n, std::uint64_t m) {
  if (a.empty()) throw std::invalid_argument("sumset_inequality_audit: A must be nonempty");
  SumsetInequalityAudit audit;

  const FpSet neg_a = a.negated();
  const FpSet sets_nm[] = {a, neg_a};
  const std::uint64_t coeffs_nm[] = {n, m};
  audit.lhs_iterated = iterated_sumset(coeffs_nm, sets_nm).size();
  const double doubling = static_cast<double>(sumset(a, a).size()) / static_cast<double>(a.size());
  audit.rhs_iterated = std::pow(doubling, static_cast<double>(n + m)) * static_cast<double>(a.size());
  audit.pass_iterated = static_cast<double>(audit.lhs_iterated) <= audit.rhs_iterated * (1.0 + 1e-12) + 1e-9;

  if (!b.empty()) {
    const FpSet sets_b[] = {b};
    const std::uint64_t coeffs_b[] = {n};
    audit.lhs_nfold = iterated_sumset(coeffs_b, sets_b).size();
    const double k_ab = static_cast<double>(sumset(a, b).size()) / static_cast<double>(a.size());
    audit.rhs_nfold = std::pow(k_ab, static_cast<double>(n)) * static_cast<double>(a.size());
    audit.pass_nfold = static_cast<double>(audit.lhs_nfold) <= audit.rhs_nfold * (1.0 + 1e-12) + 1e-9;
  } else {
    audit.pass_nfold = true;
  }

  audit.lhs_triangle = a.size() * sumset(b, c.negated()).size();
  audit.rhs_triangle = sumset(a, b.negated()).size() * sumset(a, c.negated()).size();
  audit.pass_triangle = audit.lhs_triangle <= audit.rhs_triangle;
  return audit;
}

ComparabilityAudit comparability_audit(std::span<const FpSet> sets, double k_param,
                                       std::uint64_t coeff_cap, double exponent_budget) {
  if (sets.empty()) throw std::invalid_argument("comparability_audit: empty set list");
  for (const auto& s : sets)
    if (s.empty()) throw std::invalid_argument("comparability_audit: sets must be nonempty");
  std::uint64_t mn = sets[0].size(), mx = sets[0].size();
  for (const auto& s : sets) {
    mn = std::min(mn, s.size());
    mx = std::max(mx, s.size());
  }
  ComparabilityAudit audit;
  audit.cardinality_ratio = static_cast<double>(mx) / static_cast<double>(mn);

  const std::size_t k = sets.size();
  double combos = std::pow(static_cast<double>(coeff_cap), static_cast<double>(k));
  if (coeff_cap == 0 || combos > 1e5)
    throw std::invalid_argument("comparability_audit: coefficient grid too large");

  std::vector<std::uint64_t> coeffs(k, 1);
  double worst = 0.0;
  for (;;) {
    FpSet total = iterated_sumset(coeffs, sets);
    worst = std::max(worst, static_cast<double>(total.size()) / static_cast<double>(mx));
    std::size_t i = 0;
    while (i < k && coeffs[i] == coeff_cap) coeffs[i++] = 1;
    if (i == k) break;
    ++coeffs[i];
  }
  audit.max_sum_ratio = worst;
  const double cap = std::pow(k_param, exponent_budget);
  audit.comparable = audit.cardinality_ratio <= cap + 1e-12;
  audit.compatible = audit.comparable && worst <= cap + 1e-12;
  return audit;
}

}  // namespace fplab
