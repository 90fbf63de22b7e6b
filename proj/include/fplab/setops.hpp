#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fplab/fpset.hpp"

namespace fplab {

/// { a + b mod p : a in A, b in B }. Use B.negated() for difference sets.
FpSet sumset(const FpSet& a, const FpSet& b);

/// a_1*S_1 + ... + a_k*S_k where n*S is the n-fold sumset of S with itself.
/// Computed by repeated doubling of partial sums.
FpSet iterated_sumset(std::span<const std::uint64_t> coeffs, std::span<const FpSet> sets);

/// { 1/a mod p : a in A, a != 0 }; 0 is dropped.
FpSet inverse_set(const FpSet& a);

/// { a^r mod p : a in A }. For r < 0 the element 0 is excluded (x^r means
/// (x^{-1})^{|r|} on F_p^*). r = 0 is rejected.
FpSet pow_map(const FpSet& a, std::int64_t r);

/// { x : x^r in P }; for r < 0, x = 0 is excluded. r = 0 is rejected.
FpSet root_set(const FpSet& p_set, std::int64_t r);

enum class RepMode { Sum, Difference };

/// Exact representation counts: values[x] = #{(a,b) in A x B : x = a+b}
/// (Sum) or #{(a,b) : x = b-a} (Difference). Computed on the spectral path
/// with round-and-verify.
struct RepProfile {
  FieldRef ctx;
  std::vector<std::int64_t> values;
  RepMode mode;

  std::int64_t at(std::uint64_t x) const { return values[x]; }
};

RepProfile rep_profile(const FpSet& a, const FpSet& b, RepMode mode);

/// Integer popularity threshold for "at least eps*p representations":
/// count >= ceil(eps*p), ties included.
std::int64_t popularity_threshold(double eps, std::uint64_t p);

/// { x : rep count >= ceil(eps*p) }.
FpSet popular_sumset(const FpSet& a, const FpSet& b, double eps, RepMode mode);

/// Lower bound |union S_i| >= n*k^2/(k + n*l) for sets of size >= k with
/// pairwise intersections <= l; hypothesis violations throw, naming the pair.
struct UnionBoundAudit {
  std::uint64_t union_size = 0;
  double bound = 0.0;
  bool pass = false;
  // |S| >= c*k^2/l regime, recorded when n*l >= k
  bool k2l_applicable = false;
  double k2l_ratio = 0.0;  // union_size * l / k^2
  // ground-set form: n <= (|G|/k) / (1 - l|G|/k^2) with G = F_p
  bool ground_applicable = false;
  double ground_cap = 0.0;
  bool ground_pass = false;
};

UnionBoundAudit union_bound_audit(std::span<const FpSet> sets, std::uint64_t k, std::uint64_t l);

/// |nA - mA| <= (|A+A|/|A|)^{n+m} |A|; |nB| <= K^n |A| for K = |A+B|/|A|;
/// |A||B-C| <= |A-B||A-C|.
struct SumsetInequalityAudit {
  std::uint64_t lhs_iterated = 0;
  double rhs_iterated = 0.0;
  bool pass_iterated = false;
  std::uint64_t lhs_nfold = 0;
  double rhs_nfold = 0.0;
  bool pass_nfold = false;
  std::uint64_t lhs_triangle = 0;
  std::uint64_t rhs_triangle = 0;
  bool pass_triangle = false;
};

SumsetInequalityAudit sumset_inequality_audit(const FpSet& a, const FpSet& b, const FpSet& c,
                                              std::uint64_t n, std::uint64_t m);

/// Cardinality comparability and compatibility of a collection under a
/// budgeted power of K: max/min <= K^budget, and every |sum a_i P_i| with
/// coefficients in [1, coeff_cap] at most K^budget * max |P_i|.
struct ComparabilityAudit {
  double cardinality_ratio = 0.0;  // max|P_i| / min|P_i|
  double max_sum_ratio = 0.0;      // max over coefficient vectors of |sum a_i P_i| / max|P_i|
  bool comparable = false;
  bool compatible = false;
};

ComparabilityAudit comparability_audit(std::span<const FpSet> sets, double k_param,
                                       std::uint64_t coeff_cap, double exponent_budget = 1.0);

}  // namespace fplab
