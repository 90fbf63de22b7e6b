#include "fplab/constructions.hpp"

#include <cmath>
#include <stdexcept>

#include "fplab/modmath.hpp"
#include "fplab/rng.hpp"

namespace fplab {

FpSet arithmetic_progression(FieldRef ctx, std::uint64_t start, std::uint64_t step,
                             std::uint64_t len) {
  const std::uint64_t p = ctx->prime();
  if (len > p) throw std::invalid_argument("arithmetic_progression: length exceeds p");
  if (step % p == 0) throw std::invalid_argument("arithmetic_progression: step must be nonzero");
  FpSet out(std::move(ctx));
  std::uint64_t x = start % p;
  const std::uint64_t s = step % p;
  for (std::uint64_t i = 0; i < len; ++i) {
    out.insert(x);
    x = add_mod(x, s, p);
  }
  return out;
}

FpSet random_subset(FieldRef ctx, double density, std::uint64_t seed) {
  if (density < 0.0 || density > 1.0)
    throw std::invalid_argument("random_subset: density must lie in [0, 1]");
  const std::uint64_t p = ctx->prime();
  FpSet out(std::move(ctx));
  rng::Counter gen{seed};
  for (std::uint64_t x = 0; x < p; ++x)
    if (gen.unit(x) < density) out.insert(x);
  return out;
}

ConjectureInstance conjecture_instance(FieldRef ctx, const FpSet& p_set, const FpSet& q_set) {
  require_same_field(p_set, q_set);
  if (p_set.empty() || q_set.empty())
    throw std::invalid_argument("conjecture_instance: P and Q must be nonempty");
  const std::uint64_t p = ctx->prime();

  ConjectureInstance inst{p_set & inverse_set(q_set), p_set, q_set};
  const FpSet pq = sumset(p_set, q_set);
  inst.sum_bound = static_cast<double>(pq.size()) /
                   std::sqrt(static_cast<double>(p_set.size()) * static_cast<double>(q_set.size()));
  inst.independence_ratio = static_cast<double>(inst.a.size()) * static_cast<double>(p) /
                            (static_cast<double>(p_set.size()) * static_cast<double>(q_set.size()));
  if (inst.a.empty()) return inst;  // stats flagged undefined

  inst.stats_defined = true;
  const FpSet self_sum = sumset(inst.a, inverse_set(inst.a));
  inst.k_measured = static_cast<double>(self_sum.size()) /
                    std::sqrt(static_cast<double>(p) * static_cast<double>(inst.a.size()));
  inst.containment = self_sum.is_subset_of(pq);
  return inst;
}

FpSet quadratic_residues(FieldRef ctx) {
  const std::uint64_t p = ctx->prime();
  FpSet out(std::move(ctx));
  for (std::uint64_t x = 1; x < p; ++x) out.insert(mul_mod(x, x, p));
  return out;
}

FpSet gowers_set(const FpSet& p_set) { return root_set(p_set, 2); }

namespace {

// Backtracking search for a set of q+1 residues whose nonzero pairwise
// differences are all distinct (hence cover F_p^* exactly once when
// p = q^2+q+1). 0 and 1 can always be pinned by translating.
bool extend_pds(std::vector<std::uint64_t>& members, std::vector<bool>& used_diff,
                std::uint64_t target, std::uint64_t p) {
  if (members.size() == target) return true;
  for (std::uint64_t cand = members.back() + 1; cand < p; ++cand) {
    std::vector<std::uint64_t> marked;
    bool ok = true;
    for (std::uint64_t m : members) {
      const std::uint64_t d1 = sub_mod(cand, m, p);
      const std::uint64_t d2 = sub_mod(m, cand, p);
      if (used_diff[d1] || used_diff[d2] || d1 == d2) { ok = false; break; }
      used_diff[d1] = used_diff[d2] = true;
      marked.push_back(d1);
      marked.push_back(d2);
    }
    if (ok) {
      members.push_back(cand);
      if (extend_pds(members, used_diff, target, p)) return true;
      members.pop_back();
    }
    for (std::uint64_t d : marked) used_diff[d] = false;
  }
  return false;
}

}  // namespace

FpSet singer_difference_set(FieldRef ctx, std::uint64_t q) {
  const std::uint64_t p = ctx->prime();
  if (q == 0 || q * q + q + 1 != p)
    throw std::invalid_argument("singer_difference_set: requires p = q^2+q+1");
  if (p > 1000) throw std::invalid_argument("singer_difference_set: desk-scale search caps at p <= 1000");

  std::vector<std::uint64_t> members{0, 1};
  std::vector<bool> used_diff(p, false);
  used_diff[1] = used_diff[p - 1] = true;
  if (!extend_pds(members, used_diff, q + 1, p))
    throw std::runtime_error("singer_difference_set: search failed");

  FpSet out = FpSet::from_elements(ctx, members);
  // certify: every nonzero difference hit exactly once
  RepProfile prof = rep_profile(out, out, RepMode::Difference);
  for (std::uint64_t x = 1; x < p; ++x)
    if (prof.values[x] != 1)
      throw std::runtime_error("singer_difference_set: certification failed");
  return out;
}

std::pair<FpSet, FpSet> coprimality_counterexample(FieldRef ctx, double omega, double omega1) {
  const std::uint64_t p = ctx->prime();
  if (!(omega > 0.0) || !(omega1 > 0.0))
    throw std::invalid_argument("coprimality_counterexample: densities must be positive");
  const std::uint64_t lo = static_cast<std::uint64_t>(std::floor(omega1 * static_cast<double>(p)));
  const std::uint64_t hi = static_cast<std::uint64_t>(std::floor((omega1 + omega) * static_cast<double>(p)));
  // W = {lo+10 .. hi+10}, W1 = {0 .. lo}; need all intervals inside [0, p) and
  // (W + W) disjoint from (W1 - W1) without wraparound.
  if (hi + 10 >= p || 2 * (hi + 10) >= p - lo)
    throw std::invalid_argument("coprimality_counterexample: parameters wrap around the field");
  FpSet w(ctx), w1(ctx);
  for (std::uint64_t x = lo + 10; x <= hi + 10; ++x) w.insert(x);
  for (std::uint64_t x = 0; x <= lo; ++x) w1.insert(x);
  return {std::move(w), std::move(w1)};
}

FpSet named_construction(FieldRef ctx, const std::string& kind,
                         const NamedConstructionParams& params) {
  if (kind == "quadratic_residues") return quadratic_residues(std::move(ctx));
  if (kind == "gowers") {
    if (!params.base) throw std::invalid_argument("gowers construction needs a base set");
    return gowers_set(*params.base);
  }
  if (kind == "singer") return singer_difference_set(std::move(ctx), params.q);
  if (kind == "ap") return arithmetic_progression(std::move(ctx), params.start, params.step, params.len);
  if (kind == "random") return random_subset(std::move(ctx), params.density, params.seed);
  throw std::invalid_argument("unknown construction kind: " + kind);
}

}  // namespace fplab
