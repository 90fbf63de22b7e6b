#include "fplab/structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fplab/modmath.hpp"

namespace fplab {

DistanceReport additive_distance(const GridFunction& f, const GridFunction& g) {
  if (f.prime() != g.prime()) throw std::invalid_argument("additive_distance: field mismatch");
  GridFunction ff = correlate(f, f);
  GridFunction gg = correlate(g, g);
  DistanceReport rep;
  double best = -1.0, best_star = 0.0;
  const std::uint64_t p = f.prime();
  for (std::uint64_t x = 0; x < p; ++x) {
    const double d = std::abs(ff[x] - gg[x]);
    if (d > best) { best = d; rep.argmax_point = x; }
    if (x != 0) best_star = std::max(best_star, d);
  }
  rep.rho = std::sqrt(std::max(best, 0.0));
  rep.rho_star = std::sqrt(best_star);
  return rep;
}

double rho(const GridFunction& f) {
  return additive_distance(f, GridFunction::zero(f.context())).rho;
}

namespace {

// Membership test for x in the r-th root preimage of s, honoring the
// 0-element convention for negative exponents.
struct RootMembership {
  std::uint64_t reduced;
  bool negative;
  const FpSet* set;

  bool test(std::uint64_t x, std::uint64_t p) const {
    if (x == 0) return negative ? false : set->contains(0);
    return set->contains(pow_mod(x, reduced, p));
  }
};

}  // namespace

AipResult aip_defect(std::span<const FpSet> ps, const ExponentTuple& rs) {
  if (ps.size() != rs.size())
    throw std::invalid_argument("aip_defect: set list and exponent tuple sizes differ");
  if (ps.empty()) throw std::invalid_argument("aip_defect: empty input");
  if (!rs.generic) throw std::invalid_argument("aip_defect: tuple must be generic");
  for (std::size_t i = 1; i < ps.size(); ++i) require_same_field(ps[0], ps[i]);

  const std::uint64_t p = ps[0].prime();
  std::vector<RootMembership> tests;
  tests.reserve(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i)
    tests.push_back(RootMembership{rs.reduced[i], rs.exponents[i] < 0, &ps[i]});

  FpSet inter(ps[0].context());
  for (std::uint64_t x = 0; x < p; ++x) {
    bool in = true;
    for (const auto& t : tests)
      if (!t.test(x, p)) { in = false; break; }
    if (in) inter.insert(x);
  }

  double predicted = std::pow(static_cast<double>(p), 1.0 - static_cast<double>(ps.size()));
  for (const auto& s : ps) predicted *= static_cast<double>(s.size());
  AipResult res{std::move(inter), predicted, 0.0};
  res.defect = static_cast<double>(res.intersection.size()) - predicted;
  return res;
}

WProductSpec make_w_product(std::span<const FpSet> sets, std::span<const std::int64_t> rs,
                            const ThresholdParams& params) {
  if (sets.empty() || sets.size() != rs.size() + 1)
    throw std::invalid_argument("make_w_product: need S_0..S_k and k exponents");
  for (std::size_t i = 1; i < sets.size(); ++i) require_same_field(sets[0], sets[i]);

  std::vector<std::int64_t> full;
  full.push_back(1);
  full.insert(full.end(), rs.begin(), rs.end());
  WProductSpec spec;
  spec.exponents = classify_exponent_tuple(full, *sets[0].context(), params);
  if (!spec.exponents.coprime)
    throw std::invalid_argument("make_w_product: tuple (1, r_1..r_k) must be coprime");
  spec.sets.assign(sets.begin(), sets.end());
  const double p = static_cast<double>(sets[0].prime());
  for (const auto& s : sets) spec.max_wiener = std::max(spec.max_wiener, wiener_norm(s));
  for (std::size_t i = 1; i < sets.size(); ++i) {
    spec.deltas.push_back(static_cast<double>(sets[i].size()) / p);
    spec.delta_f *= spec.deltas.back();
  }
  return spec;
}

GridFunction w_product(const WProductSpec& spec) {
  const std::uint64_t p = spec.sets[0].prime();
  std::vector<std::complex<double>> v(p, {0.0, 0.0});
  std::vector<RootMembership> tests;
  for (std::size_t i = 0; i < spec.sets.size(); ++i)
    tests.push_back(RootMembership{spec.exponents.reduced[i], spec.exponents.exponents[i] < 0,
                                   &spec.sets[i]});
  for (std::uint64_t x = 0; x < p; ++x) {
    bool in = true;
    for (const auto& t : tests)
      if (!t.test(x, p)) { in = false; break; }
    if (in) v[x] = {1.0, 0.0};
  }
  return GridFunction(spec.sets[0].context(), std::move(v), true);
}

ConvApproxResult conv_approx_defect(const WProductSpec& spec) {
  if (!spec.exponents.coprime || !spec.exponents.bounded)
    throw std::invalid_argument("conv_approx_defect: tuple must be coprime and bounded");
  GridFunction f = w_product(spec);
  GridFunction target = GridFunction::indicator(spec.sets[0]).scaled(spec.delta_f);
  DistanceReport d = additive_distance(f, target);

  ConvApproxResult res;
  res.rho_star = d.rho_star;
  res.rho_star_sq = d.rho_star * d.rho_star;
  const std::size_t k = spec.sets.size() - 1;
  res.scale = std::pow(spec.max_wiener, 2.0 * static_cast<double>(k) + 2.0) *
              std::sqrt(static_cast<double>(spec.sets[0].prime()));
  res.ratio = res.scale > 0.0 ? res.rho_star_sq / res.scale : 0.0;
  return res;
}

double energy(const GridFunction& f, double s) {
  if (s < 1.0) throw std::invalid_argument("energy: s must be >= 1");
  GridFunction ff = correlate(f, f);
  double acc = 0.0;
  for (const auto& v : ff.values()) acc += std::pow(std::abs(v), s);
  return acc;
}

EnergyAudit energy_bound_audit(const GridFunction& f, double s) {
  for (const auto& v : f.values())
    if (v.imag() != 0.0 || v.real() < 0.0)
      throw std::invalid_argument("energy_bound_audit: f must be real and nonnegative");
  EnergyAudit audit;
  audit.energy = energy(f, s);
  const double r = rho(f);
  const double l1 = f.l1_norm();
  audit.bound = std::pow(r, 2.0 * s - 2.0) * l1 * l1;
  audit.pass = audit.energy <= audit.bound * (1.0 + 1e-6) + 1e-9;
  return audit;
}

double entropy(const FpSet& a) {
  if (a.empty()) throw std::invalid_argument("entropy: set must be nonempty");
  RepProfile prof = rep_profile(a, a, RepMode::Difference);
  const double card = static_cast<double>(a.size());
  double acc = 0.0;
  for (std::int64_t v : prof.values)
    if (v > 0) acc += static_cast<double>(v) * std::log(static_cast<double>(v));
  return 2.0 * std::log(card) - acc / (card * card);
}

EntropyGapAudit entropy_gap_audit(const FpSet& a, const FpSet& b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("entropy_gap_audit: sets must be nonempty");
  if (!b.is_subset_of(a)) throw std::invalid_argument("entropy_gap_audit: B must be a subset of A");
  EntropyGapAudit audit;
  audit.gap = std::abs(entropy(a) - entropy(b));
  const double r =
      additive_distance(GridFunction::indicator(a), GridFunction::indicator(b)).rho;
  const double diff_card = static_cast<double>(sumset(b, b.negated()).size());
  const double bc = static_cast<double>(b.size());
  audit.bound = std::sqrt(r) * diff_card * std::log(bc) / (bc * bc);
  if (audit.bound > 0.0)
    audit.ratio = audit.gap / audit.bound;
  else
    audit.ratio = audit.gap == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return audit;
}

FourierRhoAudit fourier_rho_audit(const GridFunction& f) {
  FourierRhoAudit audit;
  Spectrum s = dft(f);
  for (const auto& c : s.coeffs) audit.max_coeff = std::max(audit.max_coeff, std::abs(c));
  audit.bound = rho(f) * std::sqrt(static_cast<double>(f.prime())) + 1e-6;
  audit.pass = audit.max_coeff <= audit.bound;
  return audit;
}

QrProductAudit qr_product_audit(const FpSet& s, const FpSet& t) {
  require_same_field(s, t);
  const FieldRef& ctx = s.context();
  const std::uint64_t p = s.prime();
  FpSet residues(ctx);
  for (std::uint64_t x = 1; x < p; ++x) residues.insert(mul_mod(x, x, p));
  const FpSet as = s & residues;
  const FpSet at = t & residues;
  const double delta_s = s.empty() ? 0.0 : static_cast<double>(as.size()) / static_cast<double>(s.size());
  const double delta_t = t.empty() ? 0.0 : static_cast<double>(at.size()) / static_cast<double>(t.size());

  GridFunction conv_layer = convolve(GridFunction::indicator(as), GridFunction::indicator(at));
  GridFunction conv_full = convolve(GridFunction::indicator(s), GridFunction::indicator(t));
  QrProductAudit audit;
  for (std::uint64_t x = 0; x < p; ++x)
    audit.defect = std::max(audit.defect,
                            std::abs(conv_layer[x] - delta_s * delta_t * conv_full[x]));
  audit.max_wiener = std::max(wiener_norm(s), wiener_norm(t));
  audit.scale = audit.max_wiener * audit.max_wiener * std::sqrt(static_cast<double>(p));
  audit.ratio = audit.scale > 0.0 ? audit.defect / audit.scale : 0.0;
  return audit;
}

ApproximabilityLevel approximability_level(const FpSet& target, const FpSet& approximant) {
  require_same_field(target, approximant);
  ApproximabilityLevel lvl;
  lvl.xi = static_cast<double>(target.sym_diff(approximant).size()) /
           static_cast<double>(target.prime());
  lvl.wiener = wiener_norm(approximant);
  return lvl;
}

}  // namespace fplab
