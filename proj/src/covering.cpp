#include "fplab/covering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fplab/modmath.hpp"
#include "fplab/structure.hpp"

namespace fplab {

FpSet ruzsa_cover(const FpSet& p_set) {
  if (p_set.empty()) throw std::invalid_argument("ruzsa_cover: P must be nonempty");
  const std::uint64_t p = p_set.prime();
  FpSet chosen(p_set.context());
  FpSet occupied(p_set.context());
  for (std::uint64_t x = 0; x < p; ++x) {
    FpSet shifted = p_set.shifted(x);
    if (!shifted.intersects(occupied)) {
      chosen.insert(x);
      occupied = occupied | shifted;
    }
  }
  return chosen;
}

FpSet popular_difference_set(const FpSet& p_set, double theta) {
  if (!(theta > 0.0)) throw std::invalid_argument("popular_difference_set: theta must be positive");
  RepProfile prof = rep_profile(p_set, p_set, RepMode::Difference);
  const std::int64_t thr = popularity_threshold(theta, p_set.prime());
  FpSet out(p_set.context());
  for (std::uint64_t x = 0; x < p_set.prime(); ++x)
    if (prof.values[x] >= thr) out.insert(x);
  return out;
}

CoveringResult popular_cover(const FpSet& p_set, double eps) {
  if (p_set.empty()) throw std::invalid_argument("popular_cover: P must be nonempty");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("popular_cover: eps must be in (0,1)");
  const std::uint64_t p = p_set.prime();
  const double kappa = p_set.density();
  const double overlap_cap = eps * kappa * kappa * static_cast<double>(p);

  RepProfile prof = rep_profile(p_set, p_set, RepMode::Difference);
  std::vector<std::uint64_t> chosen;
  for (std::uint64_t x = 0; x < p; ++x) {
    bool ok = true;
    for (std::uint64_t prev : chosen) {
      // |(x+P) cap (x'+P)| = r_{P-P}(x - x')
      if (static_cast<double>(prof.values[sub_mod(x, prev, p)]) > overlap_cap) { ok = false; break; }
    }
    if (ok) chosen.push_back(x);
  }

  CoveringResult res{FpSet(p_set.context()), p_set, popular_difference_set(p_set, eps * kappa * kappa),
                     eps, kappa, 0, 0, {}};
  for (std::uint64_t x : chosen) res.translates.insert(x);
  res.size_cap = static_cast<std::uint64_t>(std::ceil(1.0 / (kappa * (1.0 - eps)) - 1e-12));

  // exhaustive certificates
  FpSet covered(p_set.context());
  for (std::uint64_t x : chosen) covered = covered | res.popular_diff.shifted(x);
  res.certified.coverage = covered.size() == p;
  res.certified.size_bound = res.translates.size() <= res.size_cap;
  res.certified.pairwise = true;
  for (std::size_t i = 0; i < chosen.size(); ++i)
    for (std::size_t j = i + 1; j < chosen.size(); ++j) {
      const std::int64_t c = prof.values[sub_mod(chosen[j], chosen[i], p)];
      res.max_pairwise = std::max(res.max_pairwise, c);
      if (static_cast<double>(c) > overlap_cap) res.certified.pairwise = false;
    }
  return res;
}

std::vector<std::size_t> greedy_independent_set(std::size_t n,
                                                const std::vector<std::vector<bool>>& adjacency) {
  if (adjacency.size() != n) throw std::invalid_argument("greedy_independent_set: bad matrix size");
  for (std::size_t i = 0; i < n; ++i) {
    if (adjacency[i].size() != n) throw std::invalid_argument("greedy_independent_set: ragged matrix");
    if (adjacency[i][i]) throw std::invalid_argument("greedy_independent_set: self-loop");
    for (std::size_t j = 0; j < n; ++j)
      if (adjacency[i][j] != adjacency[j][i])
        throw std::invalid_argument("greedy_independent_set: adjacency must be symmetric");
  }
  std::vector<std::size_t> chosen;
  for (std::size_t v = 0; v < n; ++v) {
    bool ok = true;
    for (std::size_t u : chosen)
      if (adjacency[v][u]) { ok = false; break; }
    if (ok) chosen.push_back(v);
  }
  return chosen;
}

ExtractionResult structure_extract(const FpSet& y, const FpSet& t, const FpSet& p_set,
                                   double eta_floor, double omega_x) {
  if (p_set.empty() || t.empty())
    throw std::invalid_argument("structure_extract: T and P must be nonempty");
  if (!t.is_subset_of(p_set)) throw std::invalid_argument("structure_extract: T must lie inside P");
  if (!(omega_x > 0.0)) throw std::invalid_argument("structure_extract: omega_x must be positive");
  require_same_field(y, p_set);
  const std::uint64_t p = p_set.prime();

  CoveringResult cover = popular_cover(p_set, 0.5);
  const FpSet& diff = cover.popular_diff;  // P -_{kappa^2/2} P
  const std::vector<std::uint64_t> shifts = cover.translates.elements();  // ascending

  // first-cover partition of Y
  std::vector<std::vector<std::uint64_t>> cells(shifts.size());
  y.for_each([&](std::uint64_t elem) {
    for (std::size_t i = 0; i < shifts.size(); ++i) {
      if (diff.contains(sub_mod(elem, shifts[i], p))) {
        cells[i].push_back(elem);
        return;
      }
    }
    throw std::logic_error("structure_extract: covering certificate violated");
  });

  ExtractionResult res(FpSet(p_set.context()), FpSet(p_set.context()));
  res.eta_floor = eta_floor;
  res.omega_x = omega_x;
  res.kappa = cover.kappa;
  const double cutoff = eta_floor / omega_x;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    if (cells[i].empty()) continue;
    if (static_cast<double>(cells[i].size()) < cutoff) {
      for (std::uint64_t elem : cells[i]) res.exceptional.insert(elem);
      ++res.dropped_cells;
    } else {
      res.shifts.insert(shifts[i]);
      res.kept_cell_sizes.push_back(cells[i].size());
      kept.push_back(i);
    }
  }

  // exact containment certificate
  res.containment = true;
  y.for_each([&](std::uint64_t elem) {
    if (res.exceptional.contains(elem)) return;
    bool covered = false;
    res.shifts.for_each([&](std::uint64_t x) {
      if (!covered && diff.contains(sub_mod(elem, x, p))) covered = true;
    });
    if (!covered) res.containment = false;
  });

  // doubling and growth statistics
  const FpSet pm = sumset(p_set, p_set.negated());
  res.doubling = static_cast<double>(pm.size()) / static_cast<double>(p_set.size());
  const FpSet yt = sumset(y, t);
  res.yt_size = yt.size();
  res.k_ratio = static_cast<double>(yt.size()) / static_cast<double>(p_set.size());

  // adjacency via x - x' in 3P - 3P, then the greedy independent subset
  const FpSet sets3[] = {p_set, p_set.negated()};
  const std::uint64_t coeffs3[] = {3, 3};
  const FpSet wide = iterated_sumset(coeffs3, sets3);
  const std::size_t n = kept.size();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool linked = wide.contains(sub_mod(shifts[kept[i]], shifts[kept[j]], p));
      adj[i][j] = linked;
      adj[j][i] = linked;
    }
  const std::vector<std::size_t> indep = greedy_independent_set(n, adj);
  res.independent_count = indep.size();
  for (std::size_t idx : indep) {
    FpSet cell(p_set.context());
    for (std::uint64_t elem : cells[kept[idx]]) cell.insert(elem);
    res.growth_sum += sumset(cell, t).size();
  }
  return res;
}

IndependenceGrowthAudit independence_growth_audit(const FpSet& y, const FpSet& t, const FpSet& p_set,
                                                  std::span<const FpSet> w_list,
                                                  const ExponentTuple& rs) {
  if (w_list.size() != rs.size() + 1)
    throw std::invalid_argument("independence_growth_audit: need W plus one W_i per exponent");
  const FpSet& w = w_list[0];
  require_same_field(w, p_set);
  if (!p_set.is_subset_of(w))
    throw std::invalid_argument("independence_growth_audit: P must lie inside W");
  const std::uint64_t p = w.prime();

  IndependenceGrowthAudit audit;
  audit.hypotheses_met = rs.coprime;
  audit.omega = w.density();
  audit.omega_x = 1.0;
  for (std::size_t i = 1; i < w_list.size(); ++i) audit.omega_x *= w_list[i].density();

  // root preimage intersection, shared by I (ambient W) and R (subset P)
  FpSet roots_part = FpSet::full(w.context());
  for (std::size_t i = 1; i < w_list.size(); ++i) {
    FpSet next(w.context());
    const std::uint64_t e = rs.reduced[i - 1];
    const bool neg = rs.exponents[i - 1] < 0;
    for (std::uint64_t x = 0; x < p; ++x) {
      if (x == 0) {
        if (!neg && w_list[i].contains(0)) next.insert(0);
        continue;
      }
      if (w_list[i].contains(pow_mod(x, e, p))) next.insert(x);
    }
    roots_part = roots_part & next;
  }
  const FpSet big_i = w & roots_part;
  const FpSet r_set = p_set & roots_part;
  if (!t.is_subset_of(r_set))
    throw std::invalid_argument("independence_growth_audit: T must lie inside R");

  RepProfile rii = rep_profile(big_i, big_i, RepMode::Difference);
  RepProfile rww = rep_profile(w, w, RepMode::Difference);
  RepProfile rrr = rep_profile(r_set, r_set, RepMode::Difference);
  RepProfile rpp = rep_profile(p_set, p_set, RepMode::Difference);

  const double ox2 = audit.omega_x * audit.omega_x;
  audit.subset_counts_ok = true;
  double worst_ii = 0.0, worst_rr = -std::numeric_limits<double>::infinity();
  for (std::uint64_t l = 1; l < p; ++l) {
    worst_ii = std::max(worst_ii,
                        std::abs(static_cast<double>(rii.values[l]) - ox2 * static_cast<double>(rww.values[l])));
    worst_rr = std::max(worst_rr,
                        static_cast<double>(rrr.values[l]) - ox2 * static_cast<double>(rpp.values[l]));
    if (rrr.values[l] > rii.values[l]) audit.subset_counts_ok = false;
  }
  audit.ii_defect = worst_ii;
  audit.ii_defect_normalized = worst_ii / std::sqrt(static_cast<double>(p));
  audit.rr_margin = worst_rr;

  const double expected_r = audit.omega * audit.omega_x * static_cast<double>(p);
  audit.r_size_ratio = expected_r > 0.0 ? static_cast<double>(r_set.size()) / expected_r : 0.0;
  audit.eta = r_set.empty() ? 0.0 : static_cast<double>(t.size()) / static_cast<double>(r_set.size());
  if (audit.eta > 0.0 && !p_set.empty()) {
    const double denom = audit.eta * audit.eta * static_cast<double>(p_set.size());
    audit.growth_ratio = static_cast<double>(sumset(y, t).size()) / denom;
  }
  return audit;
}

}  // namespace fplab
