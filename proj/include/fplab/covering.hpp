#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fplab/setops.hpp"

namespace fplab {

/// Greedy translate selection scanning x = 0..p-1, keeping x when x+P is
/// disjoint from every chosen translate. Guarantees F_p = union of x + P - P
/// over the result and |X| <= p/|P|.
FpSet ruzsa_cover(const FpSet& p_set);

/// Level set { x : (P o P)(x) >= theta * p } = P -_theta P.
FpSet popular_difference_set(const FpSet& p_set, double theta);

/// Covering by translates of the popular difference set P -_{eps kappa^2} P,
/// allowing chosen translates of P to overlap in at most eps*kappa^2*p points.
struct CoveringResult {
  FpSet translates;    // X
  FpSet core;          // P
  FpSet popular_diff;  // P -_{eps kappa^2} P
  double eps = 0.0;
  double kappa = 0.0;  // |P|/p
  std::uint64_t size_cap = 0;    // ceil(1/(kappa(1-eps)))
  std::int64_t max_pairwise = 0; // measured max |(x+P) cap (x'+P)| over chosen pairs
  struct Certificates {
    bool coverage = false;   // union of x + popular_diff is all of F_p
    bool size_bound = false; // |X| <= size_cap
    bool pairwise = false;   // every chosen pair within the eps*kappa^2*p cap
  } certified;
};

CoveringResult popular_cover(const FpSet& p_set, double eps);

/// Greedy ascending-index independent set; size >= n/(maxdeg+1). Adjacency is
/// a symmetric 0/1 matrix without self-loops (asymmetry rejected).
std::vector<std::size_t> greedy_independent_set(std::size_t n,
                                                const std::vector<std::vector<bool>>& adjacency);

/// Cell decomposition of Y against the popular cover of P: each y goes to its
/// first covering shift; cells below the eta_floor/omega_x cutoff are swept
/// into E, the rest form X'.
struct ExtractionResult {
  ExtractionResult(FpSet s, FpSet e) : shifts(std::move(s)), exceptional(std::move(e)) {}

  FpSet shifts;       // X'
  FpSet exceptional;  // E
  double eta_floor = 0.0;
  double omega_x = 0.0;
  double kappa = 0.0;      // |P|/p
  double doubling = 0.0;   // |P-P|/|P|
  double k_ratio = 0.0;    // |Y+T|/|P|
  bool containment = false;  // Y subset of (X' + (P -_{kappa^2/2} P)) union E, exact
  std::vector<std::uint64_t> kept_cell_sizes;   // |Y_x| for x in X'
  std::uint64_t dropped_cells = 0;              // nonempty cells swept into E
  std::uint64_t independent_count = 0;          // greedy independent subset of X'
  std::uint64_t growth_sum = 0;                 // sum over that subset of |Y_x + T|
  std::uint64_t yt_size = 0;                    // |Y + T|
};

ExtractionResult structure_extract(const FpSet& y, const FpSet& t, const FpSet& p_set,
                                   double eta_floor, double omega_x);

/// Measurements around the difference-count transfer r_{I-I} ~ omega_x^2 r_{W-W}
/// for I = W cap root preimages of the W_i, the subset form for R, and the
/// sumset growth |Y+T| / (eta^2 |P|). Only exact inequalities carry pass/fail;
/// a non-coprime tuple clears hypotheses_met instead of erroring so the
/// square-exponent counterexample can be demonstrated.
struct IndependenceGrowthAudit {
  double ii_defect = 0.0;             // max_{l != 0} |r_II(l) - omega_x^2 r_WW(l)|
  double ii_defect_normalized = 0.0;  // / sqrt(p)
  double rr_margin = 0.0;             // max_{l != 0} (r_RR(l) - omega_x^2 r_PP(l))
  bool subset_counts_ok = false;      // r_RR <= r_II pointwise (exact, R inside I)
  double r_size_ratio = 0.0;          // |R| / (omega * omega_x * p)
  double eta = 0.0;                   // |T| / |R|
  double growth_ratio = 0.0;          // |Y+T| / (eta^2 |P|)
  double omega = 0.0;
  double omega_x = 0.0;
  bool hypotheses_met = false;        // tuple coprime
};

IndependenceGrowthAudit independence_growth_audit(const FpSet& y, const FpSet& t, const FpSet& p_set,
                                                  std::span<const FpSet> w_list,
                                                  const ExponentTuple& rs);

}  // namespace fplab
