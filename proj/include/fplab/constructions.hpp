#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "fplab/setops.hpp"

namespace fplab {

/// { start + i*step mod p : 0 <= i < len }; requires step != 0 and len <= p.
FpSet arithmetic_progression(FieldRef ctx, std::uint64_t start, std::uint64_t step, std::uint64_t len);

/// Each residue included independently with probability `density` under a
/// counter-based generator; identical seeds give identical bitmaps.
FpSet random_subset(FieldRef ctx, double density, std::uint64_t seed);

/// A = P cap Q*, with its measured sum-product statistics.
struct ConjectureInstance {
  FpSet a, p_set, q_set;
  bool stats_defined = false;     // false when A is empty
  double k_measured = 0.0;        // |A+A*| / sqrt(p|A|)
  double independence_ratio = 0.0;  // |P cap Q*| * p / (|P||Q|)
  double sum_bound = 0.0;         // |P+Q| / sqrt(|P||Q|)
  bool containment = false;       // A+A* subset of P+Q, exact
};

ConjectureInstance conjecture_instance(FieldRef ctx, const FpSet& p_set, const FpSet& q_set);

/// { x^2 : x in F_p^* }, size (p-1)/2.
FpSet quadratic_residues(FieldRef ctx);

/// Root preimage of P under squaring; the designated non-coprime stress input.
FpSet gowers_set(const FpSet& p_set);

/// Planar difference set of size q+1 in F_p with p = q^2+q+1, found by
/// backtracking (0 and 1 pinned); every nonzero residue appears exactly once
/// as a difference. Certified exhaustively before returning. Desk scale only.
FpSet singer_difference_set(FieldRef ctx, std::uint64_t q);

/// Interval pair (W, W1) with W = {floor(omega1*p)+10 .. floor((omega1+omega)*p)+10}
/// and W1 = {0 .. floor(omega1*p)}; rejects parameters that would wrap or let
/// W+W touch W1-W1.
std::pair<FpSet, FpSet> coprimality_counterexample(FieldRef ctx, double omega, double omega1);

/// Dispatch used by the CLI `construct` subcommand.
struct NamedConstructionParams {
  std::uint64_t start = 0, step = 1, len = 0;  // ap
  double density = 0.0;                        // random
  std::uint64_t seed = 0;                      // random
  std::uint64_t q = 0;                         // singer
  const FpSet* base = nullptr;                 // gowers
};

FpSet named_construction(FieldRef ctx, const std::string& kind, const NamedConstructionParams& params);

}  // namespace fplab
