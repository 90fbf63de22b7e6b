#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fplab/setops.hpp"
#include "fplab/spectral.hpp"

namespace fplab {

/// rho^2(f,g) = max_x |(f o f)(x) - (g o g)(x)|; rho_star excludes x = 0.
struct DistanceReport {
  double rho = 0.0;
  double rho_star = 0.0;
  std::uint64_t argmax_point = 0;  // where the unrestricted sup is attained
  bool excluded_zero = true;       // rho_star excludes x = 0
};

DistanceReport additive_distance(const GridFunction& f, const GridFunction& g);

/// rho(f) = rho(f, 0) = ||f o f||_inf^{1/2}.
double rho(const GridFunction& f);

/// Intersection of the r_i-th root preimages of the P_i, by a single O(k*p)
/// membership scan, with the signed defect against the independence
/// prediction p^{1-k} * prod |P_i|.
struct AipResult {
  FpSet intersection;
  double predicted = 0.0;
  double defect = 0.0;  // |intersection| - predicted
};

AipResult aip_defect(std::span<const FpSet> ps, const ExponentTuple& rs);

/// f(x) = S_0(x) * prod_i S_i(x^{r_i}) with a coprime tuple (1, r_1...r_k).
struct WProductSpec {
  std::vector<FpSet> sets;      // S_0, ..., S_k
  ExponentTuple exponents;      // classified (1, r_1, ..., r_k)
  double max_wiener = 0.0;      // M, max over the S_i
  std::vector<double> deltas;   // |S_i|/p for i >= 1
  double delta_f = 1.0;         // product of deltas
};

WProductSpec make_w_product(std::span<const FpSet> sets, std::span<const std::int64_t> rs,
                            const ThresholdParams& params = {});

GridFunction w_product(const WProductSpec& spec);

/// rho_*(f, delta_f * S_0) and its square, normalized by M^{2k+2} sqrt(p).
/// Requires the tuple to be coprime and bounded.
struct ConvApproxResult {
  double rho_star = 0.0;
  double rho_star_sq = 0.0;
  double scale = 0.0;  // M^{2k+2} * sqrt(p)
  double ratio = 0.0;  // rho_star_sq / scale
};

ConvApproxResult conv_approx_defect(const WProductSpec& spec);

/// E_s(f) = sum_x (f o f)^s (x).
double energy(const GridFunction& f, double s);

struct EnergyAudit {
  double energy = 0.0;
  double bound = 0.0;  // rho(f)^{2s-2} * ||f||_1^2
  bool pass = false;
};

/// Requires f real and nonnegative.
EnergyAudit energy_bound_audit(const GridFunction& f, double s);

/// H(A) = 2 log|A| - |A|^{-2} sum_x (A o A)(x) log (A o A)(x), 0 log 0 = 0.
double entropy(const FpSet& a);

struct EntropyGapAudit {
  double gap = 0.0;    // |H(A) - H(B)|
  double bound = 0.0;  // sqrt(rho(A,B)) * |B-B| * log|B| / |B|^2
  double ratio = 0.0;  // gap / bound, 0 when both vanish
};

/// Requires nonempty B with B subset of A.
EntropyGapAudit entropy_gap_audit(const FpSet& a, const FpSet& b);

struct FourierRhoAudit {
  double max_coeff = 0.0;  // ||fhat||_inf
  double bound = 0.0;      // rho(f) * sqrt(p) + 1e-6
  bool pass = false;
};

FourierRhoAudit fourier_rho_audit(const GridFunction& f);

/// With R the quadratic residues, A_S = S * R pointwise:
/// defect = ||A_S * A_T - delta_S delta_T * (S * T)||_inf, where delta_S is
/// the density of the residue layer inside S (|S cap R| / |S|, 0 if empty).
struct QrProductAudit {
  double defect = 0.0;
  double max_wiener = 0.0;  // max of the Wiener norms of S and T
  double scale = 0.0;       // M^2 * sqrt(p)
  double ratio = 0.0;
};

QrProductAudit qr_product_audit(const FpSet& s, const FpSet& t);

/// How well an approximant W tracks a target P: the normalized symmetric
/// difference |P sym W|/p paired with the approximant's Wiener norm. Both are
/// measurements; no threshold is decidable at a fixed prime.
struct ApproximabilityLevel {
  double xi = 0.0;
  double wiener = 0.0;
};

ApproximabilityLevel approximability_level(const FpSet& target, const FpSet& approximant);

}  // namespace fplab
