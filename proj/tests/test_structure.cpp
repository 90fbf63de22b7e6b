#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fplab/constructions.hpp"
#include "fplab/modmath.hpp"
#include "fplab/rng.hpp"
#include "fplab/structure.hpp"
#include "support/oracles.hpp"

using namespace fplab;

namespace {

GridFunction random_complex(const FieldRef& ctx, std::uint64_t key) {
  rng::Counter gen{key};
  std::vector<std::complex<double>> v(ctx->prime());
  for (std::uint64_t x = 0; x < ctx->prime(); ++x)
    v[x] = {2.0 * gen.unit(2 * x) - 1.0, 2.0 * gen.unit(2 * x + 1) - 1.0};
  return GridFunction(ctx, std::move(v));
}

}  // namespace

TEST_CASE("additive distance basics") {
  FieldRef ctx = make_field(257);
  GridFunction f = random_complex(ctx, rng::mix_key({71, 1}));
  CHECK(additive_distance(f, f).rho == 0.0);

  DistanceReport d = additive_distance(GridFunction::delta(ctx, 0), GridFunction::zero(ctx));
  CHECK(d.rho == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d.argmax_point == 0);
  CHECK(d.rho_star <= 1e-9);
}

TEST_CASE("distance is invariant under common constant shifts of zero-mean functions") {
  FieldRef ctx = make_field(257);
  GridFunction f = random_complex(ctx, rng::mix_key({71, 2}));
  GridFunction g = random_complex(ctx, rng::mix_key({71, 3}));
  // remove means
  f = f.minus(GridFunction::constant(ctx, f.sum() / 257.0));
  g = g.minus(GridFunction::constant(ctx, g.sum() / 257.0));
  GridFunction c = GridFunction::constant(ctx, {0.37, 0.0});
  const double base = additive_distance(f, g).rho;
  const double moved = additive_distance(f.plus(c), g.plus(c)).rho;
  CHECK(std::abs(base - moved) <= 1e-9 * std::max(1.0, base));
}

TEST_CASE("distance pseudometric properties on random triples") {
  FieldRef ctx = make_field(257);
  for (int rep = 0; rep < 5; ++rep) {
    GridFunction f = random_complex(ctx, rng::mix_key({71, 4, static_cast<std::uint64_t>(rep)}));
    GridFunction g = random_complex(ctx, rng::mix_key({71, 5, static_cast<std::uint64_t>(rep)}));
    GridFunction h = random_complex(ctx, rng::mix_key({71, 6, static_cast<std::uint64_t>(rep)}));
    const double fg = additive_distance(f, g).rho;
    const double gh = additive_distance(g, h).rho;
    const double fh = additive_distance(f, h).rho;
    CHECK(fh <= fg + gh + 1e-9);
    CHECK(f.l2_norm() <= rho(f) + 1e-9);
  }
}

TEST_CASE("root-preimage intersection defects") {
  FieldRef ctx = make_field(101);
  SUBCASE("full sets with positive generic exponents have zero defect") {
    const std::int64_t exps[] = {3, 5};
    ExponentTuple t = classify_exponent_tuple(exps, *ctx);
    REQUIRE(t.generic);
    const FpSet ps[] = {FpSet::full(ctx), FpSet::full(ctx)};
    AipResult r = aip_defect(ps, t);
    CHECK(r.defect == 0.0);
    CHECK(r.intersection.size() == 101);
  }
  SUBCASE("negative exponents drop 0 per the inversion convention") {
    const std::int64_t exps[] = {1, -1};
    ExponentTuple t = classify_exponent_tuple(exps, *ctx);
    const FpSet ps[] = {FpSet::full(ctx), FpSet::full(ctx)};
    AipResult r = aip_defect(ps, t);
    CHECK(r.intersection.size() == 100);
    CHECK(r.defect == doctest::Approx(-1.0));
  }
  SUBCASE("one coprime exponent is a bijection up to the 0 convention") {
    rng::Counter gen{rng::mix_key({71, 7})};
    FpSet p1 = random_subset(ctx, 0.4, gen.at(0));
    p1.erase(0);
    const std::int64_t exps[] = {3};
    ExponentTuple t = classify_exponent_tuple(exps, *ctx);
    const FpSet ps[] = {p1};
    AipResult r = aip_defect(ps, t);
    CHECK(r.defect == 0.0);
  }
  SUBCASE("length mismatch is rejected") {
    const std::int64_t exps[] = {1, -1};
    ExponentTuple t = classify_exponent_tuple(exps, *ctx);
    const FpSet ps[] = {FpSet::full(ctx)};
    CHECK_THROWS_AS(aip_defect(ps, t), std::invalid_argument);
  }
}

TEST_CASE("membership scan agrees with the root_set route") {
  FieldRef ctx = make_field(257);
  rng::Counter gen{rng::mix_key({71, 8})};
  const std::int64_t exps[] = {1, -1};
  ExponentTuple t = classify_exponent_tuple(exps, *ctx);
  for (int rep = 0; rep < 10; ++rep) {
    FpSet p1 = random_subset(ctx, 0.5, gen.at(10 + 2 * rep));
    FpSet p2 = random_subset(ctx, 0.5, gen.at(10 + 2 * rep + 1));
    const FpSet ps[] = {p1, p2};
    AipResult r = aip_defect(ps, t);
    FpSet other = root_set(p1, 1) & root_set(p2, -1);
    CHECK(r.intersection == other);
  }
}

TEST_CASE("perturbing the inputs moves the intersection by at most the gcd-weighted budget") {
  FieldRef ctx = make_field(257);
  rng::Counter gen{rng::mix_key({71, 9})};
  const std::int64_t exps[] = {2, 3};
  ExponentTuple t = classify_exponent_tuple(exps, *ctx);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<FpSet> ps, ws;
    std::uint64_t budget = 0;
    for (int i = 0; i < 2; ++i) {
      FpSet p = random_subset(ctx, 0.5, gen.at(40 + 10 * rep + i));
      FpSet w = p;
      const std::uint64_t flips = gen.below(60 + 10 * rep + i, 10);
      for (std::uint64_t f = 0; f < flips; ++f) {
        const std::uint64_t x = gen.below(
            rng::mix_key({static_cast<std::uint64_t>(rep), static_cast<std::uint64_t>(i), f}), 257);
        if (w.contains(x)) w.erase(x); else w.insert(x);
      }
      const std::uint64_t g = gcd_u64(t.reduced[i], 256);
      budget += g * p.sym_diff(w).size();
      ps.push_back(std::move(p));
      ws.push_back(std::move(w));
    }
    AipResult rp = aip_defect(ps, t);
    AipResult rw = aip_defect(ws, t);
    const std::int64_t moved =
        std::llabs(static_cast<std::int64_t>(rp.intersection.size()) -
                   static_cast<std::int64_t>(rw.intersection.size()));
    CHECK(moved <= static_cast<std::int64_t>(budget));
  }
}

TEST_CASE("product family construction") {
  FieldRef ctx = make_field(13);
  SUBCASE("pointwise definition with an inverse exponent") {
    FpSet s0 = arithmetic_progression(ctx, 2, 1, 6);
    FpSet s1 = arithmetic_progression(ctx, 1, 3, 5);
    const std::int64_t rs[] = {-1};
    const FpSet sets[] = {s0, s1};
    WProductSpec spec = make_w_product(sets, rs);
    GridFunction f = w_product(spec);
    for (std::uint64_t x = 0; x < 13; ++x) {
      bool expected = s0.contains(x);
      if (x == 0) expected = false;  // negative exponent excludes 0
      else expected = expected && s1.contains(inv_mod(x, 13));
      CHECK(f[x].real() == (expected ? 1.0 : 0.0));
    }
  }
  SUBCASE("no inner sets reduces to the base set") {
    FpSet s0 = arithmetic_progression(ctx, 0, 1, 5);
    const FpSet sets[] = {s0};
    WProductSpec spec = make_w_product(sets, {});
    GridFunction f = w_product(spec);
    for (std::uint64_t x = 0; x < 13; ++x)
      CHECK(f[x].real() == (s0.contains(x) ? 1.0 : 0.0));
    CHECK(spec.delta_f == 1.0);
  }
  SUBCASE("full inner sets only apply the 0 convention") {
    FpSet s0 = FpSet::full(ctx);
    const std::int64_t rs[] = {-1};
    const FpSet sets[] = {s0, FpSet::full(ctx)};
    GridFunction f = w_product(make_w_product(sets, rs));
    CHECK(f[0].real() == 0.0);
    for (std::uint64_t x = 1; x < 13; ++x) CHECK(f[x].real() == 1.0);
  }
  SUBCASE("non-coprime tuples are rejected") {
    const std::int64_t rs[] = {2};
    const FpSet sets[] = {FpSet::full(ctx), FpSet::full(ctx)};
    CHECK_THROWS_AS(make_w_product(sets, rs), std::invalid_argument);
  }
}

TEST_CASE("mean-component approximation") {
  FieldRef ctx = make_field(1009);
  SUBCASE("full inner sets give exactly zero defect") {
    FpSet s0 = arithmetic_progression(ctx, 1, 1, 303);  // avoids 0
    const std::int64_t rs[] = {-1};
    const FpSet sets[] = {s0, FpSet::full(ctx)};
    ConvApproxResult r = conv_approx_defect(make_w_product(sets, rs));
    CHECK(r.rho_star_sq == 0.0);
  }
  SUBCASE("progression pair stays within a small constant of the scale") {
    rng::Counter gen{rng::mix_key({71, 10})};
    FpSet s0 = arithmetic_progression(ctx, gen.below(0, 1009), 1 + gen.below(1, 1008), 303);
    FpSet s1 = arithmetic_progression(ctx, gen.below(2, 1009), 1 + gen.below(3, 1008), 303);
    const std::int64_t rs[] = {-1};
    const FpSet sets[] = {s0, s1};
    ConvApproxResult r = conv_approx_defect(make_w_product(sets, rs));
    CHECK(r.ratio <= 10.0);
    CHECK(r.rho_star_sq > 0.0);
  }
  SUBCASE("unbounded tuples are rejected") {
    // (1, r) with r chosen coprime but never small after scaling
    FieldRef big = make_field(257);
    const std::int64_t rs[] = {97};
    const FpSet sets[] = {FpSet::full(big), FpSet::full(big)};
    ThresholdParams tight;
    tight.c_bound = 1;
    tight.l_max = 3;
    CHECK_THROWS_AS(conv_approx_defect(make_w_product(sets, rs, tight)), std::invalid_argument);
  }
}

TEST_CASE("energies") {
  FieldRef ctx = make_field(257);
  rng::Counter gen{rng::mix_key({71, 11})};
  FpSet a = random_subset(ctx, 0.3, gen.at(0));
  GridFunction f = GridFunction::indicator(a);

  const double l1 = f.l1_norm();
  CHECK(energy(f, 1.0) == doctest::Approx(l1 * l1).epsilon(1e-9));

  CHECK(energy(GridFunction::indicator(FpSet::full(ctx)), 2.0) ==
        doctest::Approx(257.0 * 257.0 * 257.0).epsilon(1e-9));

  for (double s : {2.0, 3.0}) {
    EnergyAudit audit = energy_bound_audit(f, s);
    CHECK(audit.pass);
  }
  CHECK_THROWS_AS(energy_bound_audit(random_complex(ctx, 1), 2.0), std::invalid_argument);
}

TEST_CASE("set entropy") {
  FieldRef ctx = make_field(257);
  CHECK(std::abs(entropy(FpSet::from_elements(ctx, {42}))) <= 1e-12);
  CHECK(entropy(FpSet::full(ctx)) == doctest::Approx(std::log(257.0)).epsilon(1e-12));
  CHECK_THROWS_AS(entropy(FpSet(ctx)), std::invalid_argument);

  rng::Counter gen{rng::mix_key({71, 12})};
  FpSet a = random_subset(ctx, 0.4, gen.at(0));
  EntropyGapAudit same = entropy_gap_audit(a, a);
  CHECK(same.gap == 0.0);
  CHECK(same.ratio == 0.0);

  FpSet b = a;
  b.erase(a.elements().front());
  if (!b.empty()) {
    EntropyGapAudit audit = entropy_gap_audit(a, b);
    CHECK(audit.gap >= 0.0);
    CHECK(audit.bound > 0.0);
  }
  CHECK_THROWS_AS(entropy_gap_audit(b, a), std::invalid_argument);  // not a subset
}

TEST_CASE("max Fourier coefficient against rho") {
  FieldRef ctx = make_field(257);
  FourierRhoAudit d0 = fourier_rho_audit(GridFunction::delta(ctx, 0));
  CHECK(d0.max_coeff == doctest::Approx(1.0));
  CHECK(d0.pass);

  FourierRhoAudit full = fourier_rho_audit(GridFunction::indicator(FpSet::full(ctx)));
  CHECK(full.max_coeff == doctest::Approx(257.0));
  CHECK(full.bound == doctest::Approx(257.0 + 1e-6));
  CHECK(full.pass);

  for (int rep = 0; rep < 10; ++rep)
    CHECK(fourier_rho_audit(random_complex(ctx, rng::mix_key({71, 13, static_cast<std::uint64_t>(rep)}))).pass);
}

TEST_CASE("approximability levels are measured, not decided") {
  FieldRef ctx = make_field(257);
  rng::Counter gen{rng::mix_key({71, 14})};
  FpSet target = random_subset(ctx, 0.4, gen.at(0));
  ApproximabilityLevel self = approximability_level(target, target);
  CHECK(self.xi == 0.0);
  CHECK(self.wiener == doctest::Approx(wiener_norm(target)));

  FpSet moved = target;
  for (std::uint64_t f = 0; f < 8; ++f) {
    const std::uint64_t x = gen.below(10 + f, 257);
    if (moved.contains(x)) moved.erase(x); else moved.insert(x);
  }
  ApproximabilityLevel lvl = approximability_level(target, moved);
  CHECK(lvl.xi == doctest::Approx(static_cast<double>(target.sym_diff(moved).size()) / 257.0));
  CHECK(lvl.xi <= 8.0 / 257.0);
  CHECK(lvl.wiener >= 1.0 - 1e-9);
}

TEST_CASE("residue-layer product approximation") {
  FieldRef ctx = make_field(1009);
  SUBCASE("empty layer gives zero defect") {
    QrProductAudit audit = qr_product_audit(FpSet(ctx), FpSet::full(ctx));
    CHECK(audit.defect == 0.0);
  }
  SUBCASE("full sets: the diagonal point carries constant character mass") {
    // at x = 0 the residue character contributes chi(-1) without cancellation,
    // so the sup-defect sits near p/4 here; the ratio is a frozen measurement
    QrProductAudit audit = qr_product_audit(FpSet::full(ctx), FpSet::full(ctx));
    CHECK(audit.defect == doctest::Approx(252.249752).epsilon(1e-6));
    CHECK(audit.ratio == doctest::Approx(7.941182).epsilon(1e-6));
  }
  SUBCASE("progressions stay well inside the sqrt(p) scale") {
    FpSet s = arithmetic_progression(ctx, 3, 1, 300);
    FpSet t = arithmetic_progression(ctx, 100, 2, 300);
    QrProductAudit audit = qr_product_audit(s, t);
    CHECK(audit.ratio < 1.0);  // measured 0.0309
  }
}
