#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fplab/constructions.hpp"
#include "fplab/modmath.hpp"
#include "fplab/rng.hpp"
#include "fplab/set_io.hpp"
#include "fplab/setops.hpp"
#include "support/oracles.hpp"

using namespace fplab;

namespace {
FieldRef ctx13() {
  static FieldRef c = make_field(13);
  return c;
}
}  // namespace

TEST_CASE("bitmap basics: shift, negate, complement") {
  FieldRef ctx = make_field(1009);
  rng::Counter gen{rng::mix_key({11, 1})};
  FpSet a = random_subset(ctx, 0.3, gen.at(0));
  for (std::uint64_t c : {0ull, 1ull, 63ull, 64ull, 500ull, 1008ull}) {
    FpSet shifted = a.shifted(c);
    CHECK(shifted.size() == a.size());
    a.for_each([&](std::uint64_t x) { CHECK(shifted.contains((x + c) % 1009)); });
  }
  FpSet neg = a.negated();
  CHECK(neg.size() == a.size());
  a.for_each([&](std::uint64_t x) { CHECK(neg.contains((1009 - x) % 1009)); });
  CHECK(a.complement().size() == 1009 - a.size());
  CHECK((a | a.complement()).size() == 1009);
}

TEST_CASE("sumset worked examples") {
  FpSet a = FpSet::from_elements(ctx13(), {1, 2});
  FpSet b = FpSet::from_elements(ctx13(), {10});
  CHECK(sumset(a, b) == FpSet::from_elements(ctx13(), {11, 12}));

  FpSet empty(ctx13());
  CHECK(sumset(a, empty).empty());

  FieldRef big = make_field(1009);
  FpSet ap = arithmetic_progression(big, 0, 1, 10);
  FpSet doubled = sumset(ap, ap);
  CHECK(doubled.size() == 19);
  CHECK(doubled == arithmetic_progression(big, 0, 1, 19));
}

TEST_CASE("sumset agrees with naive enumeration on random pairs") {
  FieldRef ctx = make_field(257);
  rng::Counter gen{rng::mix_key({11, 2})};
  for (int rep = 0; rep < 10; ++rep) {
    FpSet a = random_subset(ctx, 0.2, gen.at(2 * rep));
    FpSet b = random_subset(ctx, 0.2, gen.at(2 * rep + 1));
    FpSet s = sumset(a, b);
    CHECK(s == oracles::naive_sumset(a, b));

    // the sumset is exactly the support of the sum-representation counts
    RepProfile prof = rep_profile(a, b, RepMode::Sum);
    FpSet support(ctx);
    for (std::uint64_t x = 0; x < 257; ++x)
      if (prof.values[x] > 0) support.insert(x);
    CHECK(s == support);

    if (!a.empty() && !b.empty()) {
      CHECK(s.size() >= std::max(a.size(), b.size()));
      CHECK(s.size() <= a.size() * b.size());
    }
  }
}

TEST_CASE("context mismatch is rejected") {
  FpSet a(ctx13());
  FpSet b(make_field(17));
  CHECK_THROWS_AS(sumset(a, b), std::invalid_argument);
}

TEST_CASE("iterated sumsets") {
  FpSet zero = FpSet::from_elements(ctx13(), {0});
  const std::uint64_t three[] = {3};
  const FpSet zsets[] = {zero};
  CHECK(iterated_sumset(three, zsets) == zero);

  FpSet s01 = FpSet::from_elements(ctx13(), {0, 1});
  const std::uint64_t two[] = {2};
  const FpSet ssets[] = {s01};
  CHECK(iterated_sumset(two, ssets) == FpSet::from_elements(ctx13(), {0, 1, 2}));

  FieldRef big = make_field(1009);
  FpSet p = arithmetic_progression(big, 0, 1, 5);
  const std::uint64_t coeffs[] = {4, 3};
  const FpSet sets[] = {p, p.negated()};
  CHECK(iterated_sumset(coeffs, sets).size() == 29);  // 4*4 + 3*4 + 1

  CHECK_THROWS_AS(iterated_sumset({}, {}), std::invalid_argument);
  const std::uint64_t zero_coeff[] = {0};
  CHECK_THROWS_AS(iterated_sumset(zero_coeff, ssets), std::invalid_argument);
}

TEST_CASE("inverse set worked examples") {
  CHECK(inverse_set(FpSet::from_elements(ctx13(), {0, 1, 2})) ==
        FpSet::from_elements(ctx13(), {1, 7}));
  FpSet units = FpSet::from_elements(ctx13(), {0}).complement();
  CHECK(inverse_set(units) == units);
  CHECK(inverse_set(inverse_set(units)) == units);
  CHECK(inverse_set(FpSet::from_elements(ctx13(), {0})).empty());
}

TEST_CASE("power map worked examples") {
  CHECK(pow_map(FpSet::from_elements(ctx13(), {1, 5, 8, 12}), 2) ==
        FpSet::from_elements(ctx13(), {1, 12}));
  FpSet a = FpSet::from_elements(ctx13(), {0, 3, 7});
  CHECK(pow_map(a, 1) == a);
  CHECK(pow_map(FpSet::from_elements(ctx13(), {2}), -1) == FpSet::from_elements(ctx13(), {7}));
  CHECK_THROWS_AS(pow_map(a, 0), std::invalid_argument);
}

TEST_CASE("root set worked examples") {
  CHECK(root_set(FpSet::from_elements(ctx13(), {1}), 2) == FpSet::from_elements(ctx13(), {1, 12}));
  // coprime r = 5: exactly one fifth root of 6 (namely 2, since 2^5 = 32 = 6)
  FpSet r = root_set(FpSet::from_elements(ctx13(), {6}), 5);
  CHECK(r.size() == 1);
  CHECK(r.contains(2));
  CHECK(root_set(FpSet::full(ctx13()), 3) == FpSet::full(ctx13()));
  CHECK_THROWS_AS(root_set(r, 0), std::invalid_argument);
}

TEST_CASE("power/root properties on random sets") {
  FieldRef ctx = make_field(257);
  rng::Counter gen{rng::mix_key({11, 3})};
  const std::uint64_t m = 256;
  for (int rep = 0; rep < 10; ++rep) {
    FpSet a = random_subset(ctx, 0.3, gen.at(100 + rep));

    // coprime powers restricted to units invert each other
    const std::int64_t r = 3;        // gcd(3, 256) = 1
    const std::int64_t r_inv = 171;  // 3 * 171 = 513 = 1 mod 256
    REQUIRE((3 * 171) % m == 1);
    FpSet a_units = a.minus(FpSet::from_elements(ctx, {0}));
    CHECK(pow_map(pow_map(a_units, r), r_inv) == a_units);

    // |root_set(P, r)| <= gcd(r, p-1) |P|
    for (std::int64_t rr : {2, 3, 4, -2}) {
      const std::uint64_t g = gcd_u64(mod_reduce(rr, m), m);
      CHECK(root_set(a, rr).size() <= g * a.size());
      // recover at least A \ {0} through the round trip
      FpSet back = root_set(pow_map(a, rr), rr);
      a.for_each([&](std::uint64_t x) {
        if (x != 0) CHECK(back.contains(x));
      });
    }
  }
}

TEST_CASE("representation profiles are exact") {
  FpSet a = FpSet::from_elements(ctx13(), {0, 1});
  RepProfile prof = rep_profile(a, a, RepMode::Difference);
  CHECK(prof.values[0] == 2);
  CHECK(prof.values[1] == 1);
  CHECK(prof.values[12] == 1);
  for (std::uint64_t x = 2; x < 12; ++x) CHECK(prof.values[x] == 0);

  FieldRef ctx = make_field(257);
  rng::Counter gen{rng::mix_key({11, 4})};
  for (int rep = 0; rep < 20; ++rep) {
    FpSet x = random_subset(ctx, 0.25, gen.at(200 + 2 * rep));
    FpSet y = random_subset(ctx, 0.25, gen.at(200 + 2 * rep + 1));
    for (RepMode mode : {RepMode::Sum, RepMode::Difference}) {
      RepProfile p1 = rep_profile(x, y, mode);
      auto p2 = oracles::direct_rep_counts(x, y, mode == RepMode::Difference);
      CHECK(p1.values == p2);
      std::int64_t total = 0;
      for (std::int64_t v : p1.values) {
        CHECK(v >= 0);
        total += v;
      }
      CHECK(total == static_cast<std::int64_t>(x.size() * y.size()));
    }
    // r_{A-A}(0) = |A|
    CHECK(rep_profile(x, x, RepMode::Difference).values[0] == static_cast<std::int64_t>(x.size()));
  }
}

TEST_CASE("popular sumsets") {
  FieldRef ctx = make_field(101);
  FpSet full = FpSet::full(ctx);
  CHECK(popular_sumset(full, full, 0.5, RepMode::Sum) == full);

  FpSet zero = FpSet::from_elements(ctx, {0});
  CHECK(popular_sumset(zero, zero, 2.0 / 101.0, RepMode::Sum).empty());

  rng::Counter gen{rng::mix_key({11, 5})};
  for (int rep = 0; rep < 10; ++rep) {
    FpSet a = random_subset(ctx, 0.4, gen.at(300 + rep));
    FpSet b = random_subset(ctx, 0.4, gen.at(400 + rep));
    if (a.empty() || b.empty()) continue;
    FpSet pop = popular_sumset(a, b, 0.05, RepMode::Sum);
    CHECK(pop.is_subset_of(sumset(a, b)));
  }

  CHECK_THROWS_AS(popular_sumset(full, full, 0.0, RepMode::Sum), std::invalid_argument);
  CHECK_THROWS_AS(popular_sumset(full, full, 1.5, RepMode::Sum), std::invalid_argument);
}

TEST_CASE("popular difference byproduct on a progression") {
  FieldRef ctx = make_field(1009);
  FpSet p = arithmetic_progression(ctx, 17, 1, 303);  // density ~0.3
  const double kappa = p.density();
  FpSet pop = popular_sumset(p, p, kappa * kappa / 2.0, RepMode::Difference);
  CHECK(static_cast<double>(pop.size()) >= 0.5 * static_cast<double>(p.size()));
}

TEST_CASE("union bound audit") {
  FieldRef ctx = make_field(101);
  // n = 2, k = 4, l = 1: bound 32/6
  FpSet s1 = FpSet::from_elements(ctx, {0, 1, 2, 3});
  FpSet s2 = FpSet::from_elements(ctx, {3, 10, 11, 12});
  const FpSet duo[] = {s1, s2};
  UnionBoundAudit audit = union_bound_audit(duo, 4, 1);
  CHECK(audit.bound == doctest::Approx(32.0 / 6.0));
  CHECK(audit.union_size == 7);
  CHECK(audit.pass);

  const FpSet solo[] = {s1};
  UnionBoundAudit single = union_bound_audit(solo, 4, 1);
  CHECK(single.pass);  // k^2/(k+l) <= k <= |S_1|

  // hypothesis violations are rejected with the offending pair named
  FpSet s3 = FpSet::from_elements(ctx, {0, 1, 2, 10});
  const FpSet bad[] = {s1, s3};
  CHECK_THROWS_WITH_AS(union_bound_audit(bad, 4, 1), doctest::Contains("S_0"),
                       std::invalid_argument);
}

TEST_CASE("union bound corollary forms") {
  FieldRef ctx = make_field(101);
  // larger sets so the ground form l*|G| < k^2 applies: k = 20, l = 1
  FpSet t1(ctx), t2(ctx);
  for (std::uint64_t i = 0; i < 20; ++i) t1.insert(i);
  for (std::uint64_t i = 20; i < 40; ++i) t2.insert(i);
  const FpSet duo[] = {t1, t2};
  UnionBoundAudit audit = union_bound_audit(duo, 20, 1);
  CHECK(audit.pass);
  CHECK(audit.ground_applicable);  // 1 * 101 < 400
  CHECK(audit.ground_cap == doctest::Approx((101.0 / 20.0) / (1.0 - 101.0 / 400.0)));
  CHECK(audit.ground_pass);  // n = 2 within the cap
  CHECK_FALSE(audit.k2l_applicable);  // n*l = 2 < k = 20

  // many small overlapping sets trip the k^2/l regime instead
  std::vector<FpSet> crowd;
  for (std::uint64_t i = 0; i < 12; ++i) {
    FpSet s(ctx);
    s.insert(i);
    s.insert(50 + i);
    s.insert(90);  // shared point keeps pairwise intersections at 1
    crowd.push_back(std::move(s));
  }
  UnionBoundAudit crowded = union_bound_audit(crowd, 3, 1);
  CHECK(crowded.pass);
  CHECK(crowded.k2l_applicable);  // n*l = 12 >= k = 3
  CHECK(crowded.k2l_ratio > 0.0);
}

TEST_CASE("union bound audit on random hypothesis-satisfying instances") {
  FieldRef ctx = make_field(257);
  rng::Counter gen{rng::mix_key({11, 6})};
  int built = 0;
  for (int rep = 0; rep < 200 && built < 25; ++rep) {
    // n sets of size >= k with pairwise intersections <= l, planted greedily
    const std::uint64_t n = 2 + gen.below(rep * 7, 4);
    const std::uint64_t k = 8 + gen.below(rep * 7 + 1, 8);
    const std::uint64_t l = 1 + gen.below(rep * 7 + 2, 3);
    std::vector<FpSet> sets;
    bool ok = true;
    for (std::uint64_t i = 0; i < n && ok; ++i) {
      FpSet s(ctx);
      std::uint64_t counter = 0;
      while (s.size() < k && counter < 4000) {
        const std::uint64_t x =
            gen.below(rng::mix_key({static_cast<std::uint64_t>(rep), i, counter++}), 257);
        if (s.contains(x)) continue;
        s.insert(x);
        for (const auto& prev : sets)
          if (prev.intersection_size(s) > l) {
            s.erase(x);
            break;
          }
      }
      if (s.size() < k) ok = false;
      if (ok) sets.push_back(std::move(s));
    }
    if (!ok) continue;
    ++built;
    UnionBoundAudit audit = union_bound_audit(sets, k, l);
    CHECK(audit.pass);
  }
  CHECK(built >= 10);
}

TEST_CASE("sumset inequality audit") {
  FpSet zero = FpSet::from_elements(ctx13(), {0});
  SumsetInequalityAudit trivial = sumset_inequality_audit(zero, zero, zero, 2, 1);
  CHECK(trivial.lhs_iterated == 1);
  CHECK(trivial.pass_iterated);

  FieldRef big = make_field(1009);
  FpSet ap = arithmetic_progression(big, 0, 1, 10);
  SumsetInequalityAudit audit = sumset_inequality_audit(ap, ap, ap, 2, 1);
  CHECK(audit.lhs_iterated == 28);
  CHECK(audit.rhs_iterated == doctest::Approx(std::pow(1.9, 3) * 10.0));
  CHECK(audit.pass_iterated);
  CHECK(audit.pass_nfold);
  CHECK(audit.pass_triangle);
}

TEST_CASE("triangle inequality |A||B-C| <= |A-B||A-C| on random triples") {
  FieldRef ctx = make_field(257);
  rng::Counter gen{rng::mix_key({11, 7})};
  for (int rep = 0; rep < 30; ++rep) {
    FpSet a = random_subset(ctx, 0.2, gen.at(500 + 3 * rep));
    FpSet b = random_subset(ctx, 0.2, gen.at(500 + 3 * rep + 1));
    FpSet c = random_subset(ctx, 0.2, gen.at(500 + 3 * rep + 2));
    if (a.empty()) continue;
    SumsetInequalityAudit audit = sumset_inequality_audit(a, b, c, 2, 1);
    CHECK(audit.pass_triangle);
    CHECK(audit.pass_iterated);
    CHECK(audit.pass_nfold);
  }
}

TEST_CASE("intersection/union stability under symmetric-difference perturbations") {
  // |(cap T_i) sym (cap U_i)| <= sum |T_i sym U_i|, and the union analogue
  FieldRef ctx = make_field(257);
  rng::Counter gen{rng::mix_key({11, 8})};
  for (int rep = 0; rep < 25; ++rep) {
    std::vector<FpSet> ts, us;
    std::uint64_t total_sym = 0;
    for (int i = 0; i < 3; ++i) {
      FpSet t = random_subset(ctx, 0.4, gen.at(700 + 10 * rep + i));
      FpSet u = t;
      const std::uint64_t flips = gen.below(800 + 10 * rep + i, 12);
      for (std::uint64_t f = 0; f < flips; ++f) {
        const std::uint64_t x = gen.below(rng::mix_key({static_cast<std::uint64_t>(rep),
                                                        static_cast<std::uint64_t>(i), f}),
                                          257);
        if (u.contains(x)) u.erase(x); else u.insert(x);
      }
      total_sym += t.sym_diff(u).size();
      ts.push_back(std::move(t));
      us.push_back(std::move(u));
    }
    FpSet cap_t = ts[0] & ts[1] & ts[2];
    FpSet cap_u = us[0] & us[1] & us[2];
    CHECK(cap_t.sym_diff(cap_u).size() <= total_sym);
    FpSet cup_t = ts[0] | ts[1] | ts[2];
    FpSet cup_u = us[0] | us[1] | us[2];
    CHECK(cup_t.sym_diff(cup_u).size() <= total_sym);

    // product-of-densities stability
    const double g = 257.0;
    double prod_t = 1.0, prod_u = 1.0, xi = 0.0;
    for (int i = 0; i < 3; ++i) {
      prod_t *= static_cast<double>(ts[i].size());
      prod_u *= static_cast<double>(us[i].size());
      xi = std::max(xi, static_cast<double>(ts[i].sym_diff(us[i]).size()) / g);
    }
    const double lhs = std::abs(prod_t - prod_u) / (g * g);
    CHECK(lhs <= 3.0 * xi * g + 1e-9);
  }
}

TEST_CASE("comparability audit") {
  FpSet a = FpSet::from_elements(ctx13(), {1, 2, 3});
  const FpSet same[] = {a, a};
  ComparabilityAudit id = comparability_audit(same, 1.0, 1);
  CHECK(id.cardinality_ratio == doctest::Approx(1.0));
  CHECK(id.comparable);

  FieldRef big = make_field(1009);
  FpSet ap = arithmetic_progression(big, 0, 1, 10);
  FpSet ap5 = ap.shifted(5);
  const FpSet pair[] = {ap, ap5};
  ComparabilityAudit shifted = comparability_audit(pair, 2.0, 2, 2.0);
  CHECK(shifted.max_sum_ratio <= 4.0);
  CHECK(shifted.comparable);

  FpSet small = arithmetic_progression(big, 0, 1, 10);
  FpSet large = arithmetic_progression(big, 0, 1, 1000);
  const FpSet lopsided[] = {small, large};
  ComparabilityAudit lop = comparability_audit(lopsided, 2.0, 1, 1.0);
  CHECK_FALSE(lop.comparable);
}

TEST_CASE("fpset text format round-trips bit-exactly") {
  FpSet a = FpSet::from_elements(ctx13(), {0, 1, 3, 9});
  const std::string text = to_fpset_text(a);
  CHECK(text == "# fpset v1\np=13\n0,1,3,9\n");
  CHECK(from_fpset_text(text) == a);
  CHECK(to_fpset_text(from_fpset_text(text)) == text);

  FpSet empty(ctx13());
  CHECK(to_fpset_text(empty) == "# fpset v1\np=13\n\n");
  CHECK(from_fpset_text(to_fpset_text(empty)).empty());

  FieldRef big = make_field(1009);
  rng::Counter gen{rng::mix_key({11, 9})};
  FpSet r = random_subset(big, 0.5, gen.at(0));
  CHECK(from_fpset_text(to_fpset_text(r)) == r);

  CHECK_THROWS_AS(from_fpset_text("p=13\n0,1\n"), std::invalid_argument);
  CHECK_THROWS_AS(from_fpset_text("# fpset v1\np=13\n3,1\n"), std::invalid_argument);
  CHECK_THROWS_AS(from_fpset_text("# fpset v1\np=13\n14\n"), std::invalid_argument);
}
