#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "mtk/curve.hpp"
#include "mtk/errors.hpp"
#include "test_data.hpp"

using namespace mtk;

TEST_CASE("discriminant and invariants of 11a1") {
  auto E = test_curve("11a1");
  CHECK(E.disc == -161051);
  CHECK(E.c4 == 496);
  CHECK(E.c6 == 20008);
  CHECK(1728 * E.disc == E.c4 * E.c4 * E.c4 - E.c6 * E.c6);
}

TEST_CASE("a_ell by point counting") {
  auto E = test_curve("11a1");
  // y^2 + y = x^3 - x^2 - 10x - 20 over F_2 has 4 affine points.
  CHECK(count_points(E, 2) == 5);
  CHECK(compute_ap(E, 2) == -2);
  CHECK(compute_ap(E, 3) == -1);
  CHECK(compute_ap(E, 5) == 1);
  CHECK(compute_ap(E, 7) == -2);
  CHECK(compute_ap(E, 13) == 4);
  CHECK(compute_ap(test_curve("37a1"), 5) == -2);
  CHECK(compute_ap(test_curve("14a1"), 3) == -2);
  CHECK(compute_ap(test_curve("20a1"), 7) == 2);
  CHECK(compute_ap(test_curve("20a1"), 13) == 2);
}

TEST_CASE("reduction classification") {
  auto E = test_curve("11a1");
  auto r11 = classify_reduction(E, 11);
  CHECK(r11.kind == ReductionKind::SplitMultiplicative);
  CHECK(r11.tamagawa == 5);
  CHECK(r11.a_ell == 1);
  auto r7 = classify_reduction(E, 7);
  CHECK(r7.kind == ReductionKind::Good);
  CHECK(r7.tamagawa == 1);
  auto F = test_curve("14a1");
  CHECK(classify_reduction(F, 7).kind == ReductionKind::SplitMultiplicative);
  CHECK(classify_reduction(F, 7).tamagawa == 3);
  CHECK(classify_reduction(F, 2).a_ell == -1);
  CHECK(classify_reduction(test_curve("20a1"), 5).a_ell == -1);
  CHECK(classify_reduction(test_curve("20a1"), 2).kind == ReductionKind::Additive);
  CHECK(classify_reduction(test_curve("37a1"), 37).a_ell == -1);
}

TEST_CASE("bad prime 2 or 3 without override is refused") {
  auto E = make_curve("14a1-bare", {1, 0, 1, 4, -6}, 14);
  CHECK_THROWS_AS(compute_ap(E, 2), PrecisionUnsupported);
}

TEST_CASE("non-minimal witness") {
  // 11a1 scaled by u = 5: a_i -> u^i a_i.
  auto E = make_curve("scaled", {0, -25, 125, -6250, -312500}, 11);
  CHECK_THROWS_AS(classify_reduction(E, 5), NotMinimal);
}

TEST_CASE("invalid curves are rejected") {
  CHECK_THROWS_AS(make_curve("sing", {0, 0, 0, 0, 0}, 1), InvalidCurve);
  CHECK_THROWS_AS(make_curve("badN", {0, -1, 1, -10, -20}, 13), InvalidCurve);
}

TEST_CASE("Hasse bound and character-sum count on random good primes") {
  std::mt19937_64 rng(12345);
  auto primes = primes_up_to(10000);
  for (const char* label : {"11a1", "37a1", "14a1"}) {
    auto E = test_curve(label);
    for (int t = 0; t < 100; ++t) {
      i64 ell = primes[rng() % primes.size()];
      if (ell == 2 || E.N % ell == 0) continue;
      i64 a = compute_ap(E, ell);
      CHECK(static_cast<double>(a * a) <= 4.0 * ell);
      CHECK(ell + 1 - a == count_points_character_sum(E, ell));
    }
  }
}

TEST_CASE("multiplicative sign agrees with nonsingular point count") {
  // |E^ns(F_l)| = l - a_l; the singular point is counted once in count_points.
  for (auto [label, ell] : {std::pair{"11a1", 11}, {"14a1", 7}, {"37a1", 37}}) {
    auto E = test_curve(label);
    auto info = classify_reduction(E, ell);
    CHECK(count_points(E, ell) - 1 == ell - info.a_ell);
  }
}

TEST_CASE("a_n multiplicativity") {
  auto E = test_curve("11a1");
  auto a = an_list(E, 50);
  CHECK(a[1] == 1);
  CHECK(a[4] == 2);   // a_2^2 - 2
  CHECK(a[6] == 2);   // a_2 a_3
  CHECK(a[11] == 1);
  CHECK(a[22] == a[2] * a[11]);
  CHECK(a[8] == a[2] * a[4] - 2 * a[2]);
}

TEST_CASE("torsion orders") {
  CHECK(torsion_order(test_curve("11a1")) == 5);
  CHECK(torsion_order(test_curve("37a1")) == 1);
  CHECK(torsion_order(test_curve("14a1")) == 6);
}

TEST_CASE("root numbers") {
  CHECK(root_number(test_curve("11a1")) == 1);
  CHECK(root_number(test_curve("37a1")) == -1);
  CHECK(root_number(test_curve("14a1")) == 1);
}

TEST_CASE("1/j series") {
  auto u = inverse_j_series(5);
  CHECK(u[0] == 0);
  CHECK(u[1] == 1);
  CHECK(u[2] == -744);
  CHECK(u[3] == 356652);  // 744^2 - 196884
}

TEST_CASE("Tate period of 11a1 at 11") {
  auto E = test_curve("11a1");
  auto t = tate_period(E, 11, 8);
  CHECK(t.tam == 5);
  CHECK(val(t.q_mod, 11) == 5);
  CHECK(tate_period_roundtrip(E, t));
  // q = 1/j + O((1/j)^2), so q - 1/j vanishes modulo 11^(2 tam).
  Int M = ipow(Int(11), 10);
  CHECK((t.q_mod - reduce_mod(1 / E.j, M)) % M == 0);
  // more precision never changes certified digits
  auto t2 = tate_period(E, 11, 12);
  CHECK((t2.unit - t.unit) % ipow(Int(11), 8) == 0);
  CHECK_THROWS_AS(tate_period(E, 11, 5000), PrecisionUnsupported);
}
