#include <doctest.h>

#include <random>

#include "mtk/errors.hpp"
#include "mtk/groupring.hpp"

using namespace mtk;

namespace {

GroupRingElement random_element(const SpecPtr& s, std::mt19937_64& rng, int lo, int hi) {
  GroupRingElement x(s);
  std::uniform_int_distribution<int> d(lo, hi);
  for (int g = 0; g < s->order(); ++g) x[g] = d(rng);
  return x;
}

}  // namespace

TEST_CASE("field specs enumerate cosets by least positive residue") {
  auto s = make_spec(12);
  CHECK(s->order() == 4);
  CHECK(s->reps == std::vector<i64>{1, 5, 7, 11});
  auto t = parse_spec("m=11;H=10");
  CHECK(t->order() == 5);
  CHECK(t->text() == "m=11;H=10");
  CHECK(make_spec(1)->order() == 1);
  CHECK_THROWS_AS(parse_spec("m=12;H=2"), ConfigInvalid);
  CHECK(cyclic_subfield(11, 5)->order() == 5);
  CHECK(same_field(*make_spec(6), *make_spec(3)));
}

TEST_CASE("ring axioms and involution") {
  std::mt19937_64 rng(7);
  auto s = make_spec(15);
  for (int t = 0; t < 20; ++t) {
    auto x = random_element(s, rng, -3, 3), y = random_element(s, rng, -3, 3),
         z = random_element(s, rng, -3, 3);
    CHECK(x * y == y * x);
    CHECK((x * y) * z == x * (y * z));
    CHECK(x.sharp().sharp() == x);
    CHECK((x * y).sharp() == x.sharp() * y.sharp());
    CHECK((x * y).aug() == x.aug() * y.aug());
  }
}

TEST_CASE("tilde sigma") {
  auto s = make_spec(12);
  CHECK(tilde_sigma(5, s) == GroupRingElement::sigma(s, 5));
  CHECK(tilde_sigma(12, s) == GroupRingElement::one(s));
  CHECK(tilde_sigma(24, s) == GroupRingElement::one(s));
  // m = 12 = 3 * 4, a = 2: b = 2 mod 3, b = 1 mod 4, so b = 5.
  CHECK(tilde_sigma_residue(2, 12) == 5);
  CHECK(tilde_sigma(2, s) == GroupRingElement::sigma(s, 5));
}

TEST_CASE("projection") {
  std::mt19937_64 rng(3);
  auto big = make_spec(20);
  auto sub = make_spec(5);
  auto x = random_element(big, rng, -5, 5);
  CHECK(x.project(big) == x);
  // N_H x projects to |H| times the projection of x, with H the kernel of G_20 -> G_5.
  Subgroup H;
  for (int g = 0; g < big->order(); ++g)
    if (big->reps[g] % 5 == 1) H.push_back(g);
  auto NH = GroupRingElement::norm(big, H);
  CHECK((NH * x).project(sub) == x.project(sub) * Rat(static_cast<long>(H.size())));
  CHECK_THROWS_AS(x.project(make_spec(3)), NotASubfield);
  CHECK(x.project(make_spec(1)).aug() == x.aug());
}

TEST_CASE("augmentation order examples") {
  // G cyclic of order 7, p = 7: sigma - 1 is in I but not in I^2.
  auto s = make_spec(29, {powmod(2, 7, 29)});
  REQUIRE(s->order() == 7);
  auto g = GroupRingElement::sigma(s, 2);
  auto one = GroupRingElement::one(s);
  auto r = aug_order(g - one, 7, 8, 16, 4);
  CHECK_FALSE(r.undecided);
  CHECK(r.order == 1);
  auto r2 = aug_order((g - one) * (g - one), 7, 8, 16, 4);
  CHECK(r2.order == 2);
  // aug not divisible by p gives order 0
  CHECK(aug_order(one * Rat(3), 7, 8, 16, 4).order == 0);
  // for |G| prime to p the ideal is idempotent: order reaches the cap
  auto c = make_spec(5);
  auto h = GroupRingElement::sigma(c, 2) - GroupRingElement::one(c);
  CHECK(aug_order(h, 7, 8, 16, 3).order == 3);
}

TEST_CASE("product of augmentation elements lies in I^2") {
  auto s = make_spec(16);
  auto a = GroupRingElement::sigma(s, 3) - GroupRingElement::one(s);
  auto b = GroupRingElement::sigma(s, 15) - GroupRingElement::one(s);
  CHECK(aug_order(a * b, 2, 8, 16, 2).order == 2);
}

TEST_CASE("aug order is superadditive and invariant under sharp") {
  std::mt19937_64 rng(11);
  auto s = cyclic_subfield(25, 5);
  REQUIRE(s->order() == 5);
  auto one = GroupRingElement::one(s);
  auto g = GroupRingElement::sigma(s, 2);
  for (int t = 0; t < 15; ++t) {
    auto x = random_element(s, rng, -4, 4) * (g - one);
    auto y = random_element(s, rng, -4, 4);
    if (t % 2) y = y * (g - one);
    auto ox = aug_order(x, 5, 8, 16, 4), oy = aug_order(y, 5, 8, 16, 4),
         oxy = aug_order(x * y, 5, 8, 16, 4);
    REQUIRE_FALSE(ox.undecided);
    REQUIRE_FALSE(oxy.undecided);
    CHECK(oxy.order >= std::min(4, ox.order + oy.order));
    CHECK(aug_order(x.sharp(), 5, 8, 16, 4).order == ox.order);
  }
}

TEST_CASE("characters are homomorphisms and orthogonal") {
  auto s = make_spec(24);
  const auto& t = characters(s);
  CHECK(t.exps.size() == static_cast<std::size_t>(s->order()));
  for (std::size_t c = 0; c < t.exps.size(); ++c)
    for (int a = 0; a < s->order(); ++a)
      for (int b = 0; b < s->order(); ++b)
        CHECK(mod(t.exps[c][a] + t.exps[c][b] - t.exps[c][s->table[a][b]], t.E) == 0);
  for (std::size_t c = 0; c < t.exps.size(); ++c)
    for (std::size_t d = c + 1; d < t.exps.size(); ++d) CHECK(t.exps[c] != t.exps[d]);
}

TEST_CASE("unit test examples") {
  auto s = make_spec(1);
  CHECK(is_unit(GroupRingElement::one(s), 7));
  CHECK_FALSE(is_unit(GroupRingElement::one(s) * Rat(7), 7));
  // 5 * Eul_5(sigma~_5) over K = Q for 11a1 (a_5 = 1): 5 - 1 + 1 = 5, a unit mod 7.
  CHECK(is_unit(GroupRingElement::one(s) * Rat(5), 7));
}

TEST_CASE("is_unit agrees with brute-force invertibility") {
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (i64 m : {5, 7, 8, 9, 12, 13, 21, 26}) {
    auto s = make_spec(m);
    if (s->order() > 12) continue;
    for (i64 p : {2, 3, 5, 7}) {
      for (int t = 0; t < 10; ++t) {
        auto x = random_element(s, rng, 0, static_cast<int>(p * p * p - 1));
        CHECK(is_unit(x, p) == is_unit_bruteforce(x, p));
        ++checked;
      }
    }
  }
  CHECK(checked >= 200);
}
