#include <doctest.h>

#include <random>

#include "mtk/cyclotomic.hpp"

using namespace mtk;

namespace {

CyclotomicNumber random_cyc(i64 M, std::mt19937_64& rng) {
  CyclotomicNumber x(M);
  std::uniform_int_distribution<int> d(-6, 6);
  for (auto& c : x.coeffs) c = Rat(d(rng), 1 + std::abs(d(rng)));
  return x;
}

}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<Int>{-1, 1});
  CHECK(cyclotomic_polynomial(4) == std::vector<Int>{1, 0, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<Int>{1, -1, 1});
  CHECK(cyclotomic_polynomial(12).size() == 5);
}

TEST_CASE("hat sigma acts on zeta") {
  auto z = CyclotomicNumber::zeta(12, 12);
  CHECK(z.hat_sigma(5) == CyclotomicNumber::zeta(12, 12).hat_sigma(5));
  CHECK(z.hat_sigma(5).coeffs[5] == 1);
  CHECK(z.hat_sigma(3).coeffs[3] == 1);
}

TEST_CASE("exact arithmetic matches complex evaluation") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 100; ++t) {
    i64 M = 1 + static_cast<i64>(rng() % 60);
    auto x = random_cyc(M, rng), y = random_cyc(M, rng);
    i64 a = 1 + static_cast<i64>(rng() % M);
    while (gcd(a, M) != 1) ++a;
    CHECK(std::abs((x * y).evaluate() - x.evaluate() * y.evaluate()) < 1e-10);
    CHECK(std::abs((x + y).evaluate() - x.evaluate() - y.evaluate()) < 1e-10);
    CHECK(std::abs(x.hat_sigma(a).evaluate() - x.evaluate(a)) < 1e-10);
    // reduction modulo Phi_M keeps the complex value
    CyclotomicNumber r(M);
    auto red = x.reduce();
    for (std::size_t i = 0; i < red.size(); ++i) r.coeffs[i] = red[i];
    CHECK(std::abs(r.evaluate() - x.evaluate()) < 1e-9);
  }
}

TEST_CASE("field equality ignores the kernel of X^M - 1 -> Q(zeta_M)") {
  // 1 + zeta_3 + zeta_3^2 = 0 in Q(zeta_3), nonzero in Q[X]/(X^3 - 1).
  CyclotomicNumber s(3);
  s.coeffs = {1, 1, 1};
  CHECK(s.is_zero_in_field());
  CHECK_FALSE(s == CyclotomicNumber(3));
}

TEST_CASE("traces of roots of unity") {
  for (i64 ell : {2, 3, 5, 7}) {
    for (i64 m : {1, 2, 3, 4, 5, 6, 8, 9, 10, 14}) {
      if (ell * m > 60) continue;
      i64 M = ell * m;
      for (i64 d : divisors(m)) {
        if (m % ell == 0) {
          // l | m: the extension has degree l and zeta_d (d | m) is fixed.
          auto x = CyclotomicNumber::zeta(d, M);
          CHECK(trace(x, m).equal_in_field(x * Rat(ell)));
        } else {
          // l does not divide m: Tr zeta_{l d} = -sigma_l^{-1} zeta_d.
          auto y = CyclotomicNumber::zeta(ell * d, M);
          i64 linv = m == 1 ? 1 : invmod(ell, m);
          auto rhs = CyclotomicNumber::zeta(d, m).hat_sigma(linv).embed(M) * Rat(-1);
          CHECK(trace(y, m).equal_in_field(rhs));
        }
      }
    }
  }
  auto z = CyclotomicNumber::zeta(7, 7);
  CHECK(trace(z, 7) == z);
}

TEST_CASE("operators in hat sigma") {
  auto x = CyclotomicNumber::zeta(10, 10);
  auto y = eval_operator({Rat(1), Rat(-1, 2), Rat(1, 3)}, 3, x);
  CHECK(y.coeffs[1] == 1);
  CHECK(y.coeffs[3] == Rat(-1, 2));
  CHECK(y.coeffs[9] == Rat(1, 3));
  auto A = operator_matrix({Rat(1), Rat(-1, 2), Rat(1, 3)}, 3, 10);
  CHECK(apply_operator(A, x) == y);
}

TEST_CASE("group ring action") {
  auto spec = make_spec(12);
  auto g = GroupRingElement::sigma(spec, 5) + GroupRingElement::one(spec) * Rat(2);
  auto x = CyclotomicNumber::zeta(12, 12);
  auto y = act(g, x);
  CHECK(y.coeffs[5] == 1);
  CHECK(y.coeffs[1] == 2);
}
