#include "doctest.h"

#include "mtk/errors.hpp"
#include "mtk/modsym.hpp"
#include "test_data.hpp"

using namespace mtk;

TEST_CASE("periods: c_infty and Eisenstein round trip") {
  auto e11 = test_curve("11a1"), e37 = test_curve("37a1"), e14 = test_curve("14a1");
  auto p11 = period_lattice(e11, 30);
  auto p37 = period_lattice(e37, 30);
  CHECK(p11.c_infty == 1);
  CHECK(p37.c_infty == 2);
  CHECK(p11.omega_plus > 0);
  CHECK(p11.omega_minus > 0);
  // Known real period of 11a1.
  CHECK(abs(p11.omega_plus - Real("1.269209304279553421688794616754")) < pow10(-25));
  for (auto* E : {&e11, &e37, &e14}) {
    auto P = period_lattice(*E, 30);
    CHECK(period_roundtrip_error(*E, P, 30) < pow10(-25));
  }
  CHECK_THROWS_AS(period_lattice(e11, 10), PrecisionUnsupported);
}

TEST_CASE("lambda: L(E,1) for 11a1 and symmetries") {
  auto E = test_curve("11a1");
  auto P = period_lattice(E, 30);
  auto l0 = lambda_detail(E, 0, 1, 30);
  CHECK(l0.error_bound < pow10(-30));
  // Independent series 2 sum a_n/n exp(-2 pi n / sqrt N) for w_N = -1.
  auto an = an_list(E, 2000);
  Real s = 0, pi = pi_real();
  for (int n = 1; n <= 2000; ++n) s += Real(an[n]) / n * exp(-2 * pi * n / sqrt(Real(11)));
  CHECK(abs(l0.value.re - 2 * s) < pow10(-30));
  CHECK(abs(l0.value.im) < pow10(-30));
  CHECK(abs(l0.value.re / P.omega_plus - Real(1) / 5) < pow10(-28));
  // Period 1 and conjugation.
  auto l3 = lambda_value(E, 3, 1, 30);
  CHECK(abs(l3.re - l0.value.re) < pow10(-28));
  for (auto [a, m] : std::vector<std::pair<i64, i64>>{{1, 3}, {2, 7}, {3, 11}, {5, 12}}) {
    auto x = lambda_value(E, a, m, 30), y = lambda_value(E, -a, m, 30);
    CHECK(abs(x.re - y.re) < pow10(-28));
    CHECK(abs(x.im + y.im) < pow10(-28));
  }
}

TEST_CASE("P1 and Heilbronn matrices") {
  P1List p(11);
  CHECK(p.size() == 12);
  P1List q(14);
  CHECK(q.size() == 24);  // 14 * (1 + 1/2)(1 + 1/7)
  for (i64 n : {2, 3, 5, 7}) {
    for (auto& h : heilbronn_matrices(n)) CHECK(h[0] * h[3] - h[1] * h[2] == n);
  }
  CHECK(sturm_bound(11) == 2);
  CHECK(sturm_bound(37) == 7);
}

TEST_CASE("modular symbols: exact values and Hecke consistency") {
  auto E = test_curve("11a1");
  auto M = modular_symbols(E);
  CHECK(M->hecke_consistent(M->sturm()));
  CHECK(M->hecke_consistent(30));
  CHECK(M->value(2, 11) == ModSymValue{1, 0});
  CHECK(M->value(3, 11) == ModSymValue{Rat(1, 2), Rat(1, 2)});
  auto v0 = M->value(0, 1);
  CHECK(v0.plus == Rat(1, 5));
  CHECK(v0.minus == 0);
  for (i64 a = 1; a < 11; ++a) {
    auto v = M->value(a, 11), w = M->value(-a, 11);
    CHECK(v.plus == w.plus);
    CHECK(v.minus == -w.minus);
    CHECK(Rat(5 * (v.plus + v.minus)).get_den() == 1);
  }
}

TEST_CASE("modular symbols: exact path agrees with numeric reconstruction") {
  for (auto label : {"11a1", "14a1", "37a1"}) {
    auto E = test_curve(label);
    auto M = modular_symbols(E);
    CHECK(M->hecke_consistent(M->sturm()));
    for (i64 m : {1, 2, 3, 5, 7, 8, 13, 20, 37, 50}) {
      if (!lambda_supported(E, m)) continue;
      for (i64 a = 0; a < m || m == 1; ++a) {
        if (gcd(a, m) != 1) continue;
        auto ex = M->value(a, m);
        auto nu = modular_symbol_numeric(E, a, m, 30);
        INFO(label << " " << a << "/" << m << " exact " << to_string(ex.plus) << "," << to_string(ex.minus)
                   << " numeric " << to_string(nu.plus) << "," << to_string(nu.minus));
        CHECK(ex == nu);
        if (m == 1) break;
      }
    }
  }
}

TEST_CASE("numeric reconstruction is stable under doubling digits") {
  auto E = test_curve("37a1");
  for (auto [a, m] : std::vector<std::pair<i64, i64>>{{1, 3}, {2, 5}, {3, 7}}) {
    CHECK(modular_symbol_numeric(E, a, m, 30) == modular_symbol_numeric(E, a, m, 60));
  }
}
