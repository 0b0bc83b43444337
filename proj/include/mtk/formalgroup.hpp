#pragma once

#include <vector>

#include "mtk/curve.hpp"
#include "mtk/report.hpp"

namespace mtk {

// p^v * u with u a unit known modulo p^rel. Zero is stored as "known to be 0 mod p^v" with rel = 0.
class Padic {
 public:
  Padic() = default;
  Padic(i64 p, int v, Int u, int rel);
  static Padic zero(i64 p, int abs_prec);
  static Padic from_rat(const Rat& q, i64 p, int abs_prec);
  static Padic from_int(const Int& n, i64 p, int abs_prec) { return from_rat(Rat(n), p, abs_prec); }

  i64 prime() const { return p_; }
  bool is_zero() const { return rel_ == 0; }
  // Lower bound for the valuation: exact if nonzero, the known precision otherwise.
  int valuation() const { return v_; }
  int abs_precision() const { return v_ + rel_; }
  int rel_precision() const { return rel_; }
  const Int& unit() const { return u_; }
  // Representative in Q: p^v * u.
  Rat to_rat() const;

  Padic operator-() const;
  Padic operator+(const Padic& o) const;
  Padic operator-(const Padic& o) const { return *this + (-o); }
  Padic operator*(const Padic& o) const;
  Padic operator/(const Padic& o) const;  // o must be nonzero
  Padic& operator+=(const Padic& o) { return *this = *this + o; }
  Padic& operator*=(const Padic& o) { return *this = *this * o; }

  // Agreement on all digits certified by both operands.
  bool agrees(const Padic& o) const;

 private:
  i64 p_ = 2;
  int v_ = 0;
  Int u_ = 0;
  int rel_ = 0;
};

const Int& ppow(i64 p, int e);

// Truncated series sum c[i] X^i, i <= degree.
struct PadicSeries {
  i64 p = 2;
  int k = 0;  // requested precision
  std::vector<Padic> c;
  int degree() const { return static_cast<int>(c.size()) - 1; }
  // Least absolute precision over coefficients 1..degree.
  int guaranteed_precision() const;
};

PadicSeries series_from_rats(const std::vector<Rat>& v, i64 p, int abs_prec);
PadicSeries mul(const PadicSeries& a, const PadicSeries& b, int D);
// f(g(X)) truncated at degree D; g(0) must be 0.
PadicSeries compose(const PadicSeries& f, const PadicSeries& g, int D);
// Compositional inverse of f = X + ... (Lagrange inversion).
PadicSeries reversion(const PadicSeries& f, int D);
// sum b_i X^i -> sum b_i X^{ip} (Frobenius trivial on Q_p).
PadicSeries frobenius_hat(const PadicSeries& f, int D);

// Invariant differential omega = sum w_n t^n dt in the parameter t = -x/y, from dx/(2y + a1 x + a3).
std::vector<Rat> invariant_differential(const CurveData& E, int D);
// The same series from dy/(3x^2 + 2 a2 x + a4 - a1 y).
std::vector<Rat> invariant_differential_alt(const CurveData& E, int D);
// log(X) = sum w_{n-1}/n X^n, exact, index = power of X.
std::vector<Rat> formal_log_exact(const CurveData& E, int D);

PadicSeries formal_log(const CurveData& E, i64 p, int D, int k);
PadicSeries formal_exp(const CurveData& E, i64 p, int D, int k);

// Coefficients of (p - a_p phi + 1_N(p) phi^2) f up to degree D, exact.
std::vector<Rat> honda_operator(const std::vector<Rat>& f, i64 p, i64 a_p, int one_n, int D);

CheckReport honda_type_check(const CurveData& E, i64 p, int D, int k);

Padic teichmuller(i64 j, i64 p, int k);

// binom(delta, l) for l = 0..D with delta in Z_p.
std::vector<Padic> binomials(const Padic& delta, int D);

// g_{chi,1} for chi = tau^s, s != 1 mod p-1.
PadicSeries g_series(const CurveData& E, i64 p, int s, int D, int k);

CheckReport g_and_h_check(const CurveData& E, i64 p, int s, int D, int k);

// exp_Gm(log_E(X)) = e^{log_E(X)} - 1, integral at a split multiplicative prime.
PadicSeries multiplicative_comparison(const CurveData& E, i64 p, int D, int k);

}  // namespace mtk
