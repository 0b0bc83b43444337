#pragma once

#include <complex>
#include <vector>

#include "mtk/groupring.hpp"
#include "mtk/linalg.hpp"

namespace mtk {

// Element of Q[X]/(X^M - 1); index i holds the coefficient of zeta_M^i.
struct CyclotomicNumber {
  i64 level = 1;
  std::vector<Rat> coeffs;

  explicit CyclotomicNumber(i64 M = 1) : level(M), coeffs(M, Rat(0)) {}
  static CyclotomicNumber zeta(i64 d, i64 M);  // zeta_d inside level M (d | M)

  CyclotomicNumber operator+(const CyclotomicNumber& o) const;
  CyclotomicNumber operator-(const CyclotomicNumber& o) const;
  CyclotomicNumber operator*(const CyclotomicNumber& o) const;
  CyclotomicNumber operator*(const Rat& s) const;
  CyclotomicNumber& operator+=(const CyclotomicNumber& o);
  bool operator==(const CyclotomicNumber& o) const { return level == o.level && coeffs == o.coeffs; }

  // X -> X^a on Q[X]/(X^M - 1); for a coprime to M this is sigma_a.
  CyclotomicNumber hat_sigma(i64 a) const;
  // Same element at level M' (M | M').
  CyclotomicNumber embed(i64 M2) const;
  // Image under X -> exp(2 pi i a / M).
  std::complex<double> evaluate(i64 a = 1) const;
  // Remainder modulo the M-th cyclotomic polynomial (canonical form in Q(zeta_M)).
  std::vector<Rat> reduce() const;
  bool equal_in_field(const CyclotomicNumber& o) const;
  bool is_zero_in_field() const;
};

std::vector<Int> cyclotomic_polynomial(i64 M);

// Matrix of sum_i c_i hat_sigma_l^i on the basis 1, X, ..., X^{M-1} (columns are images).
RatMat operator_matrix(const std::vector<Rat>& poly, i64 ell, i64 M);
CyclotomicNumber apply_operator(const RatMat& op, const CyclotomicNumber& x);
CyclotomicNumber eval_operator(const std::vector<Rat>& poly, i64 ell, const CyclotomicNumber& x);

// Action of Q[G] for G = (Z/m)^x, m | level, through sigma_b (b lifted to a unit at the level).
CyclotomicNumber act(const GroupRingElement& g, const CyclotomicNumber& x);

// Trace from Q(zeta_M) down to Q(zeta_d), d | M, as an element at level M.
CyclotomicNumber trace(const CyclotomicNumber& x, i64 d);
// Trace to the fixed field of a subgroup H of (Z/M)^x given by residues.
CyclotomicNumber trace_subgroup(const CyclotomicNumber& x, const std::vector<i64>& H);

}  // namespace mtk
