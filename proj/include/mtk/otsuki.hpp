#pragma once

#include <string>
#include <vector>

#include "mtk/curve.hpp"
#include "mtk/cyclotomic.hpp"
#include "mtk/groupring.hpp"
#include "mtk/report.hpp"

namespace mtk {

// c_0 = 0, c_1 = 1, c_{i+1} = (a_l/l) c_i - (1_N(l)/l) c_{i-1}.
struct OtsukiCoefficients {
  std::string curve_label;
  i64 ell = 0;
  i64 a_ell = 0;
  int one_n = 1;
  std::vector<Rat> values;
  const Rat& c(int i) const { return values.at(i); }
};

OtsukiCoefficients c_coefficients(const CurveData& E, i64 ell, int upto);

// Coefficients of Eul_l(X) = 1 - (a_l/l) X + (1_N(l)/l) X^2.
std::vector<Rat> euler_polynomial(const CurveData& E, i64 ell);
// F~^(i)(X) = c_{i+1} - (1_N(l)/l) c_i X.
std::vector<Rat> f_tilde(const OtsukiCoefficients& c, int i);

// Largest M for which operator matrices on Q[X]/(X^M - 1) are built.
constexpr i64 kOperatorSizeCap = 720;

// Eul_l(sigma^_l) on Q[X]/(X^M - 1), sigma^_l : X -> X^l.
RatMat euler_operator(const CurveData& E, i64 ell, i64 M);
// Its inverse, certified by multiplying back to the identity (SingularOperator otherwise).
RatMat euler_inverse_operator(const CurveData& E, i64 ell, i64 M);

// Eul^-1 = sum_{i<j} c_{i+1} sigma^^i + F~^(j)(sigma^) Eul^-1 sigma^^j as matrices.
bool otsuki_relation_holds(const CurveData& E, i64 ell, i64 M, int j);

// Group-ring pieces at the full level M = m' l^n of spec (l | M).
GroupRingElement e_element(const SpecPtr& full, i64 ell, int j);
GroupRingElement omega_element(const SpecPtr& full, i64 ell, int j);

// zeta_{m' l^j} = omega_{n,j} * sum_{i=1}^{n} zeta_{m' l^i} in Q(zeta_M).
bool cyclotomic_relation_holds(i64 M, i64 ell, int j);

// lambda_n(sigma~_l) at the level of spec, then restricted to spec's field.
GroupRingElement nu_element(const CurveData& E, const SpecPtr& spec, i64 ell);

// Eul(sigma~) (Eul(sigma^)^-1 X)(zeta_{m' l^n}) = lambda_n(sigma~) sum_{i=1}^n zeta_{m' l^i}.
bool otsuki_lemma_holds(const CurveData& E, i64 ell, i64 mprime, int n);

// x_{mp^n} = ((prod_{l | mp} Eul_l(sigma^_l)^-1)(X))(zeta_{mp^n}).
CyclotomicNumber x_element(const CurveData& E, i64 p, i64 m, int n);
// kappa_{mp^n} = Eul_p(sigma^_p)^-1 sum_{rad(m) | d | m} zeta_{d p^n}.
CyclotomicNumber kappa_element(const CurveData& E, i64 p, i64 m, int n);

CheckReport verify_x_decomposition(const CurveData& E, i64 m, i64 p, int n);
CheckReport verify_nu_congruence(const CurveData& E, const SpecPtr& spec, i64 ell, i64 p, int k);
// nu lies in the ideal generated by Eul_l(sigma~_l) and the inertia norm.
CheckReport verify_nu_structure(const CurveData& E, const SpecPtr& spec, i64 ell, i64 p, int k);
CheckReport verify_trace_relations(const CurveData& E, i64 m, i64 p, int n);

}  // namespace mtk
