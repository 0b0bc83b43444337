#pragma once

#include <array>
#include <memory>
#include <utility>
#include <vector>

#include "mtk/curve.hpp"
#include "mtk/linalg.hpp"
#include "mtk/numeric.hpp"

namespace mtk {

// Omega_plus is real positive, Omega_minus = i * omega_minus with omega_minus > 0.
struct PeriodPair {
  Real omega_plus;
  Real omega_minus;
  int c_infty = 1;
  // Lattice basis (w1 real, tau in the upper half plane) used for the Eisenstein check.
  Real w1;
  Real tau_re, tau_im;
};

PeriodPair period_lattice(const CurveData& E, int digits);

// Recomputes c4 and c6 from the lattice via E4, E6; returns the larger relative error.
Real period_roundtrip_error(const CurveData& E, const PeriodPair& P, int digits);

// lambda(a/m) = 2 pi i * integral of f from i*infinity to a/m.
struct LambdaResult {
  Complex value;
  Real error_bound;
  std::size_t terms = 0;
};

// Supported when gcd(D, N/D) = 1 and N/D is squarefree for D = gcd(m, N).
bool lambda_supported(const CurveData& E, i64 m);
LambdaResult lambda_detail(const CurveData& E, i64 a, i64 m, int digits);
Complex lambda_value(const CurveData& E, i64 a, i64 m, int digits);

struct ModSymValue {
  Rat plus, minus;
  bool operator==(const ModSymValue& o) const { return plus == o.plus && minus == o.minus; }
};

// The projective line over Z/N with canonical representatives.
class P1List {
 public:
  explicit P1List(i64 N);
  i64 level() const { return N_; }
  std::size_t size() const { return reps_.size(); }
  int index(i64 c, i64 d) const;  // -1 if gcd(c, d, N) != 1
  std::pair<i64, i64> rep(std::size_t i) const { return reps_[i]; }

 private:
  i64 N_;
  std::vector<std::pair<i64, i64>> reps_;
  std::vector<int> index_;
};

// Heilbronn matrices of determinant n: a > b >= 0, d > c >= 0.
std::vector<std::array<i64, 4>> heilbronn_matrices(i64 n);

i64 sturm_bound(i64 N);

// Manin-symbol description of the +/- eigen-duals attached to E, normalised against periods.
class ModularSymbols {
 public:
  explicit ModularSymbols(const CurveData& E);

  const CurveData& curve() const { return E_; }
  const P1List& p1() const { return p1_; }
  i64 sturm() const { return sturm_; }
  const RatVec& dual(int sign) const { return sign > 0 ? plus_ : minus_; }
  const Rat& scale(int sign) const { return sign > 0 ? scale_plus_ : scale_minus_; }
  // Where each scale was pinned: (a, m).
  std::pair<i64, i64> pin(int sign) const { return sign > 0 ? pin_plus_ : pin_minus_; }

  // Coordinates of {infinity, a/m} in Manin symbols.
  std::vector<std::pair<int, int>> path(i64 a, i64 m) const;
  Rat raw(int sign, i64 a, i64 m) const;
  ModSymValue value(i64 a, i64 m) const;

  // T_l v = a_l v for every good prime l <= bound.
  bool hecke_consistent(i64 bound) const;

 private:
  CurveData E_;
  P1List p1_;
  i64 sturm_;
  RatVec plus_, minus_;
  Rat scale_plus_, scale_minus_;
  std::pair<i64, i64> pin_plus_{0, 0}, pin_minus_{0, 0};

  RatMat relation_rows(int sign, i64 hecke_bound) const;
  void pin_scale(int sign);
};

// Shared per-curve instance (built once, immutable afterwards).
std::shared_ptr<const ModularSymbols> modular_symbols(const CurveData& E);

struct ModSymOptions {
  bool exact = true;
  bool numeric = false;  // when both are on, the two paths must agree
  int digits = 30;
};

ModSymValue modular_symbol_pair(const CurveData& E, i64 a, i64 m, const ModSymOptions& opt = {});

// Reconstructs [a/m]^+- from lambda with denominator bound c_infty * |E(Q)_tors|.
ModSymValue modular_symbol_numeric(const CurveData& E, i64 a, i64 m, int digits);

// a_1..a_n held in memory per curve (backed by the on-disk cache).
std::shared_ptr<const std::vector<i64>> coefficients(const CurveData& E, std::size_t n);

}  // namespace mtk
