#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mtk/rational.hpp"

namespace mtk {

enum class ReductionKind { Good, SplitMultiplicative, NonsplitMultiplicative, Additive };

const char* kind_name(ReductionKind k);
ReductionKind parse_kind(const std::string& s);

struct ReductionInfo {
  i64 prime = 0;
  ReductionKind kind = ReductionKind::Good;
  i64 a_ell = 0;
  int tamagawa = 1;  // 0 means unknown (additive without override)
};

struct ReductionOverride {
  ReductionKind kind;
  int tamagawa;
};

// Integral Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6, assumed globally minimal.
struct CurveData {
  std::string label;
  Int a1, a2, a3, a4, a6;
  i64 N = 0;
  Int b2, b4, b6, b8, c4, c6, disc;
  Rat j;
  std::map<i64, ReductionOverride> overrides;
};

// Builds the curve and checks the discriminant identity and that every prime of N divides disc.
CurveData make_curve(const std::string& label, const std::vector<Int>& a, i64 N,
                     std::map<i64, ReductionOverride> overrides = {});
CurveData load_curve(const std::string& path);
CurveData parse_curve_json(const std::string& text);
std::string curve_json(const CurveData& E);

inline int one_N(const CurveData& E, i64 ell) { return E.N % ell == 0 ? 0 : 1; }

// Number of points of the reduction (including infinity) for good ell, by exhaustive count.
i64 count_points(const CurveData& E, i64 ell);
// Independent count via Euler's criterion on 4x^3 + b2 x^2 + 2 b4 x + b6 (odd ell only).
i64 count_points_character_sum(const CurveData& E, i64 ell);

ReductionInfo classify_reduction(const CurveData& E, i64 ell);
i64 compute_ap(const CurveData& E, i64 ell);

// a_1..a_n of the L-series, by multiplicativity and the Hecke recursion at prime powers.
std::vector<i64> an_list(const CurveData& E, std::size_t n);

// Same list through the on-disk cache ("n a_n" lines per label); recomputes on a miss.
std::vector<i64> an_list_cached(const CurveData& E, std::size_t n);

// l-adic Tate period q = l^tam * u with u known modulo l^k.
struct TatePeriod {
  i64 ell = 0;
  int tam = 0;
  int k = 0;
  Int unit;        // u mod l^k
  Int q_mod;       // q mod l^(k + tam)
  int terms_used = 0;
};

TatePeriod tate_period(const CurveData& E, i64 ell, int k);
// Re-evaluates 1/j at the computed q through the forward series; true if it matches 1/j(E).
bool tate_period_roundtrip(const CurveData& E, const TatePeriod& t);

int torsion_order(const CurveData& E);

// Global root number for squarefree conductor: -prod_{l | N} (-a_l).
int root_number(const CurveData& E);

// Coefficients of the integral series u(q) = Delta(q)/E4(q)^3 = q - 744 q^2 + ... (index = power of q).
std::vector<Int> inverse_j_series(std::size_t n);

}  // namespace mtk
