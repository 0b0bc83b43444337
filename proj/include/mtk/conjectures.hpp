#pragma once

#include <vector>

#include "mtk/curve.hpp"
#include "mtk/groupring.hpp"
#include "mtk/report.hpp"

namespace mtk {

// Conductor of the fixed field of H.
i64 field_conductor(const AbelianFieldSpec& spec);

struct PrimeRecord {
  i64 ell = 0;
  i64 a_ell = 0;
  int one_n = 1;
  i64 residue_degree_prime_to_p = 1;
  bool in_C_times = false;
  bool unit_bruteforce = false;  // l * Eul_l(sigma~_l) is a unit in Z_p[G]
  bool in_C_2 = false;
  bool in_C_0 = false;
  bool split_mult = false;
};

struct PrimeClassification {
  i64 p = 0;
  SpecPtr spec;
  i64 conductor = 1;
  bool literal_c2 = false;
  std::vector<PrimeRecord> records;
  std::vector<i64> Sp, C2, C0;
  int sp() const { return static_cast<int>(Sp.size()); }
  int c() const { return static_cast<int>(C2.size() + C0.size()); }
  const PrimeRecord* find(i64 ell) const;
  Json to_json() const;
};

// Single-prime record; the C_2, C_0 and split flags need the field conductor and are filled by classify_primes.
PrimeRecord classify_prime(const CurveData& E, const SpecPtr& spec, i64 ell, i64 p);

// Records every prime dividing m * N * p. C_2 uses a_l = 2 unless literal_c2 asks for a_l = 1.
PrimeClassification classify_primes(const CurveData& E, const SpecPtr& spec, i64 p, bool literal_c2 = false);

// Root-of-unity form of the C_x test for a single prime.
bool c_times_criterion(i64 ell, i64 a_ell, int one_n, i64 f, i64 p);

int predicted_vanishing_order(const CurveData& E, const SpecPtr& spec, i64 p, int r_p, bool literal_c2 = false);

CheckReport vanishing_order_check(const CurveData& E, const SpecPtr& spec, i64 p, int k, int target,
                                  bool also_product_ideal, int r_p = 0, int k_max = 16);

struct RecResult {
  i64 residue = 1;    // b with rec(q) = sigma_b in G_L
  int element = 0;    // index in G_L
  i64 unit_mod = 0;   // u mod l^t
  int t = 0;          // ord_l of the modulus of L
  int tam = 0;
};

// inverse_unit = true: u acts on l-power roots of unity by u^{-1} (the default normalisation).
RecResult rec_tate_period(const CurveData& E, i64 ell, const SpecPtr& L, int k, bool inverse_unit = true,
                          i64 perturb = 1);

struct LeadingTermOptions {
  bool inverse_unit = true;
  i64 perturb = 1;  // multiplies the Tate period unit (negative controls)
  int k_max = 16;
};

CheckReport leading_term_check(const CurveData& E, const SpecPtr& L, const SpecPtr& K, i64 p, int k,
                               const LeadingTermOptions& opt = {});

}  // namespace mtk
