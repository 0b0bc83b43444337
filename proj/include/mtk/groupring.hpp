#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mtk/linalg.hpp"
#include "mtk/rational.hpp"

namespace mtk {

// K = fixed field of H inside Q(zeta_m); G = (Z/m)^x / H.
struct AbelianFieldSpec {
  i64 m = 1;
  std::vector<i64> H_gens;
  std::vector<i64> H;                  // all residues of H, sorted
  std::vector<i64> reps;               // least positive residue of each coset, sorted
  std::vector<int> index_of;           // residue mod m -> element index, -1 for non-units
  std::vector<std::vector<int>> table; // multiplication table on indices
  std::vector<int> inv;                // inverse of each element

  int order() const { return static_cast<int>(reps.size()); }
  int identity() const { return 0; }
  // Index of the class of a (a must be a unit mod m).
  int element(i64 a) const;
  std::string text() const;
};

using SpecPtr = std::shared_ptr<const AbelianFieldSpec>;

SpecPtr make_spec(i64 m, const std::vector<i64>& H_gens = {});
SpecPtr parse_spec(const std::string& text);  // "m=<int>;H=<residues>"
bool same_field(const AbelianFieldSpec& a, const AbelianFieldSpec& b);

// Subfield of Q(zeta_m) of degree d when (Z/m)^x is cyclic (m prime power or 2 p^k).
SpecPtr cyclic_subfield(i64 m, i64 degree);

struct Ring {
  enum Kind { Z, Q, ZpK } kind = Q;
  i64 p = 0;
  int k = 0;
  static Ring rationals() { return {Q, 0, 0}; }
  static Ring integers() { return {Z, 0, 0}; }
  static Ring padic(i64 p, int k) { return {ZpK, p, k}; }
};

class GroupRingElement {
 public:
  GroupRingElement() = default;
  explicit GroupRingElement(SpecPtr spec, Ring ring = Ring::rationals());

  static GroupRingElement zero(SpecPtr spec) { return GroupRingElement(std::move(spec)); }
  static GroupRingElement one(SpecPtr spec);
  static GroupRingElement basis(SpecPtr spec, int index, const Rat& c = 1);
  static GroupRingElement sigma(SpecPtr spec, i64 a);  // sigma_a, a a unit mod m
  static GroupRingElement norm(SpecPtr spec, const std::vector<int>& subgroup);

  const SpecPtr& spec() const { return spec_; }
  const Ring& ring() const { return ring_; }
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat& operator[](int i) { return c_[i]; }
  const Rat& operator[](int i) const { return c_[i]; }

  GroupRingElement operator+(const GroupRingElement& o) const;
  GroupRingElement operator-(const GroupRingElement& o) const;
  GroupRingElement operator-() const;
  GroupRingElement operator*(const GroupRingElement& o) const;
  GroupRingElement operator*(const Rat& s) const;
  GroupRingElement& operator+=(const GroupRingElement& o);
  bool operator==(const GroupRingElement& o) const;
  bool operator!=(const GroupRingElement& o) const { return !(*this == o); }

  Rat aug() const;
  GroupRingElement sharp() const;  // sigma -> sigma^{-1}
  GroupRingElement pow(int e) const;
  bool is_zero() const;
  Int denominator() const;
  bool is_p_integral(i64 p) const;
  // Coefficients reduced into [0, p^k); requires p-integrality.
  GroupRingElement reduce(i64 p, int k) const;
  // Restriction to a subfield (NotASubfield if not contained).
  GroupRingElement project(const SpecPtr& sub) const;
  // Polynomial sum_i coeffs[i] * x^i.
  static GroupRingElement poly(const std::vector<Rat>& coeffs, const GroupRingElement& x);

 private:
  SpecPtr spec_;
  Ring ring_;
  std::vector<Rat> c_;
};

// sigma~_a: the class of b with b = a mod m1 and b = 1 mod m2, m2 the a-part of m.
GroupRingElement tilde_sigma(i64 a, const SpecPtr& spec);
i64 tilde_sigma_residue(i64 a, i64 m);

// Subgroups are sets of element indices.
using Subgroup = std::vector<int>;
Subgroup subgroup_generated(const AbelianFieldSpec& spec, const std::vector<int>& gens);
std::vector<int> subgroup_generators(const AbelianFieldSpec& spec, const Subgroup& S);
Subgroup whole_group(const AbelianFieldSpec& spec);
int element_order(const AbelianFieldSpec& spec, int g);
// Inertia (classes of b = 1 mod the prime-to-l part of m) and decomposition groups at l.
Subgroup inertia_group(const AbelianFieldSpec& spec, i64 ell);
Subgroup decomposition_group(const AbelianFieldSpec& spec, i64 ell);
// Image of a subgroup of a larger spec under restriction.
Subgroup image_subgroup(const AbelianFieldSpec& from, const Subgroup& S, const SpecPtr& to);

// Ideal prod_i I(S_i)^{e_i} Z_p[G], given by its factors.
struct IdealFactor {
  Subgroup subgroup;
  int exponent;
};
RatMat ideal_spanning_rows(const AbelianFieldSpec& spec, const std::vector<IdealFactor>& factors);

struct MembershipResult {
  Membership verdict;
  int k_used;
};
MembershipResult ideal_member(const GroupRingElement& x, const std::vector<IdealFactor>& factors,
                              i64 p, int k0, int k_max);

struct AugOrderResult {
  int order = 0;         // largest n <= cap with x in I^n, when decided
  bool undecided = false;
  int k_used = 0;
};
AugOrderResult aug_order(const GroupRingElement& x, i64 p, int k0, int k_max, int cap);

// Characters with values zeta_E^{exponent}, E = exponent of G.
struct CharacterTable {
  i64 E = 1;
  std::vector<std::vector<i64>> exps;  // exps[chi][g]
};
const CharacterTable& characters(const SpecPtr& spec);
std::complex<double> char_value(const CharacterTable& t, int chi, int g);
i64 character_order(const CharacterTable& t, int chi);

// Unit test through characters of the prime-to-p quotient, evaluated in F_{p^r}.
bool is_unit(const GroupRingElement& x, i64 p);
// Independent test: the multiplication-by-x matrix is invertible mod p.
bool is_unit_bruteforce(const GroupRingElement& x, i64 p);

}  // namespace mtk
