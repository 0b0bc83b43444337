#pragma once

#include <optional>
#include <string>

#include "mtk/curve.hpp"
#include "mtk/groupring.hpp"
#include "mtk/modsym.hpp"
#include "mtk/report.hpp"

namespace mtk {

struct ThetaElement {
  GroupRingElement element;
  std::string curve_label;
  SpecPtr spec;
  Json provenance;
};

// theta_K = projection of sum_a ([a/m]^+ + [a/m]^-) sigma_a to G_K.
ThetaElement theta(const CurveData& E, const SpecPtr& spec);
// Same at the full level m (cached per curve and m).
GroupRingElement theta_full(const CurveData& E, i64 m);

// Text form: metadata header then one "a: num/den" line per group element.
std::string theta_file(const ThetaElement& t);

// N_{F_m / F_{m/l}}: each sigma_b of G_{m/l} goes to the sum of its preimages in G_m.
GroupRingElement lift_norm(const GroupRingElement& x, const SpecPtr& up);

i64 delta_of(i64 m, i64 N);

// a_override replaces a_l on the right-hand side only (negative controls).
CheckReport verify_norm_relation(const CurveData& E, i64 m, i64 ell, std::optional<i64> a_override = std::nullopt);
CheckReport verify_functional_equation(const CurveData& E, i64 m);

// Characters of (Z/m)^x, indexed as in characters(make_spec(m)).
bool character_is_primitive(const SpecPtr& spec, int chi);
Complex gauss_sum(const SpecPtr& spec, int chi);
// L(E, chi^-1, 1) from the twisted series at level N m^2 (gcd(m, N) = 1).
struct TwistedL {
  Complex value;
  Complex eta;        // constant of the functional equation, fitted from two cut points
  Real consistency;   // |L(t3) - L(t1)| for a third cut point
};
TwistedL twisted_l_value(const CurveData& E, const SpecPtr& spec, int chi, int digits);

CheckReport verify_interpolation(const CurveData& E, i64 m, int chi, int digits);
CheckReport integrality_certificate(const CurveData& E, i64 m);

}  // namespace mtk
