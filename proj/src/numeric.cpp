#include "mtk/numeric.hpp"

namespace mtk {

Real Complex::abs() const { return sqrt(re * re + im * im); }

Complex Complex::operator/(const Complex& o) const {
  Real d = o.re * o.re + o.im * o.im;
  return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
}

Real pi_real() { return boost::math::constants::pi<Real>(); }

Complex expi(const Real& theta) { return {cos(theta), sin(theta)}; }

Real to_real(const Rat& r) {
  return Real(r.get_num().get_str()) / Real(r.get_den().get_str());
}

Real pow10(int e) { return pow(Real(10), e); }

std::optional<Rat> reconstruct(const Real& x, const Int& max_den, const Real& tol) {
  // Continued-fraction convergents of x.
  Real y = x;
  Int p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  std::optional<Rat> best;
  for (int it = 0; it < 200; ++it) {
    Real fl = floor(y);
    if (abs(fl) > Real(1e17)) break;
    Int a(static_cast<long>(fl.convert_to<long long>()));
    Int p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    Rat cand = make_rat(p2, q2);
    if (abs(to_real(cand) - x) < tol) return cand;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Real frac = y - fl;
    if (frac == 0) break;
    y = 1 / frac;
  }
  return best;
}

}  // namespace mtk
