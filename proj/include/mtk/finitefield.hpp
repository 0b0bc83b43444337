#pragma once

#include <vector>

#include "mtk/rational.hpp"

namespace mtk {

// F_{p^r} as F_p[t]/(f) for a cached irreducible f of degree r.
class FiniteField {
 public:
  using Elem = std::vector<i64>;  // r coefficients, low degree first

  FiniteField(i64 p, int r);
  static const FiniteField& get(i64 p, int r);

  i64 p() const { return p_; }
  int degree() const { return r_; }
  const std::vector<i64>& modulus() const { return f_; }

  Elem zero() const { return Elem(r_, 0); }
  Elem one() const;
  Elem from_int(i64 c) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem pow(Elem a, Int e) const;
  bool is_zero(const Elem& a) const;
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  // An element of exact multiplicative order e (e | p^r - 1).
  Elem root_of_unity(i64 e) const;

 private:
  i64 p_;
  int r_;
  std::vector<i64> f_;  // monic, degree r, low degree first
};

}  // namespace mtk
