#pragma once

#include <gmpxx.h>

#include <string>

#include "mtk/arith.hpp"

namespace mtk {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int& n, const Int& d) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

// "num/den", or "num" when the denominator is 1.
std::string to_string(const Rat& r);
std::string to_string(const Int& n);
Rat parse_rat(const std::string& s);

// p-adic valuation; the value for zero is a large sentinel.
constexpr int kInfVal = 1 << 28;
int val(const Int& n, i64 p);
int val(const Rat& r, i64 p);

Int ipow(const Int& b, unsigned e);

// Reduction of a p-integral rational modulo M (M coprime to the denominator).
Int reduce_mod(const Rat& r, const Int& M);

// Least common multiple of denominators is computed by callers via lcm().
inline Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}
inline Int gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Symmetric residue of a modulo M in (-M/2, M/2].
Int symmetric_mod(const Int& a, const Int& M);

}  // namespace mtk
