#include "mtk/rational.hpp"

#include <stdexcept>

namespace mtk {

std::string to_string(const Int& n) { return n.get_str(); }

std::string to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s));
  return make_rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

int val(const Int& n, i64 p) {
  if (n == 0) return kInfVal;
  Int P(static_cast<long>(p));
  return static_cast<int>(mpz_remove(Int().get_mpz_t(), n.get_mpz_t(), P.get_mpz_t()));
}

int val(const Rat& r, i64 p) {
  if (r == 0) return kInfVal;
  return val(r.get_num(), p) - val(r.get_den(), p);
}

Int ipow(const Int& b, unsigned e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

Int reduce_mod(const Rat& r, const Int& M) {
  Int inv;
  if (mpz_invert(inv.get_mpz_t(), r.get_den().get_mpz_t(), M.get_mpz_t()) == 0) {
    if (M == 1) return 0;
    throw std::domain_error("reduce_mod: denominator not invertible");
  }
  Int out = (r.get_num() * inv) % M;
  if (out < 0) out += M;
  return out;
}

Int symmetric_mod(const Int& a, const Int& M) {
  Int r = a % M;
  if (r < 0) r += M;
  if (2 * r > M) r -= M;
  return r;
}

}  // namespace mtk
