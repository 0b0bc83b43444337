#include "mtk/finitefield.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

namespace mtk {

namespace {

using Poly = std::vector<i64>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& f, i64 p) {
  trim(a);
  std::size_t df = f.size() - 1;
  i64 lead_inv = invmod(f.back(), p);
  while (a.size() >= f.size()) {
    i64 c = mulmod(a.back(), lead_inv, p);
    std::size_t shift = a.size() - f.size();
    for (std::size_t i = 0; i <= df; ++i) a[shift + i] = mod(a[shift + i] - mulmod(c, f[i], p), p);
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, i64 p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + mulmod(a[i], b[j], p)) % p;
  return poly_mod(c, f, p);
}

Poly poly_powmod(Poly a, Int e, const Poly& f, i64 p) {
  Poly r{1};
  r = poly_mod(r, f, p);
  a = poly_mod(a, f, p);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = poly_mulmod(r, a, f, p);
    a = poly_mulmod(a, a, f, p);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, i64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = b;
    b = r;
  }
  return a;
}

bool irreducible(const Poly& f, i64 p) {
  int r = static_cast<int>(f.size()) - 1;
  if (r == 1) return true;
  Poly x{0, 1};
  Int P(static_cast<long>(p));
  // x^(p^r) = x mod f, and gcd(x^(p^(r/q)) - x, f) = 1 for every prime q | r.
  Poly xr = poly_powmod(x, ipow(P, static_cast<unsigned>(r)), f, p);
  Poly xm = poly_mod(x, f, p);
  if (xr != xm) return false;
  for (i64 q : prime_divisors(r)) {
    Poly t = poly_powmod(x, ipow(P, static_cast<unsigned>(r / q)), f, p);
    t.resize(std::max<std::size_t>(t.size(), 2), 0);
    t[1] = mod(t[1] - 1, p);
    trim(t);
    Poly g = poly_gcd(f, t, p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace

FiniteField::FiniteField(i64 p, int r) : p_(p), r_(r) {
  if (r < 1) throw std::invalid_argument("field degree must be positive");
  // Smallest monic irreducible polynomial in lexicographic order of lower coefficients.
  Poly f(r + 1, 0);
  f[r] = 1;
  if (r == 1) {
    f_ = f;  // t: elements are constants
    return;
  }
  for (;;) {
    // increment lower coefficients as a base-p counter
    std::size_t i = 0;
    while (i < static_cast<std::size_t>(r)) {
      if (++f[i] < p) break;
      f[i] = 0;
      ++i;
    }
    if (i == static_cast<std::size_t>(r)) throw std::runtime_error("no irreducible polynomial");
    if (f[0] != 0 && irreducible(f, p)) break;
  }
  f_ = f;
}

const FiniteField& FiniteField::get(i64 p, int r) {
  static std::shared_mutex mu;
  static std::map<std::pair<i64, int>, std::unique_ptr<FiniteField>> store;
  {
    std::shared_lock lock(mu);
    auto it = store.find({p, r});
    if (it != store.end()) return *it->second;
  }
  std::unique_lock lock(mu);
  auto& slot = store[{p, r}];
  if (!slot) slot = std::make_unique<FiniteField>(p, r);
  return *slot;
}

FiniteField::Elem FiniteField::one() const { return from_int(1); }

FiniteField::Elem FiniteField::from_int(i64 c) const {
  Elem e(r_, 0);
  e[0] = mod(c, p_);
  return e;
}

FiniteField::Elem FiniteField::add(const Elem& a, const Elem& b) const {
  Elem c(r_);
  for (int i = 0; i < r_; ++i) c[i] = (a[i] + b[i]) % p_;
  return c;
}

FiniteField::Elem FiniteField::mul(const Elem& a, const Elem& b) const {
  Poly c = poly_mulmod(a, b, f_, p_);
  c.resize(r_, 0);
  return c;
}

FiniteField::Elem FiniteField::pow(Elem a, Int e) const {
  Poly c = poly_powmod(a, e, f_, p_);
  c.resize(r_, 0);
  return c;
}

bool FiniteField::is_zero(const Elem& a) const {
  for (i64 c : a)
    if (c) return false;
  return true;
}

FiniteField::Elem FiniteField::root_of_unity(i64 e) const {
  Int P(static_cast<long>(p_));
  Int size = ipow(P, static_cast<unsigned>(r_)) - 1;
  if (size % Int(static_cast<long>(e)) != 0)
    throw std::invalid_argument("root_of_unity: e does not divide p^r - 1");
  if (e == 1) return one();
  Int cof = size / Int(static_cast<long>(e));
  auto primes = prime_divisors(e);
  for (i64 code = 2;; ++code) {
    Elem g(r_, 0);
    i64 c = code;
    for (int i = 0; i < r_ && c; ++i) {
      g[i] = c % p_;
      c /= p_;
    }
    if (c) break;
    Elem h = pow(g, cof);
    bool ok = !is_zero(h);
    for (i64 q : primes)
      if (ok && pow(h, Int(static_cast<long>(e / q))) == one()) ok = false;
    if (ok) return h;
  }
  throw std::runtime_error("no root of unity found");
}

}  // namespace mtk
