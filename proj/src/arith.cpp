#include "mtk/arith.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace mtk {

i64 powmod(i64 a, i64 e, i64 m) {
  if (m == 1) return 0;
  i64 r = 1;
  a = mod(a, m);
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

i64 invmod(i64 a, i64 m) {
  if (m == 1) return 0;
  i64 g = m, x = 0, r = mod(a, m), y = 1;
  while (r != 0) {
    i64 q = g / r;
    std::tie(g, r) = std::make_pair(r, g - q * r);
    std::tie(x, y) = std::make_pair(y, x - q * y);
  }
  if (g != 1) throw std::domain_error("invmod: not a unit");
  return mod(x, m);
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  i64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (i64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    i64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::pair<i64, int>> factor(i64 n) {
  std::vector<std::pair<i64, int>> out;
  if (n < 0) n = -n;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<i64> prime_divisors(i64 n) {
  std::vector<i64> out;
  for (auto& [p, e] : factor(n)) out.push_back(p);
  return out;
}

std::vector<i64> divisors(i64 n) {
  std::vector<i64> out{1};
  for (auto& [p, e] : factor(n)) {
    std::size_t sz = out.size();
    i64 pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<i64> primes_up_to(i64 n) {
  std::vector<i64> out;
  if (n < 2) return out;
  std::vector<bool> sieve(n + 1, true);
  for (i64 i = 2; i <= n; ++i) {
    if (!sieve[i]) continue;
    out.push_back(i);
    for (i64 j = i * i; j <= n; j += i) sieve[j] = false;
  }
  return out;
}

i64 euler_phi(i64 n) {
  i64 r = n;
  for (auto& [p, e] : factor(n)) r = r / p * (p - 1);
  return r;
}

i64 radical(i64 n) {
  i64 r = 1;
  for (auto& [p, e] : factor(n)) r *= p;
  return r;
}

int ord(i64 n, i64 p) {
  if (n == 0) throw std::domain_error("ord of zero");
  int e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

i64 crt(i64 a1, i64 m1, i64 a2, i64 m2) {
  if (m1 == 1) return mod(a2, m2);
  if (m2 == 1) return mod(a1, m1);
  i64 t = mulmod(mod(a2 - a1, m2), invmod(m1, m2), m2);
  return mod(a1 + m1 * t, m1 * m2);
}

int legendre(i64 a, i64 p) {
  a = mod(a, p);
  if (a == 0) return 0;
  return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

i64 mult_order(i64 a, i64 m) {
  if (m == 1) return 1;
  i64 n = euler_phi(m);
  i64 o = n;
  for (auto& [q, e] : factor(n)) {
    for (int i = 0; i < e && o % q == 0 && powmod(a, o / q, m) == 1; ++i) o /= q;
  }
  return o;
}

}  // namespace mtk
