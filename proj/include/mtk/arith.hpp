#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

namespace mtk {

using i64 = std::int64_t;

inline i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }
inline i64 lcm(i64 a, i64 b) { return a / gcd(a, b) * b; }

// Least non-negative residue.
inline i64 mod(i64 a, i64 m) {
  if (m == 1) return 0;
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

inline i64 mulmod(i64 a, i64 b, i64 m) {
  return static_cast<i64>((static_cast<__int128>(a) * b) % m);
}

i64 powmod(i64 a, i64 e, i64 m);

// Inverse of a modulo m; throws std::domain_error if gcd(a, m) != 1.
i64 invmod(i64 a, i64 m);

bool is_prime(i64 n);

// Prime factorisation as (prime, exponent) pairs in increasing order.
std::vector<std::pair<i64, int>> factor(i64 n);

std::vector<i64> prime_divisors(i64 n);
std::vector<i64> divisors(i64 n);
std::vector<i64> primes_up_to(i64 n);

i64 euler_phi(i64 n);
i64 radical(i64 n);

// Exponent of prime p in n (n != 0).
int ord(i64 n, i64 p);

inline i64 ipow(i64 b, int e) {
  i64 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// x with x = a1 mod m1 and x = a2 mod m2, for coprime m1, m2.
i64 crt(i64 a1, i64 m1, i64 a2, i64 m2);

// Legendre symbol (a/p) for an odd prime p.
int legendre(i64 a, i64 p);

// Multiplicative order of a modulo m (gcd(a, m) = 1).
i64 mult_order(i64 a, i64 m);

}  // namespace mtk
