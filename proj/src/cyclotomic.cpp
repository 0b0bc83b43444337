#include "mtk/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "mtk/errors.hpp"

namespace mtk {

CyclotomicNumber CyclotomicNumber::zeta(i64 d, i64 M) {
  if (M % d != 0) throw std::invalid_argument("zeta: d must divide the level");
  CyclotomicNumber z(M);
  z.coeffs[mod(M / d, M)] = 1;
  return z;
}

CyclotomicNumber CyclotomicNumber::operator+(const CyclotomicNumber& o) const {
  CyclotomicNumber r = *this;
  r += o;
  return r;
}

CyclotomicNumber& CyclotomicNumber::operator+=(const CyclotomicNumber& o) {
  if (o.level != level) throw std::invalid_argument("level mismatch");
  for (i64 i = 0; i < level; ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

CyclotomicNumber CyclotomicNumber::operator-(const CyclotomicNumber& o) const {
  return *this + o * Rat(-1);
}

CyclotomicNumber CyclotomicNumber::operator*(const CyclotomicNumber& o) const {
  if (o.level != level) throw std::invalid_argument("level mismatch");
  CyclotomicNumber r(level);
  for (i64 i = 0; i < level; ++i) {
    if (coeffs[i] == 0) continue;
    for (i64 j = 0; j < level; ++j)
      if (o.coeffs[j] != 0) r.coeffs[(i + j) % level] += coeffs[i] * o.coeffs[j];
  }
  return r;
}

CyclotomicNumber CyclotomicNumber::operator*(const Rat& s) const {
  CyclotomicNumber r = *this;
  for (auto& c : r.coeffs) c *= s;
  return r;
}

CyclotomicNumber CyclotomicNumber::hat_sigma(i64 a) const {
  CyclotomicNumber r(level);
  for (i64 i = 0; i < level; ++i)
    if (coeffs[i] != 0) r.coeffs[mulmod(mod(a, level), i, level)] += coeffs[i];
  return r;
}

CyclotomicNumber CyclotomicNumber::embed(i64 M2) const {
  if (M2 % level != 0) throw std::invalid_argument("embed: level must divide target");
  CyclotomicNumber r(M2);
  i64 f = M2 / level;
  for (i64 i = 0; i < level; ++i) r.coeffs[i * f] = coeffs[i];
  return r;
}

std::complex<double> CyclotomicNumber::evaluate(i64 a) const {
  std::complex<double> s = 0;
  for (i64 i = 0; i < level; ++i) {
    if (coeffs[i] == 0) continue;
    double ang = 2 * std::numbers::pi * static_cast<double>(mulmod(mod(a, level), i, level)) /
                 static_cast<double>(level);
    s += coeffs[i].get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return s;
}

std::vector<Int> cyclotomic_polynomial(i64 M) {
  static std::mutex mu;
  static std::map<i64, std::vector<Int>> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(M);
    if (it != memo.end()) return it->second;
  }
  // X^M - 1 divided by Phi_d for every proper divisor d.
  std::vector<Int> num(M + 1, Int(0));
  num[0] = -1;
  num[M] = 1;
  for (i64 d : divisors(M)) {
    if (d == M) continue;
    auto phi = cyclotomic_polynomial(d);
    // exact division by monic phi
    std::vector<Int> q(num.size() - phi.size() + 1, Int(0));
    for (std::size_t i = q.size(); i-- > 0;) {
      q[i] = num[i + phi.size() - 1];
      for (std::size_t j = 0; j < phi.size(); ++j) num[i + j] -= q[i] * phi[j];
    }
    num = q;
  }
  std::lock_guard<std::mutex> lock(mu);
  memo[M] = num;
  return num;
}

std::vector<Rat> CyclotomicNumber::reduce() const {
  auto phi = cyclotomic_polynomial(level);
  std::vector<Rat> a = coeffs;
  std::size_t deg = phi.size() - 1;
  for (std::size_t i = a.size(); i-- > deg;) {
    if (a[i] == 0) continue;
    Rat c = a[i];
    for (std::size_t j = 0; j <= deg; ++j) a[i - deg + j] -= c * Rat(phi[j]);
  }
  a.resize(deg);
  return a;
}

bool CyclotomicNumber::is_zero_in_field() const {
  for (const auto& c : reduce())
    if (c != 0) return false;
  return true;
}

bool CyclotomicNumber::equal_in_field(const CyclotomicNumber& o) const {
  return (*this - o).is_zero_in_field();
}

RatMat operator_matrix(const std::vector<Rat>& poly, i64 ell, i64 M) {
  RatMat A(M, RatVec(M, Rat(0)));
  for (i64 i = 0; i < M; ++i) {
    i64 idx = i;
    for (const auto& c : poly) {
      if (c != 0) A[idx][i] += c;
      idx = mulmod(idx, mod(ell, M), M);
    }
  }
  return A;
}

CyclotomicNumber apply_operator(const RatMat& op, const CyclotomicNumber& x) {
  CyclotomicNumber r(x.level);
  r.coeffs = matvec(op, x.coeffs);
  return r;
}

CyclotomicNumber eval_operator(const std::vector<Rat>& poly, i64 ell, const CyclotomicNumber& x) {
  CyclotomicNumber r(x.level), pw = x;
  for (const auto& c : poly) {
    if (c != 0) r += pw * c;
    pw = pw.hat_sigma(ell);
  }
  return r;
}

namespace {

i64 lift_unit(i64 b, i64 m, i64 M) {
  i64 u = mod(b, m);
  if (M == 1) return 0;
  while (gcd(u, M) != 1) u += m;
  return u;
}

}  // namespace

CyclotomicNumber act(const GroupRingElement& g, const CyclotomicNumber& x) {
  const auto& spec = *g.spec();
  if (x.level % spec.m != 0 || spec.H.size() != 1)
    throw std::invalid_argument("act: needs the full group at a level dividing the element's");
  CyclotomicNumber r(x.level);
  for (int i = 0; i < spec.order(); ++i) {
    if (g[i] == 0) continue;
    r += x.hat_sigma(lift_unit(spec.reps[i], spec.m, x.level)) * g[i];
  }
  return r;
}

CyclotomicNumber trace(const CyclotomicNumber& x, i64 d) {
  i64 M = x.level;
  if (M % d != 0) throw NotASubfield("trace: target level must divide the source level");
  CyclotomicNumber r(M);
  for (i64 u = 0; u < M; ++u) {
    if (M > 1 && gcd(u, M) != 1) continue;
    if (mod(u - 1, d) != 0) continue;
    r += x.hat_sigma(u);
  }
  return r;
}

CyclotomicNumber trace_subgroup(const CyclotomicNumber& x, const std::vector<i64>& H) {
  CyclotomicNumber r(x.level);
  for (i64 h : H) r += x.hat_sigma(h);
  return r;
}

}  // namespace mtk
