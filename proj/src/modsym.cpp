#include "mtk/modsym.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "mtk/errors.hpp"

namespace mtk {

namespace {

void check_digits(int digits) {
  if (digits < 15 || digits > kMaxDigits)
    throw PrecisionUnsupported("digits must lie in [15, " + std::to_string(kMaxDigits) + "]");
}

Real int_real(const Int& n) { return Real(n.get_str()); }

Real agm(Real a, Real b) {
  if (a <= 0 || b <= 0) throw ConvergenceFailure("AGM needs positive arguments");
  Real eps = pow10(-95);
  for (int it = 0; it < 200; ++it) {
    if (abs(a - b) <= eps * abs(a)) return a;
    Real na = (a + b) / 2;
    b = sqrt(a * b);
    a = na;
  }
  throw ConvergenceFailure("AGM stagnated");
}

// Root of the cubic 4x^3 + b2 x^2 + 2 b4 x + b6 in [lo, hi] where it changes sign.
Real bisect_root(const Real& b2, const Real& b4, const Real& b6, Real lo, Real hi) {
  auto f = [&](const Real& x) { return ((4 * x + b2) * x + 2 * b4) * x + b6; };
  Real flo = f(lo);
  for (int it = 0; it < 400; ++it) {
    Real mid = (lo + hi) / 2;
    Real fm = f(mid);
    if (fm == 0) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

std::vector<Real> real_roots(const CurveData& E) {
  Real b2 = int_real(E.b2), b4 = int_real(E.b4), b6 = int_real(E.b6);
  Real bound = 1 + std::max({abs(b2), abs(2 * b4), abs(b6)}) / 4;
  if (E.disc < 0) return {bisect_root(b2, b4, b6, -bound, bound)};
  // Three real roots separated by the critical points of the cubic.
  Real disc = 4 * b2 * b2 - 96 * b4;
  Real s = sqrt(disc);
  Real xm = (-2 * b2 - s) / 24, xp = (-2 * b2 + s) / 24;
  Real e3 = bisect_root(b2, b4, b6, -bound, xm);
  Real e2 = bisect_root(b2, b4, b6, xm, xp);
  Real e1 = bisect_root(b2, b4, b6, xp, bound);
  return {e1, e2, e3};
}

std::vector<Int> divisor_power_sums(std::size_t n, unsigned k) {
  std::vector<Int> s(n + 1, Int(0));
  for (std::size_t d = 1; d <= n; ++d) {
    Int dk = ipow(Int(static_cast<long>(d)), k);
    for (std::size_t j = d; j <= n; j += d) s[j] += dk;
  }
  return s;
}

bool squarefree(i64 n) {
  for (auto& [p, e] : factor(n))
    if (e > 1) return false;
  return true;
}

}  // namespace

PeriodPair period_lattice(const CurveData& E, int digits) {
  check_digits(digits);
  if (E.disc == 0) throw InvalidCurve("singular curve");
  Real pi = pi_real();
  PeriodPair P;
  auto roots = real_roots(E);
  if (E.disc > 0) {
    const Real &e1 = roots[0], &e2 = roots[1], &e3 = roots[2];
    Real w1 = pi / agm(sqrt(e1 - e3), sqrt(e1 - e2));
    Real w2 = pi / agm(sqrt(e1 - e3), sqrt(e2 - e3));
    P.c_infty = 2;
    P.omega_plus = 2 * w1;
    P.omega_minus = w2;
    P.w1 = w1;
    P.tau_re = 0;
    P.tau_im = w2 / w1;
  } else {
    const Real& e1 = roots[0];
    Real b2 = int_real(E.b2), b4 = int_real(E.b4);
    Real beta = 3 * e1 + b2 / 4;
    Real alpha = sqrt(3 * e1 * e1 + b2 * e1 / 2 + b4 / 2);
    Real w1 = 2 * pi / agm(2 * sqrt(alpha), sqrt(2 * alpha + beta));
    Real w2i = pi / agm(2 * sqrt(alpha), sqrt(2 * alpha - beta));
    P.c_infty = 1;
    P.omega_plus = w1;
    P.omega_minus = 2 * w2i;
    P.w1 = w1;
    P.tau_re = Real(-1) / 2;
    P.tau_im = w2i / w1;
  }
  return P;
}

Real period_roundtrip_error(const CurveData& E, const PeriodPair& P, int digits) {
  Real pi = pi_real();
  Real q = exp(-2 * pi * P.tau_im);
  if (P.tau_re != 0) q = -q;
  Real target = pow10(-(digits + 10));
  std::size_t n = 1;
  for (Real aq = abs(q); n < 200000 && aq > target; ++n) aq *= abs(q);
  if (n >= 200000) throw ConvergenceFailure("lattice q-series does not converge");
  auto s3 = divisor_power_sums(n, 3), s5 = divisor_power_sums(n, 5);
  Real e4 = 1, e6 = 1, qn = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    qn *= q;
    e4 += 240 * int_real(s3[i]) * qn;
    e6 -= 504 * int_real(s5[i]) * qn;
  }
  Real t = 2 * pi / P.w1;
  Real c4 = pow(t, 4) * e4, c6 = pow(t, 6) * e6;
  Real ex4 = int_real(E.c4), ex6 = int_real(E.c6);
  Real r4 = abs(c4 - ex4) / std::max(Real(1), abs(ex4));
  Real r6 = abs(c6 - ex6) / std::max(Real(1), abs(ex6));
  return std::max(r4, r6);
}

std::shared_ptr<const std::vector<i64>> coefficients(const CurveData& E, std::size_t n) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const std::vector<i64>>> memo;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = memo[E.label + "/" + std::to_string(E.N)];
  if (!slot || slot->size() < n + 1) {
    std::size_t want = std::max(n, slot ? 2 * (slot->size() - 1) : n);
    slot = std::make_shared<const std::vector<i64>>(an_list_cached(E, want));
  }
  return slot;
}

bool lambda_supported(const CurveData& E, i64 m) {
  i64 D = gcd(m, E.N), Q = E.N / D;
  return gcd(D, Q) == 1 && squarefree(Q);
}

LambdaResult lambda_detail(const CurveData& E, i64 a, i64 m, int digits) {
  check_digits(digits);
  if (m <= 0 || gcd(a, m) != 1) throw std::invalid_argument("lambda_value: need gcd(a, m) = 1");
  if (!lambda_supported(E, m))
    throw PrecisionUnsupported("no Atkin-Lehner contour for m = " + std::to_string(m) +
                               " at conductor " + std::to_string(E.N));
  i64 N = E.N, D = gcd(m, N), Q = N / D;
  int wQ = 1;
  for (i64 l : prime_divisors(Q)) wQ *= -static_cast<int>(compute_ap(E, l));
  i64 a_red = mod(a, m);
  i64 wp = m == 1 ? 0 : invmod(mulmod(a_red, mod(Q, m), m), m);

  // lambda = S(a/m + iy) - w_Q S(-w'/m + iy) with y = 1/(m sqrt Q).
  Real pi = pi_real();
  Real y = 1 / (Real(m) * sqrt(Real(Q)));
  Real r = exp(-2 * pi * y);
  Real ln10 = log(Real(10));
  Real need = (log(8 / (1 - r)) + digits * ln10) / (2 * pi * y);
  const double kBudget = 5e6;
  if (need.convert_to<double>() > kBudget)
    throw PrecisionUnsupported("q-expansion would need more than 5e6 terms");
  std::size_t T = static_cast<std::size_t>(need.convert_to<double>()) + 1;
  auto an = coefficients(E, T);

  std::vector<Complex> roots(m);
  for (i64 k = 0; k < m; ++k) roots[k] = expi(2 * pi * Real(k) / Real(m));
  Complex s1, s0;
  Real rn = 1;
  for (std::size_t n = 1; n <= T; ++n) {
    rn *= r;
    i64 c = (*an)[n];
    if (c == 0) continue;
    Real coef = Real(c) / Real(static_cast<long long>(n)) * rn;
    i64 nn = static_cast<i64>(n % static_cast<std::size_t>(m));
    s1 += roots[mulmod(nn, a_red, m)] * coef;
    s0 += roots[mod(-mulmod(nn, wp, m), m)] * coef;
  }
  LambdaResult out;
  out.value = s1 - s0 * Real(wQ);
  out.error_bound = 4 * pow(r, static_cast<long long>(T + 1)) / (1 - r);
  out.terms = T;
  return out;
}

Complex lambda_value(const CurveData& E, i64 a, i64 m, int digits) {
  return lambda_detail(E, a, m, digits).value;
}

P1List::P1List(i64 N) : N_(N), index_(N * N, -1) {
  std::vector<i64> units;
  for (i64 u = 1; u <= N; ++u)
    if (gcd(u, N) == 1) units.push_back(mod(u, N));
  std::map<std::pair<i64, i64>, int> canon;
  for (i64 c = 0; c < N; ++c) {
    for (i64 d = 0; d < N; ++d) {
      if (gcd(gcd(c, d), N) != 1) continue;
      std::pair<i64, i64> best{N, N};
      for (i64 u : units) best = std::min(best, {mulmod(u, c, N), mulmod(u, d, N)});
      auto [it, fresh] = canon.emplace(best, static_cast<int>(reps_.size()));
      if (fresh) reps_.push_back(best);
      index_[c * N + d] = it->second;
    }
  }
}

int P1List::index(i64 c, i64 d) const { return index_[mod(c, N_) * N_ + mod(d, N_)]; }

std::vector<std::array<i64, 4>> heilbronn_matrices(i64 n) {
  std::vector<std::array<i64, 4>> out;
  for (i64 a = 1; a <= n; ++a)
    for (i64 d = 1; a + d <= n + 1; ++d)
      for (i64 b = 0; b < a; ++b)
        for (i64 c = 0; c < d; ++c)
          if (a * d - b * c == n) out.push_back({a, b, c, d});
  return out;
}

i64 sturm_bound(i64 N) {
  Rat idx(N);
  for (i64 l : prime_divisors(N)) idx *= Rat(l + 1, l);
  idx /= 6;
  Int c = idx.get_num() / idx.get_den();
  if (c * idx.get_den() != idx.get_num()) c += 1;
  return c.get_si();
}

RatMat ModularSymbols::relation_rows(int sign, i64 hecke_bound) const {
  const i64 N = p1_.level();
  const std::size_t n = p1_.size();
  RatMat rows;
  auto unit = [&]() { return RatVec(n, Rat(0)); };
  for (std::size_t i = 0; i < n; ++i) {
    auto [c, d] = p1_.rep(i);
    RatVec two = unit();
    two[i] += 1;
    two[p1_.index(d, -c)] += 1;
    rows.push_back(std::move(two));
    RatVec three = unit();
    three[i] += 1;
    three[p1_.index(d, -c - d)] += 1;
    three[p1_.index(-c - d, c)] += 1;
    rows.push_back(std::move(three));
    RatVec star = unit();
    star[i] += 1;
    star[p1_.index(-c, d)] -= sign;
    rows.push_back(std::move(star));
  }
  for (i64 l : primes_up_to(hecke_bound)) {
    if (N % l == 0) continue;
    auto hs = heilbronn_matrices(l);
    i64 al = compute_ap(E_, l);
    for (std::size_t i = 0; i < n; ++i) {
      auto [u, v] = p1_.rep(i);
      RatVec row = unit();
      for (auto& h : hs) row[p1_.index(u * h[0] + v * h[2], u * h[1] + v * h[3])] += 1;
      row[i] -= al;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

ModularSymbols::ModularSymbols(const CurveData& E) : E_(E), p1_(E.N), sturm_(sturm_bound(E.N)) {
  for (int sign : {1, -1}) {
    auto rows = relation_rows(sign, sturm_);
    auto ker = kernel(rows, p1_.size());
    if (ker.size() != 1)
      throw NormalizationAmbiguous("eigen-dual of sign " + std::to_string(sign) + " has dimension " +
                                   std::to_string(ker.size()));
    // Scale to a primitive integral vector.
    RatVec v = ker[0];
    Int den = 1, g = 0;
    for (auto& x : v) den = lcm(den, Int(x.get_den()));
    for (auto& x : v) {
      x *= den;
      g = gcd(g, Int(x.get_num()));
    }
    for (auto& x : v) x /= g;
    (sign > 0 ? plus_ : minus_) = v;
  }
  pin_scale(1);
  pin_scale(-1);
}

std::vector<std::pair<int, int>> ModularSymbols::path(i64 a, i64 m) const {
  // Convergent denominators q_j of a/m; {inf, a/m} = sum_j ((-1)^(j-1) q_j : q_(j-1)).
  std::vector<std::pair<int, int>> out;
  i64 num = a, den = m;
  i64 qm2 = 1, qm1 = 0;  // q_(j-2), q_(j-1)
  int j = 0;
  while (true) {
    i64 fl = num >= 0 ? num / den : -((-num + den - 1) / den);
    i64 qj = fl * qm1 + qm2;
    i64 sgn = (j % 2 == 0) ? -1 : 1;
    out.emplace_back(p1_.index(sgn * qj, qm1), 1);
    qm2 = qm1;
    qm1 = qj;
    i64 rem = num - fl * den;
    if (rem == 0) break;
    num = den;
    den = rem;
    ++j;
  }
  return out;
}

Rat ModularSymbols::raw(int sign, i64 a, i64 m) const {
  const RatVec& v = dual(sign);
  Rat s = 0;
  for (auto& [idx, c] : path(a, m)) s += c * v[idx];
  return s;
}

ModSymValue ModularSymbols::value(i64 a, i64 m) const {
  if (m <= 0 || gcd(a, m) != 1) throw std::invalid_argument("modular symbol: need gcd(a, m) = 1");
  return {scale_plus_ * raw(1, a, m), scale_minus_ * raw(-1, a, m)};
}

void ModularSymbols::pin_scale(int sign) {
  const int digits = 40;
  PeriodPair P = period_lattice(E_, digits);
  Real tol = pow10(-25);
  for (i64 m = 1; m <= 60; ++m) {
    if (!lambda_supported(E_, m)) continue;
    for (i64 a = 0; a < m || (m == 1 && a == 0); ++a) {
      if (gcd(a, m) != 1) continue;
      Rat r = raw(sign, a, m);
      if (r == 0) continue;
      Complex lam = lambda_value(E_, a, m, digits);
      Real x = sign > 0 ? lam.re / P.omega_plus : lam.im / P.omega_minus;
      if (abs(x) < pow10(-20))
        throw NormalizationAmbiguous("symbol is nonzero but the period integral vanishes");
      Real c = x / to_real(r);
      auto rec = reconstruct(c, Int(1000000), tol);
      if (!rec) throw ConvergenceFailure("normalising scalar is not a small rational");
      (sign > 0 ? scale_plus_ : scale_minus_) = *rec;
      (sign > 0 ? pin_plus_ : pin_minus_) = {a, m};
      return;
    }
  }
  throw NormalizationAmbiguous("every supported pinning value vanishes for m <= 60");
}

bool ModularSymbols::hecke_consistent(i64 bound) const {
  for (int sign : {1, -1}) {
    const RatVec& v = dual(sign);
    for (i64 l : primes_up_to(bound)) {
      if (E_.N % l == 0) continue;
      auto hs = heilbronn_matrices(l);
      i64 al = compute_ap(E_, l);
      for (std::size_t i = 0; i < p1_.size(); ++i) {
        auto [u, w] = p1_.rep(i);
        Rat s = -al * v[i];
        for (auto& h : hs) s += v[p1_.index(u * h[0] + w * h[2], u * h[1] + w * h[3])];
        if (s != 0) return false;
      }
    }
  }
  return true;
}

std::shared_ptr<const ModularSymbols> modular_symbols(const CurveData& E) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const ModularSymbols>> memo;
  std::string key = E.label + "/" + E.a1.get_str() + "," + E.a2.get_str() + "," + E.a3.get_str() +
                    "," + E.a4.get_str() + "," + E.a6.get_str();
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = memo[key];
  if (!slot) slot = std::make_shared<const ModularSymbols>(E);
  return slot;
}

ModSymValue modular_symbol_numeric(const CurveData& E, i64 a, i64 m, int digits) {
  PeriodPair P = period_lattice(E, digits);
  Complex lam = lambda_value(E, a, m, digits);
  Int bound = 2 * torsion_order(E);
  Real tol = pow10(-(digits / 2));
  auto plus = reconstruct(lam.re / P.omega_plus, bound, tol);
  auto minus = reconstruct(lam.im / P.omega_minus, bound, tol);
  if (!plus || !minus)
    throw ConvergenceFailure("no rational with denominator <= " + bound.get_str() + " at " +
                             std::to_string(a) + "/" + std::to_string(m));
  return {*plus, *minus};
}

ModSymValue modular_symbol_pair(const CurveData& E, i64 a, i64 m, const ModSymOptions& opt) {
  if (!opt.exact && !opt.numeric) throw ConfigInvalid("both modular symbol paths disabled");
  std::optional<ModSymValue> ex, nu;
  if (opt.exact) ex = modular_symbols(E)->value(a, m);
  if (opt.numeric) nu = modular_symbol_numeric(E, a, m, opt.digits);
  if (ex && nu && !(*ex == *nu))
    throw ConvergenceFailure("exact and numeric modular symbols disagree at " + std::to_string(a) +
                             "/" + std::to_string(m));
  return ex ? *ex : *nu;
}

}  // namespace mtk
