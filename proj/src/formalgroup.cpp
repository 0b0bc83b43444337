#include "mtk/formalgroup.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <mutex>

#include "mtk/errors.hpp"
#include "mtk/otsuki.hpp"

namespace mtk {

namespace {

// Stand-in for "exact": far beyond any precision requested in practice.
constexpr int kExact = 1 << 20;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Padic one(i64 p) { return Padic(p, 0, 1, kExact); }

// Exact rational with `rel` digits of relative precision.
Padic rel_rat(const Rat& q, i64 p, int rel) {
  if (q == 0) return Padic::zero(p, kExact);
  return Padic::from_rat(q, p, val(q, p) + rel);
}

}  // namespace

const Int& ppow(i64 p, int e) {
  static std::mutex mu;
  static std::map<i64, std::vector<Int>> cache;
  if (e < 0) throw std::domain_error("ppow: negative exponent");
  std::lock_guard<std::mutex> lock(mu);
  auto& v = cache[p];
  if (v.empty()) v.push_back(1);
  while (static_cast<int>(v.size()) <= e) v.push_back(v.back() * static_cast<long>(p));
  return v[e];
}

Padic::Padic(i64 p, int v, Int u, int rel) : p_(p), v_(v), u_(std::move(u)), rel_(rel) {
  if (rel_ <= 0) {
    u_ = 0;
    rel_ = 0;
    return;
  }
  // Fast path for exact values: skip reduction modulo a huge power.
  if (rel_ < kExact / 2) {
    u_ %= ppow(p_, rel_);
    if (u_ < 0) u_ += ppow(p_, rel_);
  }
  if (u_ == 0) {
    v_ += rel_;
    rel_ = 0;
    return;
  }
  while (mpz_divisible_ui_p(u_.get_mpz_t(), static_cast<unsigned long>(p_))) {
    u_ /= static_cast<long>(p_);
    ++v_;
    --rel_;
  }
  if (rel_ <= 0) {
    u_ = 0;
    rel_ = 0;
  }
}

Padic Padic::zero(i64 p, int abs_prec) {
  Padic z;
  z.p_ = p;
  z.v_ = abs_prec;
  return z;
}

Padic Padic::from_rat(const Rat& q, i64 p, int abs_prec) {
  if (q == 0) return zero(p, abs_prec);
  int v = val(q, p);
  if (abs_prec <= v) return zero(p, abs_prec);
  Rat unit = q;
  if (v > 0) unit /= Rat(ppow(p, v));
  if (v < 0) unit *= Rat(ppow(p, -v));
  int rel = abs_prec - v;
  if (rel >= kExact / 2) {
    if (unit.get_den() != 1) throw PrecisionUnsupported("exact p-adic value needs an integral unit");
    return Padic(p, v, unit.get_num(), rel);
  }
  return Padic(p, v, reduce_mod(unit, ppow(p, rel)), rel);
}

Rat Padic::to_rat() const {
  if (is_zero()) return 0;
  Rat r(u_);
  if (v_ >= 0) return r * Rat(ppow(p_, v_));
  return r / Rat(ppow(p_, -v_));
}

Padic Padic::operator-() const {
  if (is_zero()) return *this;
  return Padic(p_, v_, -u_, rel_);
}

Padic Padic::operator+(const Padic& o) const {
  int A = std::min(abs_precision(), o.abs_precision());
  int vmin = std::min(v_, o.v_);
  if (A <= vmin) return zero(p_, A);
  Int s = 0;
  if (!is_zero()) s += u_ * ppow(p_, v_ - vmin);
  if (!o.is_zero()) s += o.u_ * ppow(p_, o.v_ - vmin);
  return Padic(p_, vmin, s, A - vmin);
}

Padic Padic::operator*(const Padic& o) const {
  if (is_zero() || o.is_zero()) return zero(p_, v_ + o.v_);
  return Padic(p_, v_ + o.v_, u_ * o.u_, std::min(rel_, o.rel_));
}

Padic Padic::operator/(const Padic& o) const {
  if (o.is_zero()) throw PrecisionUnsupported("division by a p-adic zero at the tracked precision");
  if (is_zero()) return zero(p_, v_ - o.v_);
  int rel = std::min(rel_, o.rel_);
  Int inv;
  if (rel >= kExact / 2) {
    if (o.u_ != 1 && o.u_ != -1) throw PrecisionUnsupported("exact division by a non-trivial unit");
    inv = o.u_;
  } else {
    mpz_invert(inv.get_mpz_t(), o.u_.get_mpz_t(), ppow(p_, rel).get_mpz_t());
  }
  return Padic(p_, v_ - o.v_, u_ * inv, rel);
}

bool Padic::agrees(const Padic& o) const { return (*this - o).is_zero(); }

int PadicSeries::guaranteed_precision() const {
  int g = kExact;
  for (std::size_t i = 1; i < c.size(); ++i) g = std::min(g, c[i].abs_precision());
  return g;
}

PadicSeries series_from_rats(const std::vector<Rat>& v, i64 p, int abs_prec) {
  PadicSeries s;
  s.p = p;
  s.k = abs_prec;
  for (const auto& q : v) s.c.push_back(Padic::from_rat(q, p, abs_prec));
  return s;
}

PadicSeries mul(const PadicSeries& a, const PadicSeries& b, int D) {
  PadicSeries out;
  out.p = a.p;
  out.k = std::min(a.k, b.k);
  out.c.assign(D + 1, Padic::zero(a.p, kExact));
  for (int i = 0; i <= std::min(D, a.degree()); ++i) {
    if (a.c[i].is_zero() && a.c[i].valuation() >= kExact / 2) continue;
    for (int j = 0; i + j <= D && j <= b.degree(); ++j) {
      if (b.c[j].is_zero() && b.c[j].valuation() >= kExact / 2) continue;
      out.c[i + j] += a.c[i] * b.c[j];
    }
  }
  return out;
}

PadicSeries compose(const PadicSeries& f, const PadicSeries& g, int D) {
  if (!g.c.empty() && !g.c[0].is_zero()) throw ConfigInvalid("compose: inner series must vanish at 0");
  PadicSeries out;
  out.p = f.p;
  out.k = std::min(f.k, g.k);
  out.c.assign(D + 1, Padic::zero(f.p, kExact));
  out.c[0] = f.c.empty() ? Padic::zero(f.p, kExact) : f.c[0];
  PadicSeries power;
  power.p = f.p;
  power.c = {one(f.p)};
  for (int n = 1; n <= std::min(D, f.degree()); ++n) {
    power = mul(power, g, D);
    if (f.c[n].is_zero() && f.c[n].valuation() >= kExact / 2) continue;
    for (int i = n; i <= D; ++i) out.c[i] += f.c[n] * power.c[i];
  }
  return out;
}

PadicSeries reversion(const PadicSeries& f, int D) {
  i64 p = f.p;
  if (f.degree() < 1 || f.c[1].is_zero()) throw ConfigInvalid("reversion needs a nonzero linear term");
  // s = X / f(X) as a series with s_0 = 1/f_1.
  std::vector<Padic> q(D + 1, Padic::zero(p, kExact));
  for (int i = 0; i <= D && i + 1 <= f.degree(); ++i) q[i] = f.c[i + 1];
  PadicSeries s;
  s.p = p;
  s.k = f.k;
  s.c.assign(D + 1, Padic::zero(p, kExact));
  s.c[0] = one(p) / q[0];
  for (int n = 1; n <= D; ++n) {
    Padic acc = Padic::zero(p, kExact);
    for (int i = 1; i <= n; ++i) acc += q[i] * s.c[n - i];
    s.c[n] = -acc / q[0];
  }
  PadicSeries out;
  out.p = p;
  out.k = f.k;
  out.c.assign(D + 1, Padic::zero(p, kExact));
  PadicSeries power;
  power.p = p;
  power.c = {one(p)};
  for (int n = 1; n <= D; ++n) {
    power = mul(power, s, D - 1);
    out.c[n] = power.c[n - 1] / Padic::from_int(n, p, kExact);
  }
  return out;
}

PadicSeries frobenius_hat(const PadicSeries& f, int D) {
  PadicSeries out;
  out.p = f.p;
  out.k = f.k;
  out.c.assign(D + 1, Padic::zero(f.p, kExact));
  for (int i = 0; i <= f.degree() && i * f.p <= D; ++i) out.c[i * f.p] = f.c[i];
  return out;
}

namespace {

using IntSeries = std::vector<Int>;

IntSeries int_mul(const IntSeries& a, const IntSeries& b, int M) {
  IntSeries c(M + 1, 0);
  for (int i = 0; i <= M && i < static_cast<int>(a.size()); ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j <= M && j < static_cast<int>(b.size()); ++j)
      if (b[j] != 0) c[i + j] += a[i] * b[j];
  }
  return c;
}

// 1/u for u_0 = 1.
IntSeries int_inverse(const IntSeries& u, int M) {
  IntSeries r(M + 1, 0);
  r[0] = 1;
  for (int n = 1; n <= M; ++n) {
    Int acc = 0;
    for (int i = 1; i <= n && i < static_cast<int>(u.size()); ++i) acc += u[i] * r[n - i];
    r[n] = -acc;
  }
  return r;
}

std::vector<Rat> rat_divide(const std::vector<Rat>& num, const std::vector<Rat>& den, int M) {
  std::vector<Rat> q(M + 1, Rat(0));
  for (int n = 0; n <= M; ++n) {
    Rat acc = num[n];
    for (int i = 1; i <= n; ++i) acc -= den[i] * q[n - i];
    q[n] = acc / den[0];
  }
  return q;
}

// inv = t^3 / w(t) where w = -1/y is the standard formal parameter series.
IntSeries inverse_w(const CurveData& E, int M) {
  int W = M + 3;
  IntSeries w(W + 1, 0);
  w[3] = 1;
  for (int iter = 0; iter <= W; ++iter) {
    IntSeries w2 = int_mul(w, w, W), w3 = int_mul(w2, w, W);
    IntSeries next(W + 1, 0);
    next[3] = 1;
    for (int n = 0; n <= W; ++n) {
      if (n >= 1) next[n] += E.a1 * w[n - 1] + E.a4 * w2[n - 1];
      if (n >= 2) next[n] += E.a2 * w[n - 2];
      next[n] += E.a3 * w2[n] + E.a6 * w3[n];
    }
    if (next == w) break;
    w = std::move(next);
  }
  IntSeries u(M + 1, 0);
  for (int n = 0; n <= M; ++n) u[n] = w[n + 3];
  return int_inverse(u, M);
}

std::vector<Rat> to_rats(const IntSeries& s) { return std::vector<Rat>(s.begin(), s.end()); }

}  // namespace

std::vector<Rat> invariant_differential(const CurveData& E, int D) {
  auto inv = to_rats(inverse_w(E, D + 1));
  std::vector<Rat> num(D + 1), den(D + 1);
  for (int n = 0; n <= D; ++n) {
    num[n] = -2 * inv[n] + (n >= 1 ? Rat(n) * inv[n] : Rat(0));
    den[n] = -2 * inv[n] + (n >= 1 ? Rat(E.a1) * inv[n - 1] : Rat(0)) + (n == 3 ? Rat(E.a3) : Rat(0));
  }
  return rat_divide(num, den, D);
}

std::vector<Rat> invariant_differential_alt(const CurveData& E, int D) {
  auto invI = inverse_w(E, D + 1);
  auto inv = to_rats(invI);
  auto sq = to_rats(int_mul(invI, invI, D + 1));
  std::vector<Rat> num(D + 1), den(D + 1);
  for (int n = 0; n <= D; ++n) {
    num[n] = 3 * inv[n] - Rat(n) * inv[n];
    den[n] = 3 * sq[n] + (n >= 2 ? Rat(2 * E.a2) * inv[n - 2] : Rat(0)) + (n == 4 ? Rat(E.a4) : Rat(0)) +
             (n >= 1 ? Rat(E.a1) * inv[n - 1] : Rat(0));
  }
  return rat_divide(num, den, D);
}

std::vector<Rat> formal_log_exact(const CurveData& E, int D) {
  static std::mutex mu;
  static std::map<std::pair<std::string, int>, std::vector<Rat>> memo;
  auto key = std::make_pair(E.label + ":" + E.a1.get_str() + "," + E.a2.get_str() + "," + E.a3.get_str() + "," +
                                E.a4.get_str() + "," + E.a6.get_str(),
                            D);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  auto w = invariant_differential(E, D - 1);
  std::vector<Rat> log(D + 1, Rat(0));
  for (int n = 1; n <= D; ++n) log[n] = w[n - 1] / n;
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(key, log);
  return log;
}

PadicSeries formal_log(const CurveData& E, i64 p, int D, int k) {
  if (D < 2) throw PrecisionUnsupported("formal_log needs degree at least 2");
  if (k < 1) throw PrecisionUnsupported("precision must be positive");
  auto s = series_from_rats(formal_log_exact(E, D), p, k);
  s.k = k;
  return s;
}

PadicSeries formal_exp(const CurveData& E, i64 p, int D, int k) {
  if (D < 2) throw PrecisionUnsupported("formal_exp needs degree at least 2");
  if (k < 1) throw PrecisionUnsupported("precision must be positive");
  // Denominators of exp are bounded by ord_p(n!) < n/(p-1); lose at most that plus the reversion divisions.
  int work = k + 2 * D + 8;
  PadicSeries log;
  log.p = p;
  log.k = work;
  for (const auto& q : formal_log_exact(E, D)) log.c.push_back(rel_rat(q, p, work));
  auto e = reversion(log, D);
  e.k = k;
  if (e.guaranteed_precision() < k) throw PrecisionUnsupported("exp lost too many digits");
  return e;
}

std::vector<Rat> honda_operator(const std::vector<Rat>& f, i64 p, i64 a_p, int one_n, int D) {
  std::vector<Rat> out(D + 1, Rat(0));
  for (int n = 1; n <= D && n < static_cast<int>(f.size()); ++n) {
    out[n] = Rat(p) * f[n];
    if (n % p == 0) out[n] -= Rat(a_p) * f[n / p];
    if (n % (p * p) == 0) out[n] += Rat(one_n) * f[n / (p * p)];
  }
  return out;
}

CheckReport honda_type_check(const CurveData& E, i64 p, int D, int k) {
  auto t0 = Clock::now();
  CheckReport rep;
  rep.check_id = "formalgroup.honda_type";
  rep.parameters = {{"curve", E.label}, {"p", p}, {"D", D}, {"k", k}};
  if (p <= 3 || !is_prime(p)) throw HypothesisViolated("Honda-type check needs a prime p > 3");
  i64 ap = compute_ap(E, p);
  int on = one_N(E, p);
  auto f = formal_log_exact(E, D);
  auto h = honda_operator(f, p, ap, on, D);
  int min_val = kInfVal, first_bad = -1, bad = 0;
  bool integral_ib = true;
  for (int n = 1; n <= D; ++n) {
    if (val(Rat(n) * f[n], p) < 0) integral_ib = false;
    int v = val(h[n], p);
    min_val = std::min(min_val, v);
    if (v < 1) {
      ++bad;
      if (first_bad < 0) first_bad = n;
    }
  }
  rep.verdict = (bad == 0 && integral_ib && f[1] == 1) ? Verdict::Pass : Verdict::Fail;
  rep.witnesses["type_polynomial"] = std::to_string(p) + " - (" + std::to_string(ap) + ")X + " +
                                     std::to_string(on) + "X^2";
  rep.witnesses["min_valuation"] = min_val >= kInfVal ? Json("inf") : Json(min_val);
  rep.witnesses["first_failing_degree"] = first_bad;
  rep.witnesses["i_b_i_integral"] = integral_ib;
  rep.note = "coefficients computed exactly over Q";
  rep.assumptions.push_back("model minimal at p");
  rep.seconds = since(t0);
  return rep;
}

Padic teichmuller(i64 j, i64 p, int k) {
  Int r, base = mod(j, p);
  Int e = ppow(p, k - 1);
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), ppow(p, k).get_mpz_t());
  return Padic::from_int(r, p, k);
}

std::vector<Padic> binomials(const Padic& delta, int D) {
  i64 p = delta.prime();
  std::vector<Padic> b(D + 1, one(p));
  for (int l = 1; l <= D; ++l)
    b[l] = b[l - 1] * (delta - Padic::from_int(l - 1, p, kExact)) / Padic::from_int(l, p, kExact);
  return b;
}

PadicSeries g_series(const CurveData& E, i64 p, int s, int D, int k) {
  if (D < 2 || k < 1) throw PrecisionUnsupported("degree and precision must be positive");
  if (mod(s, p - 1) == mod(1, p - 1)) throw HypothesisViolated("chi must differ from the Teichmuller character");
  const int imax = D + k;
  const int K = k + 2 * D + imax + 8;
  auto c = c_coefficients(E, p, imax + 2);
  int inv_exp = static_cast<int>(mod(-s, p - 1));
  std::vector<Padic> tau(p), chi_inv(p);
  for (i64 j = 1; j < p; ++j) {
    tau[j] = teichmuller(j, p, K);
    chi_inv[j] = one(p);
    for (int e = 0; e < inv_exp; ++e) chi_inv[j] *= tau[j];
  }
  std::vector<Padic> beta(D + 1, Padic::zero(p, kExact));
  for (int i = 0; i <= imax; ++i) {
    if (c.c(i + 1) == 0) continue;
    Padic ci = rel_rat(c.c(i + 1), p, K);
    Padic pi = Padic(p, i, 1, kExact);
    std::vector<Padic> inner(D + 1, Padic::zero(p, kExact));
    for (i64 j = 1; j < p; ++j) {
      auto b = binomials(pi * tau[j], D);
      for (int l = 1; l <= D; ++l) inner[l] += chi_inv[j] * b[l];
    }
    for (int l = 1; l <= D; ++l) beta[l] += ci * inner[l];
  }
  auto log = formal_log_exact(E, D);
  Padic pm1 = Padic::from_int(p - 1, p, kExact);
  PadicSeries g;
  g.p = p;
  g.k = k;
  g.c.assign(D + 1, Padic::zero(p, kExact));
  for (int l = 1; l <= D; ++l) {
    // Terms with i > imax have valuation at least i - l > k.
    Padic tail = Padic::zero(p, imax + 1 - l);
    g.c[l] = rel_rat(log[l], p, K) + beta[l] / pm1 + tail;
  }
  return g;
}

namespace {

enum class Tri { Yes, No, Unknown };

// Certified "valuation >= bound".
Tri val_at_least(const Padic& x, int bound) {
  if (!x.is_zero()) return x.valuation() >= bound ? Tri::Yes : Tri::No;
  return x.abs_precision() >= bound ? Tri::Yes : Tri::Unknown;
}

void fold(Verdict& v, Tri t) {
  if (t == Tri::No) v = Verdict::Fail;
  else if (t == Tri::Unknown && v == Verdict::Pass) v = Verdict::Undecided;
}

PadicSeries honda_operator_padic(const PadicSeries& g, i64 ap, int on, int D) {
  i64 p = g.p;
  auto f1 = frobenius_hat(g, D), f2 = frobenius_hat(f1, D);
  PadicSeries out;
  out.p = p;
  out.c.assign(D + 1, Padic::zero(p, kExact));
  Padic P = Padic::from_int(p, p, kExact), A = Padic::from_int(ap, p, kExact), O = Padic::from_int(on, p, kExact);
  for (int n = 0; n <= D; ++n) out.c[n] = P * g.c[n] - A * f1.c[n] + O * f2.c[n];
  return out;
}

}  // namespace

CheckReport g_and_h_check(const CurveData& E, i64 p, int s, int D, int k) {
  auto t0 = Clock::now();
  CheckReport rep;
  rep.check_id = "formalgroup.g_and_h";
  rep.parameters = {{"curve", E.label}, {"p", p}, {"s", s}, {"d", 1}, {"D", D}, {"k", k}};
  if (p <= 3 || !is_prime(p)) throw HypothesisViolated("g/h check needs a prime p > 3");
  auto g = g_series(E, p, s, D, k);
  Verdict v = Verdict::Pass;

  Tri lin = g.c[1].agrees(one(p)) && g.c[1].abs_precision() >= k ? Tri::Yes : Tri::No;
  fold(v, lin);
  rep.witnesses["linear_coefficient_is_1"] = lin == Tri::Yes;

  i64 ap = compute_ap(E, p);
  auto op = honda_operator_padic(g, ap, one_N(E, p), D);
  int honda_bad = 0, honda_unknown = 0;
  for (int n = 1; n <= D; ++n) {
    Tri t = val_at_least(op.c[n], 1);
    honda_bad += t == Tri::No;
    honda_unknown += t == Tri::Unknown;
    fold(v, t);
  }
  rep.witnesses["honda_failures"] = honda_bad;
  rep.witnesses["honda_undecided"] = honda_unknown;

  auto ex = formal_exp(E, p, D, k + D);
  auto h = compose(ex, g, D);
  int h_bad = 0, h_unknown = 0, h_min = kExact;
  for (int n = 1; n <= D; ++n) {
    Tri t = val_at_least(h.c[n], 0);
    h_bad += t == Tri::No;
    h_unknown += t == Tri::Unknown;
    if (!h.c[n].is_zero()) h_min = std::min(h_min, h.c[n].valuation());
    fold(v, t);
  }
  rep.witnesses["h_nonintegral"] = h_bad;
  rep.witnesses["h_undecided"] = h_unknown;
  rep.witnesses["h_min_valuation"] = h_min;
  rep.witnesses["h_certified_precision"] = h.guaranteed_precision();
  rep.witnesses["g_certified_precision"] = g.guaranteed_precision();
  rep.verdict = v;
  rep.seconds = since(t0);
  return rep;
}

PadicSeries multiplicative_comparison(const CurveData& E, i64 p, int D, int k) {
  int work = k + 2 * D + 8;
  PadicSeries log;
  log.p = p;
  log.k = work;
  for (const auto& q : formal_log_exact(E, D)) log.c.push_back(rel_rat(q, p, work));
  PadicSeries e;
  e.p = p;
  e.k = k;
  e.c.assign(D + 1, Padic::zero(p, kExact));
  Int fact = 1;
  for (int n = 1; n <= D; ++n) {
    fact *= n;
    e.c[n] = rel_rat(make_rat(Int(1), fact), p, work);
  }
  auto out = compose(e, log, D);
  out.k = k;
  return out;
}

}  // namespace mtk
