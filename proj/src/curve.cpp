#include "mtk/curve.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>

#include "mtk/cache.hpp"
#include "mtk/errors.hpp"

namespace mtk {

const char* kind_name(ReductionKind k) {
  switch (k) {
    case ReductionKind::Good: return "good";
    case ReductionKind::SplitMultiplicative: return "split_multiplicative";
    case ReductionKind::NonsplitMultiplicative: return "nonsplit_multiplicative";
    case ReductionKind::Additive: return "additive";
  }
  return "?";
}

ReductionKind parse_kind(const std::string& s) {
  if (s == "good") return ReductionKind::Good;
  if (s == "split_multiplicative" || s == "split") return ReductionKind::SplitMultiplicative;
  if (s == "nonsplit_multiplicative" || s == "nonsplit") return ReductionKind::NonsplitMultiplicative;
  if (s == "additive") return ReductionKind::Additive;
  throw ConfigInvalid("unknown reduction kind: " + s);
}

CurveData make_curve(const std::string& label, const std::vector<Int>& a, i64 N,
                     std::map<i64, ReductionOverride> overrides) {
  if (a.size() != 5) throw InvalidCurve("expected five a-invariants");
  if (N <= 0) throw InvalidCurve("conductor must be positive");
  CurveData E;
  E.label = label;
  E.a1 = a[0];
  E.a2 = a[1];
  E.a3 = a[2];
  E.a4 = a[3];
  E.a6 = a[4];
  E.N = N;
  E.overrides = std::move(overrides);
  E.b2 = E.a1 * E.a1 + 4 * E.a2;
  E.b4 = 2 * E.a4 + E.a1 * E.a3;
  E.b6 = E.a3 * E.a3 + 4 * E.a6;
  E.b8 = E.a1 * E.a1 * E.a6 + 4 * E.a2 * E.a6 - E.a1 * E.a3 * E.a4 + E.a2 * E.a3 * E.a3 -
         E.a4 * E.a4;
  E.c4 = E.b2 * E.b2 - 24 * E.b4;
  E.c6 = -E.b2 * E.b2 * E.b2 + 36 * E.b2 * E.b4 - 216 * E.b6;
  E.disc = -E.b2 * E.b2 * E.b8 - 8 * E.b4 * E.b4 * E.b4 - 27 * E.b6 * E.b6 +
           9 * E.b2 * E.b4 * E.b6;
  if (E.disc == 0) throw InvalidCurve("singular model: discriminant is zero");
  if (1728 * E.disc != E.c4 * E.c4 * E.c4 - E.c6 * E.c6)
    throw InvalidCurve("discriminant identity 1728 disc = c4^3 - c6^2 fails");
  E.j = make_rat(E.c4 * E.c4 * E.c4, E.disc);
  for (i64 ell : prime_divisors(N)) {
    if (E.disc % Int(static_cast<long>(ell)) != 0)
      throw InvalidCurve("prime " + std::to_string(ell) + " divides N but not the discriminant");
  }
  return E;
}

namespace {

Int json_int(const nlohmann::json& v) {
  if (v.is_string()) return Int(v.get<std::string>());
  if (v.is_number_integer()) return Int(std::to_string(v.get<long long>()));
  throw ConfigInvalid("expected an integer");
}

}  // namespace

CurveData parse_curve_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigInvalid(std::string("curve file: ") + e.what());
  }
  if (!j.contains("a") || !j.contains("N")) throw ConfigInvalid("curve file needs \"a\" and \"N\"");
  std::vector<Int> a;
  for (const auto& x : j.at("a")) a.push_back(json_int(x));
  std::map<i64, ReductionOverride> ov;
  if (j.contains("overrides")) {
    for (const auto& o : j.at("overrides")) {
      i64 ell = o.at("ell").get<i64>();
      ov[ell] = {parse_kind(o.at("kind").get<std::string>()), o.value("tamagawa", 0)};
    }
  }
  return make_curve(j.value("label", std::string("curve")), a, j.at("N").get<i64>(), ov);
}

CurveData load_curve(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open curve file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_curve_json(ss.str());
}

std::string curve_json(const CurveData& E) {
  nlohmann::ordered_json j;
  j["label"] = E.label;
  j["a"] = {E.a1.get_str(), E.a2.get_str(), E.a3.get_str(), E.a4.get_str(), E.a6.get_str()};
  j["N"] = E.N;
  auto ov = nlohmann::ordered_json::array();
  for (const auto& [ell, o] : E.overrides)
    ov.push_back({{"ell", ell}, {"kind", kind_name(o.kind)}, {"tamagawa", o.tamagawa}});
  j["overrides"] = ov;
  return j.dump();
}

namespace {

i64 red(const Int& x, i64 ell) {
  Int r = x % Int(static_cast<long>(ell));
  if (r < 0) r += ell;
  return r.get_si();
}

}  // namespace

i64 count_points(const CurveData& E, i64 ell) {
  i64 a1 = red(E.a1, ell), a2 = red(E.a2, ell), a3 = red(E.a3, ell), a4 = red(E.a4, ell),
      a6 = red(E.a6, ell);
  i64 count = 1;
  if (ell == 2) {
    for (i64 x = 0; x < 2; ++x)
      for (i64 y = 0; y < 2; ++y)
        if ((y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6) % 2 == 0) ++count;
    return count;
  }
  // For odd ell, (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6 is a bijective change of y.
  i64 b2 = red(E.b2, ell), b4 = red(E.b4, ell), b6 = red(E.b6, ell);
  std::vector<int> roots(ell, 0);
  for (i64 s = 0; s < ell; ++s) ++roots[mulmod(s, s, ell)];
  for (i64 x = 0; x < ell; ++x) {
    i64 g = (mulmod(mulmod(4, x, ell), mulmod(x, x, ell), ell) + mulmod(b2, mulmod(x, x, ell), ell) +
             mulmod(2 * b4 % ell, x, ell) + b6) % ell;
    count += roots[g];
  }
  return count;
}

i64 count_points_character_sum(const CurveData& E, i64 ell) {
  if (ell == 2) throw std::domain_error("character sum count needs odd ell");
  Int L(static_cast<long>(ell));
  i64 s = 0;
  for (i64 x = 0; x < ell; ++x) {
    Int X(static_cast<long>(x));
    Int g = 4 * X * X * X + E.b2 * X * X + 2 * E.b4 * X + E.b6;
    s += legendre(red(g, ell), ell);
  }
  return ell + 1 + s;
}

ReductionInfo classify_reduction(const CurveData& E, i64 ell) {
  ReductionInfo info;
  info.prime = ell;
  int od = val(E.disc, ell);
  auto it = E.overrides.find(ell);
  if (it != E.overrides.end()) {
    info.kind = it->second.kind;
    info.tamagawa = it->second.tamagawa;
  } else if (od == 0) {
    info.kind = ReductionKind::Good;
  } else if (ell <= 3) {
    throw PrecisionUnsupported("bad prime " + std::to_string(ell) +
                               " needs a reduction override in the curve file");
  } else {
    int oc4 = val(E.c4, ell);
    if (oc4 >= 4 && od >= 12) throw NotMinimal("model is not minimal at " + std::to_string(ell));
    if (oc4 == 0) {
      bool split = legendre(red(-E.c6, ell), ell) == 1;
      info.kind = split ? ReductionKind::SplitMultiplicative : ReductionKind::NonsplitMultiplicative;
      info.tamagawa = split ? od : (od % 2 == 0 ? 2 : 1);
    } else {
      info.kind = ReductionKind::Additive;
      info.tamagawa = 0;
    }
  }
  switch (info.kind) {
    case ReductionKind::Good:
      info.a_ell = ell + 1 - count_points(E, ell);
      info.tamagawa = 1;
      break;
    case ReductionKind::SplitMultiplicative: info.a_ell = 1; break;
    case ReductionKind::NonsplitMultiplicative: info.a_ell = -1; break;
    case ReductionKind::Additive: info.a_ell = 0; break;
  }
  return info;
}

i64 compute_ap(const CurveData& E, i64 ell) { return classify_reduction(E, ell).a_ell; }

std::vector<i64> an_list(const CurveData& E, std::size_t n) {
  std::vector<i64> a(n + 1, 0);
  if (n == 0) return a;
  a[1] = 1;
  std::vector<i64> spf(n + 1, 0);
  for (std::size_t i = 2; i <= n; ++i) {
    if (spf[i]) continue;
    for (std::size_t j = i; j <= n; j += i)
      if (!spf[j]) spf[j] = static_cast<i64>(i);
  }
  for (std::size_t i = 2; i <= n; ++i) {
    i64 p = spf[i];
    std::size_t q = i;
    std::size_t pe = 1;
    while (q % p == 0) {
      q /= p;
      pe *= p;
    }
    if (q > 1) {
      a[i] = a[pe] * a[q];
    } else if (pe == static_cast<std::size_t>(p)) {
      a[i] = compute_ap(E, p);
    } else {
      a[i] = a[p] * a[pe / p] - (E.N % p == 0 ? 0 : p * a[pe / p / p]);
    }
  }
  return a;
}

std::vector<i64> an_list_cached(const CurveData& E, std::size_t n) {
  auto file = cache_dir() / ("an_" + E.label + ".txt");
  if (auto hit = read_sequence(file, n)) {
    std::vector<i64> a(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) a[i + 1] = (*hit)[i].get_si();
    return a;
  }
  auto a = an_list(E, n);
  std::vector<Int> vals;
  for (std::size_t i = 1; i <= n; ++i) vals.emplace_back(static_cast<long>(a[i]));
  write_sequence(file, vals);
  return a;
}

std::vector<Int> inverse_j_series(std::size_t n) {
  static std::mutex mu;
  static std::vector<Int> memo;
  std::lock_guard<std::mutex> lock(mu);
  if (memo.size() >= n) return {memo.begin(), memo.begin() + n};
  auto file = cache_dir() / "inverse_j_series.txt";
  if (n > 1) {
    if (auto hit = read_sequence(file, n - 1)) {
      memo.assign(1, Int(0));
      memo.insert(memo.end(), hit->begin(), hit->end());
      return memo;
    }
  }
  // Delta = q prod (1 - q^k)^24 and E4 = 1 + 240 sum sigma_3(k) q^k, both to q^(n-1).
  std::vector<Int> prod(n, Int(0));
  if (n > 0) prod[0] = 1;
  for (std::size_t k = 1; k < n; ++k)
    for (int rep = 0; rep < 24; ++rep)
      for (std::size_t i = n; i-- > k;) prod[i] -= prod[i - k];
  std::vector<Int> delta(n, Int(0));
  for (std::size_t i = 1; i < n; ++i) delta[i] = prod[i - 1];
  std::vector<Int> e4(n, Int(0));
  if (n > 0) e4[0] = 1;
  for (std::size_t k = 1; k < n; ++k) {
    Int s = 0;
    for (std::size_t d = 1; d <= k; ++d)
      if (k % d == 0) s += Int(static_cast<long>(d * d * d));
    e4[k] = 240 * s;
  }
  std::vector<Int> e4sq(n, Int(0)), e4cube(n, Int(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; i + k < n; ++k) e4sq[i + k] += e4[i] * e4[k];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; i + k < n; ++k) e4cube[i + k] += e4sq[i] * e4[k];
  // u = delta / e4cube; e4cube has constant term 1 so the division is integral.
  std::vector<Int> u(n, Int(0));
  for (std::size_t i = 0; i < n; ++i) {
    Int s = delta[i];
    for (std::size_t k = 1; k <= i; ++k) s -= e4cube[k] * u[i - k];
    u[i] = s;
  }
  if (n > 1) write_sequence(file, std::vector<Int>(u.begin() + 1, u.end()));
  memo = u;
  return u;
}

namespace {

constexpr int kTateTermBudget = 400;

}  // namespace

TatePeriod tate_period(const CurveData& E, i64 ell, int k) {
  auto info = classify_reduction(E, ell);
  if (info.kind != ReductionKind::SplitMultiplicative)
    throw HypothesisViolated("tate_period needs split multiplicative reduction");
  if (k < 1) throw PrecisionUnsupported("tate_period needs k >= 1");
  TatePeriod t;
  t.ell = ell;
  t.k = k;
  Rat J = 1 / E.j;
  t.tam = val(J, ell);
  if (t.tam != info.tamagawa) throw InvalidCurve("ord(1/j) differs from the Tamagawa number");
  int prec = k + t.tam;
  int terms = (prec + t.tam - 1) / t.tam;  // powers J^i with i * tam < prec matter
  if (terms > kTateTermBudget) throw PrecisionUnsupported("tate_period: term budget exceeded");
  t.terms_used = terms;
  std::size_t n = static_cast<std::size_t>(terms) + 1;
  auto u = inverse_j_series(n);
  // Compositional inverse r of u, as an integer series: u(r(J)) = J.
  std::vector<Int> r(n, Int(0));
  r[1] = 1;
  for (std::size_t deg = 2; deg < n; ++deg) {
    // Coefficient of J^deg in u(r) with current r (r[deg] = 0) must vanish after adding r[deg].
    std::vector<Int> pw(n, Int(0)), acc(n, Int(0));
    pw = r;  // r^1
    for (std::size_t i = 1; i < n; ++i) {
      if (i > 1) {
        std::vector<Int> nxt(n, Int(0));
        for (std::size_t a = 1; a < n; ++a)
          for (std::size_t b = 1; a + b < n; ++b) nxt[a + b] += pw[a] * r[b];
        pw = nxt;
      }
      for (std::size_t d = 0; d < n; ++d) acc[d] += u[i] * pw[d];
    }
    r[deg] = -acc[deg];
  }
  Int L(static_cast<long>(ell));
  Int M = ipow(L, static_cast<unsigned>(prec));
  Int Jm = reduce_mod(J, M);
  Int q = 0, pw = 1;
  for (std::size_t i = 1; i < n; ++i) {
    pw = (pw * Jm) % M;
    q = (q + r[i] * pw) % M;
  }
  if (q < 0) q += M;
  t.q_mod = q;
  if (val(q, ell) != t.tam) throw PrecisionUnsupported("tate_period: valuation not certified");
  Int lt = ipow(L, static_cast<unsigned>(t.tam));
  t.unit = (q / lt) % ipow(L, static_cast<unsigned>(k));
  return t;
}

bool tate_period_roundtrip(const CurveData& E, const TatePeriod& t) {
  int prec = t.k + t.tam;
  Int L(static_cast<long>(t.ell));
  Int M = ipow(L, static_cast<unsigned>(prec));
  std::size_t n = static_cast<std::size_t>((prec + t.tam - 1) / t.tam) + 1;
  auto u = inverse_j_series(n);
  Int s = 0, pw = 1;
  for (std::size_t i = 1; i < n; ++i) {
    pw = (pw * t.q_mod) % M;
    s = (s + u[i] * pw) % M;
  }
  if (s < 0) s += M;
  return s == reduce_mod(1 / E.j, M) && val(t.q_mod, t.ell) + val(E.j, t.ell) == 0;
}

namespace {

struct Pt {
  bool inf = false;
  Rat x, y;
};

Pt add_pts(const Pt& P, const Pt& Q, const Rat& A) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  Rat lam;
  if (P.x == Q.x) {
    if (P.y + Q.y == 0) return Pt{true, 0, 0};
    lam = (3 * P.x * P.x + A) / (2 * P.y);
  } else {
    lam = (Q.y - P.y) / (Q.x - P.x);
  }
  Pt R;
  R.x = lam * lam - P.x - Q.x;
  R.y = lam * (P.x - R.x) - P.y;
  return R;
}

}  // namespace

namespace {
int torsion_order_uncached(const CurveData& E);
}

int torsion_order(const CurveData& E) {
  static std::mutex mu;
  static std::map<std::string, int> memo;
  std::string key = E.c4.get_str() + "," + E.c6.get_str();
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  int t = torsion_order_uncached(E);
  std::lock_guard<std::mutex> lock(mu);
  memo[key] = t;
  return t;
}

namespace {
int torsion_order_uncached(const CurveData& E) {
  // Short model Y^2 = X^3 - 27 c4 X - 54 c6 over Z, isomorphic over Q.
  Int A = -27 * E.c4, B = -54 * E.c6;
  Int D = 4 * A * A * A + 27 * B * B;
  Int absD = abs(D);
  // Candidates Y with Y^2 | D, from the factorisation of |D|.
  std::vector<Int> ys{Int(0)};
  {
    std::vector<std::pair<Int, int>> fac;
    Int n = absD;
    for (Int p = 2; p * p <= n; ++p) {
      if (n % p != 0) continue;
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      fac.emplace_back(p, e);
    }
    if (n > 1) fac.emplace_back(n, 1);
    std::vector<Int> sq{Int(1)};
    for (auto& [p, e] : fac) {
      std::size_t sz = sq.size();
      Int pk = 1;
      for (int t = 1; 2 * t <= e; ++t) {
        pk *= p;
        for (std::size_t i = 0; i < sz; ++i) sq.push_back(sq[i] * pk);
      }
    }
    for (auto& y : sq) ys.push_back(y);
  }
  int count = 1;
  for (const Int& Y : ys) {
    // Integer roots of X^3 + A X + B - Y^2.
    Int c = B - Y * Y;
    std::vector<Int> xs;
    auto try_x = [&](const Int& X) {
      if (X * X * X + A * X + c == 0) xs.push_back(X);
    };
    if (c == 0) {
      try_x(0);
      Int r = sqrt(abs(A));
      for (Int cand : {r, Int(-r)})
        if (cand != 0 && cand * cand == -A) try_x(cand);
    } else {
      Int ac = abs(c);
      for (Int d = 1; d * d <= ac; ++d) {
        if (ac % d != 0) continue;
        for (Int cand : {d, Int(-d), Int(ac / d), Int(-(ac / d))}) try_x(cand);
      }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (const Int& X : xs) {
      for (int sgn : {1, -1}) {
        if (Y == 0 && sgn == -1) continue;
        Pt P{false, Rat(X), Rat(sgn * Y)};
        Pt Q = P;
        bool finite = false;
        for (int n = 1; n <= 12; ++n) {
          if (Q.inf) {
            finite = true;
            break;
          }
          if (Q.x.get_den() != 1 || Q.y.get_den() != 1) break;
          Q = add_pts(Q, P, Rat(A));
        }
        if (finite) ++count;
      }
    }
  }
  return count;
}
}  // namespace

int root_number(const CurveData& E) {
  int w = -1;
  for (auto& [ell, e] : factor(E.N)) {
    if (e != 1) throw HypothesisViolated("root number formula needs squarefree conductor");
    w *= static_cast<int>(-compute_ap(E, ell));
  }
  return w;
}

}  // namespace mtk
