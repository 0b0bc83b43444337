#include "mtk/groupring.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <set>
#include <shared_mutex>
#include <sstream>

#include "mtk/errors.hpp"
#include "mtk/finitefield.hpp"

namespace mtk {

int AbelianFieldSpec::element(i64 a) const {
  int idx = index_of[mod(a, m)];
  if (idx < 0) throw std::domain_error("element: residue is not a unit");
  return idx;
}

std::string AbelianFieldSpec::text() const {
  std::ostringstream s;
  s << "m=" << m << ";H=";
  for (std::size_t i = 0; i < H_gens.size(); ++i) s << (i ? "," : "") << H_gens[i];
  return s.str();
}

SpecPtr make_spec(i64 m, const std::vector<i64>& H_gens) {
  if (m < 1) throw ConfigInvalid("field spec needs m >= 1");
  auto s = std::make_shared<AbelianFieldSpec>();
  s->m = m;
  for (i64 h : H_gens) {
    if (gcd(mod(h, m), m) != 1 && m > 1) throw ConfigInvalid("H generator is not a unit mod m");
    s->H_gens.push_back(mod(h, m));
  }
  std::set<i64> H{mod(1, m)};
  std::vector<i64> frontier{mod(1, m)};
  while (!frontier.empty()) {
    i64 x = frontier.back();
    frontier.pop_back();
    for (i64 g : s->H_gens) {
      i64 y = mulmod(x, g, m);
      if (H.insert(y).second) frontier.push_back(y);
    }
  }
  s->H.assign(H.begin(), H.end());
  s->index_of.assign(m, -1);
  for (i64 a = 0; a < m; ++a) {
    if (m > 1 && gcd(a, m) != 1) continue;
    if (s->index_of[a] >= 0) continue;
    int idx = static_cast<int>(s->reps.size());
    s->reps.push_back(m == 1 ? 1 : a);
    for (i64 h : s->H) s->index_of[mulmod(a, h, m)] = idx;
  }
  int n = s->order();
  s->table.assign(n, std::vector<int>(n));
  s->inv.assign(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      s->table[i][j] = s->element(mulmod(s->reps[i], s->reps[j], m));
      if (s->table[i][j] == 0) s->inv[i] = j;
    }
  return s;
}

SpecPtr parse_spec(const std::string& text) {
  i64 m = 0;
  std::vector<i64> H;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';')) {
    auto eq = part.find('=');
    if (eq == std::string::npos) throw ConfigInvalid("field spec: expected key=value in " + text);
    std::string key = part.substr(0, eq), value = part.substr(eq + 1);
    if (key == "m") {
      m = std::stoll(value);
    } else if (key == "H") {
      std::stringstream hs(value);
      std::string h;
      while (std::getline(hs, h, ','))
        if (!h.empty()) H.push_back(std::stoll(h));
    } else {
      throw ConfigInvalid("field spec: unknown key " + key);
    }
  }
  if (m < 1) throw ConfigInvalid("field spec: missing m");
  return make_spec(m, H);
}

namespace {

// Restriction map G_from -> G_to; throws NotASubfield if the target field is not contained.
std::vector<int> restriction_map(const AbelianFieldSpec& from, const AbelianFieldSpec& to) {
  i64 L = lcm(from.m, to.m);
  for (i64 u = 0; u < L; ++u) {
    if (L > 1 && gcd(u, L) != 1) continue;
    if (from.index_of[mod(u, from.m)] == 0 && to.index_of[mod(u, to.m)] != 0)
      throw NotASubfield("field " + to.text() + " is not contained in " + from.text());
  }
  std::vector<int> map(from.order());
  for (int i = 0; i < from.order(); ++i) {
    i64 r = from.reps[i];
    i64 u = r;
    while (L > 1 && gcd(u, L) != 1) u += from.m;
    map[i] = to.index_of[mod(u, to.m)];
  }
  return map;
}

}  // namespace

bool same_field(const AbelianFieldSpec& a, const AbelianFieldSpec& b) {
  try {
    restriction_map(a, b);
    restriction_map(b, a);
    return true;
  } catch (const NotASubfield&) {
    return false;
  }
}

SpecPtr cyclic_subfield(i64 m, i64 degree) {
  i64 phi = euler_phi(m);
  if (phi % degree != 0) throw ConfigInvalid("degree does not divide phi(m)");
  // primitive root g; H generated by g^degree
  for (i64 g = 2; g < std::max<i64>(m, 3); ++g) {
    if (gcd(g, m) != 1) continue;
    if (mult_order(g, m) == phi) return make_spec(m, {powmod(g, degree, m)});
  }
  if (phi == 1) return make_spec(m);
  throw ConfigInvalid("(Z/m)^x is not cyclic");
}

GroupRingElement::GroupRingElement(SpecPtr spec, Ring ring)
    : spec_(std::move(spec)), ring_(ring), c_(spec_->order(), Rat(0)) {}

GroupRingElement GroupRingElement::one(SpecPtr spec) { return basis(std::move(spec), 0); }

GroupRingElement GroupRingElement::basis(SpecPtr spec, int index, const Rat& c) {
  GroupRingElement x(std::move(spec));
  x.c_[index] = c;
  return x;
}

GroupRingElement GroupRingElement::sigma(SpecPtr spec, i64 a) {
  int idx = spec->element(a);
  return basis(std::move(spec), idx);
}

GroupRingElement GroupRingElement::norm(SpecPtr spec, const std::vector<int>& subgroup) {
  GroupRingElement x(std::move(spec));
  for (int g : subgroup) x.c_[g] += 1;
  return x;
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& o) const {
  GroupRingElement r = *this;
  r += o;
  return r;
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement& o) const {
  GroupRingElement r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

GroupRingElement GroupRingElement::operator-() const {
  GroupRingElement r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

GroupRingElement GroupRingElement::operator*(const GroupRingElement& o) const {
  GroupRingElement r(spec_, ring_);
  int n = spec_->order();
  for (int i = 0; i < n; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < n; ++j)
      if (o.c_[j] != 0) r.c_[spec_->table[i][j]] += c_[i] * o.c_[j];
  }
  return r;
}

GroupRingElement GroupRingElement::operator*(const Rat& s) const {
  GroupRingElement r = *this;
  for (auto& c : r.c_) c *= s;
  return r;
}

bool GroupRingElement::operator==(const GroupRingElement& o) const { return c_ == o.c_; }

Rat GroupRingElement::aug() const {
  Rat s = 0;
  for (const auto& c : c_) s += c;
  return s;
}

GroupRingElement GroupRingElement::sharp() const {
  GroupRingElement r(spec_, ring_);
  for (int i = 0; i < spec_->order(); ++i) r.c_[spec_->inv[i]] = c_[i];
  return r;
}

GroupRingElement GroupRingElement::pow(int e) const {
  GroupRingElement r = one(spec_), b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

bool GroupRingElement::is_zero() const {
  for (const auto& c : c_)
    if (c != 0) return false;
  return true;
}

Int GroupRingElement::denominator() const {
  Int d = 1;
  for (const auto& c : c_) d = lcm(d, c.get_den());
  return d;
}

bool GroupRingElement::is_p_integral(i64 p) const {
  for (const auto& c : c_)
    if (c.get_den() % Int(static_cast<long>(p)) == 0) return false;
  return true;
}

GroupRingElement GroupRingElement::reduce(i64 p, int k) const {
  GroupRingElement r(spec_, Ring::padic(p, k));
  Int M = ipow(Int(static_cast<long>(p)), static_cast<unsigned>(k));
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = Rat(reduce_mod(c_[i], M));
  return r;
}

GroupRingElement GroupRingElement::project(const SpecPtr& sub) const {
  auto map = restriction_map(*spec_, *sub);
  GroupRingElement r(sub, ring_);
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[map[i]] += c_[i];
  return r;
}

GroupRingElement GroupRingElement::poly(const std::vector<Rat>& coeffs, const GroupRingElement& x) {
  GroupRingElement r(x.spec_), pw = one(x.spec_);
  for (const auto& c : coeffs) {
    if (c != 0) r += pw * c;
    pw = pw * x;
  }
  return r;
}

i64 tilde_sigma_residue(i64 a, i64 m) {
  i64 m2 = 1;
  for (auto& [q, e] : factor(m))
    if (a % q == 0) m2 *= ipow(q, e);
  i64 m1 = m / m2;
  if (m1 == 1) return mod(1, m);
  return crt(mod(a, m1), m1, 1, m2);
}

GroupRingElement tilde_sigma(i64 a, const SpecPtr& spec) {
  return GroupRingElement::sigma(spec, tilde_sigma_residue(a, spec->m));
}

Subgroup subgroup_generated(const AbelianFieldSpec& spec, const std::vector<int>& gens) {
  std::set<int> S{0};
  std::vector<int> frontier{0};
  while (!frontier.empty()) {
    int x = frontier.back();
    frontier.pop_back();
    for (int g : gens) {
      int y = spec.table[x][g];
      if (S.insert(y).second) frontier.push_back(y);
    }
  }
  return {S.begin(), S.end()};
}

std::vector<int> subgroup_generators(const AbelianFieldSpec& spec, const Subgroup& S) {
  std::vector<int> gens;
  std::set<int> cur{0};
  for (int g : S) {
    if (cur.count(g)) continue;
    gens.push_back(g);
    auto sg = subgroup_generated(spec, gens);
    cur = std::set<int>(sg.begin(), sg.end());
  }
  return gens;
}

Subgroup whole_group(const AbelianFieldSpec& spec) {
  Subgroup s(spec.order());
  for (int i = 0; i < spec.order(); ++i) s[i] = i;
  return s;
}

int element_order(const AbelianFieldSpec& spec, int g) {
  int o = 1, x = g;
  while (x != 0) {
    x = spec.table[x][g];
    ++o;
  }
  return o;
}

Subgroup inertia_group(const AbelianFieldSpec& spec, i64 ell) {
  i64 m = spec.m;
  i64 m1 = m;
  while (m1 % ell == 0) m1 /= ell;
  std::set<int> S;
  for (i64 b = 0; b < m; ++b) {
    if (m > 1 && gcd(b, m) != 1) continue;
    if (mod(b - 1, m1) == 0) S.insert(spec.element(b));
  }
  if (S.empty()) S.insert(0);
  return {S.begin(), S.end()};
}

Subgroup decomposition_group(const AbelianFieldSpec& spec, i64 ell) {
  auto I = inertia_group(spec, ell);
  std::vector<int> gens = subgroup_generators(spec, I);
  gens.push_back(spec.element(tilde_sigma_residue(ell, spec.m)));
  return subgroup_generated(spec, gens);
}

Subgroup image_subgroup(const AbelianFieldSpec& from, const Subgroup& S, const SpecPtr& to) {
  auto map = restriction_map(from, *to);
  std::set<int> img;
  for (int g : S) img.insert(map[g]);
  return {img.begin(), img.end()};
}

RatMat ideal_spanning_rows(const AbelianFieldSpec& spec, const std::vector<IdealFactor>& factors) {
  int n = spec.order();
  // products of (d - 1) over multisets of generators, one multiset per factor
  std::vector<RatVec> products{RatVec(n, Rat(0))};
  products[0][0] = 1;
  auto mul = [&](const RatVec& a, const RatVec& b) {
    RatVec c(n, Rat(0));
    for (int i = 0; i < n; ++i)
      if (a[i] != 0)
        for (int j = 0; j < n; ++j)
          if (b[j] != 0) c[spec.table[i][j]] += a[i] * b[j];
    return c;
  };
  for (const auto& f : factors) {
    if (f.exponent <= 0) continue;
    auto gens = subgroup_generators(spec, f.subgroup);
    if (gens.empty()) return {};  // I(trivial group) = 0
    std::vector<RatVec> aug_gens;
    for (int g : gens) {
      RatVec v(n, Rat(0));
      v[g] += 1;
      v[0] -= 1;
      aug_gens.push_back(v);
    }
    // multisets of size exponent, as nondecreasing index sequences
    std::vector<RatVec> pieces;
    std::function<void(int, int, RatVec)> rec = [&](int start, int left, RatVec acc) {
      if (left == 0) {
        pieces.push_back(acc);
        return;
      }
      for (int i = start; i < static_cast<int>(aug_gens.size()); ++i)
        rec(i, left - 1, mul(acc, aug_gens[i]));
    };
    RatVec unit(n, Rat(0));
    unit[0] = 1;
    rec(0, f.exponent, unit);
    std::vector<RatVec> next;
    for (const auto& a : products)
      for (const auto& b : pieces) next.push_back(mul(a, b));
    products = std::move(next);
  }
  std::set<std::vector<std::string>> seen;
  RatMat rows;
  for (const auto& pr : products)
    for (int g = 0; g < n; ++g) {
      RatVec shifted(n, Rat(0));
      for (int i = 0; i < n; ++i)
        if (pr[i] != 0) shifted[spec.table[g][i]] = pr[i];
      std::vector<std::string> key;
      for (auto& c : shifted) key.push_back(c.get_str());
      if (seen.insert(key).second) rows.push_back(shifted);
    }
  return rows;
}

MembershipResult ideal_member(const GroupRingElement& x, const std::vector<IdealFactor>& factors,
                              i64 p, int k0, int k_max) {
  if (!x.is_p_integral(p)) return {Membership::Out, k0};
  auto rows = ideal_spanning_rows(*x.spec(), factors);
  int used = k0;
  auto v = padic_span_member(rows, x.coeffs(), p, k0, k_max, &used);
  return {v, used};
}

AugOrderResult aug_order(const GroupRingElement& x, i64 p, int k0, int k_max, int cap) {
  AugOrderResult r;
  auto G = whole_group(*x.spec());
  for (int n = 1; n <= cap; ++n) {
    auto m = ideal_member(x, {{G, n}}, p, k0, k_max);
    r.k_used = std::max(r.k_used, m.k_used);
    if (m.verdict == Membership::Undecided) {
      r.undecided = true;
      return r;
    }
    if (m.verdict == Membership::Out) return r;
    r.order = n;
  }
  return r;
}

namespace {

CharacterTable build_characters(const AbelianFieldSpec& spec) {
  CharacterTable t;
  int n = spec.order();
  i64 E = 1;
  for (int g = 0; g < n; ++g) E = lcm(E, static_cast<i64>(element_order(spec, g)));
  t.E = E;
  // Incremental extension over a generating set: chars defined on the subgroup S.
  std::vector<int> S{0};
  std::vector<int> in_S(n, 0);
  in_S[0] = 1;
  std::vector<std::vector<i64>> chars{std::vector<i64>(n, 0)};
  for (int g : subgroup_generators(spec, whole_group(spec))) {
    int r = 1, gr = g;
    while (!in_S[gr]) {
      gr = spec.table[gr][g];
      ++r;
    }
    std::vector<int> newS;
    std::vector<std::pair<int, int>> decomposition;  // (s, j) for each new element
    for (int s : S) {
      int x = s;
      for (int j = 0; j < r; ++j) {
        newS.push_back(x);
        decomposition.emplace_back(s, j);
        x = spec.table[x][g];
      }
    }
    std::vector<std::vector<i64>> next;
    for (const auto& chi : chars) {
      i64 base = chi[gr] / r;  // chi(g^r) exponent is divisible by r
      for (int k = 0; k < r; ++k) {
        i64 t_exp = mod(base + k * (E / r), E);
        std::vector<i64> ext(n, 0);
        for (std::size_t idx = 0; idx < newS.size(); ++idx) {
          auto [s, j] = decomposition[idx];
          ext[newS[idx]] = mod(chi[s] + j * t_exp, E);
        }
        next.push_back(ext);
      }
    }
    chars = std::move(next);
    S = newS;
    for (int s : S) in_S[s] = 1;
  }
  t.exps = std::move(chars);
  return t;
}

}  // namespace

const CharacterTable& characters(const SpecPtr& spec) {
  static std::shared_mutex mu;
  static std::map<std::string, std::unique_ptr<CharacterTable>> store;
  std::string key = spec->text();
  {
    std::shared_lock lock(mu);
    auto it = store.find(key);
    if (it != store.end()) return *it->second;
  }
  auto table = std::make_unique<CharacterTable>(build_characters(*spec));
  std::unique_lock lock(mu);
  auto& slot = store[key];
  if (!slot) slot = std::move(table);
  return *slot;
}

std::complex<double> char_value(const CharacterTable& t, int chi, int g) {
  double ang = 2 * std::numbers::pi * static_cast<double>(t.exps[chi][g]) / static_cast<double>(t.E);
  return {std::cos(ang), std::sin(ang)};
}

i64 character_order(const CharacterTable& t, int chi) {
  i64 g = t.E;
  for (i64 e : t.exps[chi]) g = gcd(g, e);
  return t.E / g;
}

bool is_unit(const GroupRingElement& x, i64 p) {
  if (!x.is_p_integral(p)) return false;
  const auto& t = characters(x.spec());
  i64 e = t.E;
  while (e % p == 0) e /= p;
  i64 r = mult_order(p, e);
  const auto& F = FiniteField::get(p, static_cast<int>(r));
  auto omega = F.root_of_unity(e);
  i64 step = t.E / e;
  Int P(static_cast<long>(p));
  // powers of omega
  std::vector<FiniteField::Elem> pw(e);
  pw[0] = F.one();
  for (i64 i = 1; i < e; ++i) pw[i] = F.mul(pw[i - 1], omega);
  for (std::size_t chi = 0; chi < t.exps.size(); ++chi) {
    if (character_order(t, static_cast<int>(chi)) % p == 0) continue;
    auto acc = F.zero();
    for (int g = 0; g < x.spec()->order(); ++g) {
      if (x[g] == 0) continue;
      i64 c = reduce_mod(x[g], P).get_si();
      auto term = F.mul(F.from_int(c), pw[(t.exps[chi][g] / step) % e]);
      acc = F.add(acc, term);
    }
    if (F.is_zero(acc)) return false;
  }
  return true;
}

bool is_unit_bruteforce(const GroupRingElement& x, i64 p) {
  if (!x.is_p_integral(p)) return false;
  const auto& spec = *x.spec();
  int n = spec.order();
  Int P(static_cast<long>(p));
  std::vector<std::vector<Int>> M(n, std::vector<Int>(n));
  // column j = x * g_j
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M[spec.table[i][j]][j] = reduce_mod(x[i], P);
  Int d = det_bareiss(M) % P;
  return d != 0;
}

}  // namespace mtk
