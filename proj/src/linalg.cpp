#include "mtk/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace mtk {

RatMat identity(std::size_t n) {
  RatMat m(n, RatVec(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

RatMat matmul(const RatMat& a, const RatMat& b) {
  if (a.empty()) return {};
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  RatMat c(n, RatVec(m, Rat(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (b[t][j] != 0) c[i][j] += a[i][t] * b[t][j];
    }
  return c;
}

RatVec matvec(const RatMat& a, const RatVec& x) {
  RatVec y(a.size(), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (a[i][j] != 0 && x[j] != 0) y[i] += a[i][j] * x[j];
  return y;
}

std::vector<std::size_t> rref(RatMat& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  std::size_t rows = a.size(), cols = a[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[r], a[piv]);
    Rat inv = 1 / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (a[r][j] != 0) a[i][j] -= f * a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(RatMat a) { return rref(a).size(); }

std::vector<RatVec> kernel(const RatMat& a, std::size_t ncols) {
  RatMat r = a;
  auto piv = rref(r);
  std::vector<bool> is_piv(ncols, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<RatVec> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_piv[f]) continue;
    RatVec v(ncols, Rat(0));
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatMat> inverse(const RatMat& a) {
  // Gauss-Jordan on [A | I].
  std::size_t n = a.size();
  RatMat m(n, RatVec(2 * n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
    m[i][n + i] = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[k], m[piv]);
    Rat d = m[k][k];
    for (std::size_t j = k; j < 2 * n; ++j)
      if (m[k][j] != 0) m[k][j] /= d;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m[i][k] == 0) continue;
      Rat f = m[i][k];
      for (std::size_t j = k; j < 2 * n; ++j)
        if (m[k][j] != 0) m[i][j] -= f * m[k][j];
    }
  }
  RatMat inv(n, RatVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = m[i][n + j];
  return inv;
}

Int det_bareiss(std::vector<std::vector<Int>> m) {
  std::size_t n = m.size();
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

PadicElimination padic_elementary_divisors(const RatMat& rows, i64 p, int k) {
  PadicElimination out;
  out.precision = k;
  if (rows.empty()) return out;
  const Int P(static_cast<long>(p));
  const Int pk = ipow(P, static_cast<unsigned>(k));
  std::size_t nr = rows.size(), nc = rows[0].size();
  std::vector<std::vector<Int>> m(nr, std::vector<Int>(nc));
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) m[i][j] = reduce_mod(rows[i][j], pk);
  std::vector<bool> row_used(nr, false), col_used(nc, false);
  auto v = [&](const Int& x) { return x == 0 ? k : std::min(k, val(x, p)); };
  for (;;) {
    int best = k;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < nr; ++i) {
      if (row_used[i]) continue;
      for (std::size_t j = 0; j < nc; ++j) {
        if (col_used[j]) continue;
        int vv = v(m[i][j]);
        if (vv < best) {
          best = vv;
          bi = i;
          bj = j;
          if (best == 0) break;
        }
      }
      if (best == 0) break;
    }
    if (best >= k) break;
    out.pivot_vals.push_back(best);
    row_used[bi] = col_used[bj] = true;
    // pivot = p^best * u; row_i -= (a_ij / pivot) * row_bi, exact since val(a_ij) >= best.
    Int u = m[bi][bj];
    Int pb = ipow(P, static_cast<unsigned>(best));
    mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), pb.get_mpz_t());
    Int uinv;
    mpz_invert(uinv.get_mpz_t(), u.get_mpz_t(), pk.get_mpz_t());
    for (std::size_t i = 0; i < nr; ++i) {
      if (row_used[i] || m[i][bj] == 0) continue;
      Int f = m[i][bj];
      mpz_divexact(f.get_mpz_t(), f.get_mpz_t(), pb.get_mpz_t());
      f = (f * uinv) % pk;
      for (std::size_t j = 0; j < nc; ++j) {
        if (col_used[j] && j != bj) continue;
        if (m[bi][j] == 0) continue;
        m[i][j] = (m[i][j] - f * m[bi][j]) % pk;
        if (m[i][j] < 0) m[i][j] += pk;
      }
    }
  }
  return out;
}

Membership padic_span_member(const RatMat& rows, const RatVec& x, i64 p, int k0, int k_max,
                             int* k_used) {
  std::size_t r = rank(rows);
  RatMat aug = rows;
  aug.push_back(x);
  std::size_t r2 = rank(aug);
  if (k_used) *k_used = k0;
  if (r2 > r) return Membership::Out;  // not even in the Q-span
  for (int k = k0; k <= k_max; k *= 2) {
    if (k_used) *k_used = k;
    auto a = padic_elementary_divisors(rows, p, k);
    auto b = padic_elementary_divisors(aug, p, k);
    if (a.pivot_vals.size() != r || b.pivot_vals.size() != r) continue;
    long sa = 0, sb = 0;
    for (int t : a.pivot_vals) sa += t;
    for (int t : b.pivot_vals) sb += t;
    return sa == sb ? Membership::In : Membership::Out;
  }
  return Membership::Undecided;
}

}  // namespace mtk
