#pragma once

#include <optional>
#include <vector>

#include "mtk/rational.hpp"

namespace mtk {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

RatMat identity(std::size_t n);
RatMat matmul(const RatMat& a, const RatMat& b);
RatVec matvec(const RatMat& a, const RatVec& x);

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMat& a);
std::size_t rank(RatMat a);

// Basis of the right kernel {x : a x = 0}.
std::vector<RatVec> kernel(const RatMat& a, std::size_t ncols);

// Inverse by fraction-free (Bareiss) elimination; nullopt when singular.
std::optional<RatMat> inverse(const RatMat& a);

// Determinant of an integer matrix by Bareiss elimination.
Int det_bareiss(std::vector<std::vector<Int>> a);

// Result of a p-adic elimination of a spanning set of a lattice in Z_p^n.
struct PadicElimination {
  std::vector<int> pivot_vals;  // valuations of the elementary divisors found below precision
  int precision = 0;
};

// Elementary-divisor valuations of the Z_p-span of rows (p-integral rationals),
// computed modulo p^k with global minimal-valuation pivoting.
PadicElimination padic_elementary_divisors(const RatMat& rows, i64 p, int k);

enum class Membership { In, Out, Undecided };

// Decides x in Z_p-span(rows) with precision escalation from k0 up to k_max.
// Certification: the number of pivots below precision equals the exact rank.
Membership padic_span_member(const RatMat& rows, const RatVec& x, i64 p, int k0, int k_max,
                             int* k_used = nullptr);

}  // namespace mtk
