#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <optional>

#include "mtk/rational.hpp"

namespace mtk {

// Working precision for all floating computations; callers ask for at most kMaxDigits.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<100>,
                                            boost::multiprecision::et_off>;
constexpr int kMaxDigits = 80;

struct Complex {
  Real re = 0, im = 0;
  Complex() = default;
  Complex(Real r, Real i = 0) : re(std::move(r)), im(std::move(i)) {}
  Complex operator+(const Complex& o) const { return {re + o.re, im + o.im}; }
  Complex operator-(const Complex& o) const { return {re - o.re, im - o.im}; }
  Complex operator*(const Complex& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  Complex operator*(const Real& s) const { return {re * s, im * s}; }
  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex conj() const { return {re, -im}; }
  Real abs() const;
  Complex operator/(const Complex& o) const;
};

Real pi_real();
Complex expi(const Real& theta);  // exp(i theta)
Real to_real(const Rat& r);
Real pow10(int e);  // 10^e

// Best rational approximation with denominator at most max_den within tol, if any.
std::optional<Rat> reconstruct(const Real& x, const Int& max_den, const Real& tol);

}  // namespace mtk
