#pragma once

#include "exactnum/real.hpp"

#include <iosfwd>
#include <string>

namespace sextic::num {

/// Complex number with arbitrary-precision real and imaginary parts.
struct BigComplex {
  Real re;
  Real im;

  BigComplex() = default;
  BigComplex(Real r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  BigComplex(int r) : re(r) {}              // NOLINT(google-explicit-constructor)
  BigComplex(double r) : re(r) {}           // NOLINT(google-explicit-constructor)
  BigComplex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  static BigComplex i() { return {Real(0), Real(1)}; }
  static BigComplex polar(const Real& radius, const Real& angle);

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }

  BigComplex& operator+=(const BigComplex& o);
  BigComplex& operator-=(const BigComplex& o);
  BigComplex& operator*=(const BigComplex& o);
  BigComplex& operator/=(const BigComplex& o);
  BigComplex& operator*=(const Real& s);
  BigComplex& operator/=(const Real& s);

  friend BigComplex operator-(const BigComplex& a) { return {-a.re, -a.im}; }
  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }
  friend BigComplex operator*(BigComplex a, const Real& s) { return a *= s; }
  friend BigComplex operator*(const Real& s, BigComplex a) { return a *= s; }
  friend BigComplex operator/(BigComplex a, const Real& s) { return a /= s; }
  friend bool operator==(const BigComplex& a, const BigComplex& b) { return a.re == b.re && a.im == b.im; }

  std::string to_string(int digits) const;
};

Real abs(const BigComplex& z);
Real norm(const BigComplex& z);  // |z|^2
Real arg(const BigComplex& z);
BigComplex conj(const BigComplex& z);
BigComplex sqrt(const BigComplex& z);  // principal branch
BigComplex exp(const BigComplex& z);
BigComplex log(const BigComplex& z);  // principal branch
BigComplex pow(const BigComplex& z, long n);
BigComplex root(const BigComplex& z, unsigned long k);  // principal k-th root
BigComplex tan(const BigComplex& z);
BigComplex inverse(const BigComplex& z);

std::ostream& operator<<(std::ostream& os, const BigComplex& z);

}  // namespace sextic::num
