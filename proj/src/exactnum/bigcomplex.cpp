#include "exactnum/bigcomplex.hpp"

#include <ostream>

namespace sextic::num {

BigComplex BigComplex::polar(const Real& radius, const Real& angle) {
  return {radius * cos(angle), radius * sin(angle)};
}

BigComplex& BigComplex::operator+=(const BigComplex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& o) {
  if (o.im.is_zero()) {
    re *= o.re;
    im *= o.re;
    return *this;
  }
  Real r = re * o.re - im * o.im;
  im = re * o.im + im * o.re;
  re = std::move(r);
  return *this;
}

BigComplex& BigComplex::operator/=(const BigComplex& o) {
  if (o.im.is_zero()) {
    re /= o.re;
    im /= o.re;
    return *this;
  }
  // Smith's algorithm keeps intermediate magnitudes bounded.
  if (abs(o.re) >= abs(o.im)) {
    Real ratio = o.im / o.re;
    Real denom = o.re + o.im * ratio;
    Real r = (re + im * ratio) / denom;
    im = (im - re * ratio) / denom;
    re = std::move(r);
  } else {
    Real ratio = o.re / o.im;
    Real denom = o.re * ratio + o.im;
    Real r = (re * ratio + im) / denom;
    im = (im * ratio - re) / denom;
    re = std::move(r);
  }
  return *this;
}

BigComplex& BigComplex::operator*=(const Real& s) {
  re *= s;
  im *= s;
  return *this;
}

BigComplex& BigComplex::operator/=(const Real& s) {
  re /= s;
  im /= s;
  return *this;
}

std::string BigComplex::to_string(int digits) const {
  std::string s = re.to_string(digits);
  if (!im.is_zero()) {
    s += im.sign() < 0 ? " - " : " + ";
    s += abs(im).to_string(digits);
    s += "i";
  }
  return s;
}

Real abs(const BigComplex& z) { return hypot(z.re, z.im); }
Real norm(const BigComplex& z) { return z.re * z.re + z.im * z.im; }
Real arg(const BigComplex& z) { return atan2(z.im, z.re); }
BigComplex conj(const BigComplex& z) { return {z.re, -z.im}; }

BigComplex sqrt(const BigComplex& z) {
  if (z.is_zero()) return {};
  Real r = abs(z);
  Real a = sqrt((r + abs(z.re)) / Real(2));
  if (z.re.sign() >= 0) {
    return {a, z.im / (a * Real(2))};
  }
  Real b = z.im.sign() < 0 ? -a : a;
  return {abs(z.im) / (a * Real(2)), b};
}

BigComplex exp(const BigComplex& z) { return BigComplex::polar(exp(z.re), z.im); }

BigComplex log(const BigComplex& z) { return {log(abs(z)), arg(z)}; }

BigComplex pow(const BigComplex& z, long n) {
  if (n < 0) return inverse(pow(z, -n));
  BigComplex result(1);
  BigComplex base = z;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

BigComplex root(const BigComplex& z, unsigned long k) {
  if (z.is_zero()) return {};
  Real r = root(abs(z), k);
  return BigComplex::polar(r, arg(z) / Real(static_cast<long>(k)));
}

BigComplex tan(const BigComplex& z) {
  // tan z = (sin 2x + i sinh 2y) / (cos 2x + cosh 2y)
  Real two_x = z.re * Real(2);
  Real two_y = z.im * Real(2);
  Real ey = exp(two_y);
  Real sinh2y = (ey - Real(1) / ey) / Real(2);
  Real cosh2y = (ey + Real(1) / ey) / Real(2);
  Real denom = cos(two_x) + cosh2y;
  return {sin(two_x) / denom, sinh2y / denom};
}

BigComplex inverse(const BigComplex& z) { return BigComplex(1) / z; }

std::ostream& operator<<(std::ostream& os, const BigComplex& z) {
  return os << z.to_string(static_cast<int>(os.precision() > 0 ? os.precision() : 17));
}

}  // namespace sextic::num
