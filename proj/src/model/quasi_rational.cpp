#include "model/quasi_rational.hpp"

namespace sextic {

Poly QuasiRationalFunction::numerator() const {
  Poly n = Poly::from_roots(zeros);
  if (poly_factor) n *= *poly_factor;
  return n;
}

Poly QuasiRationalFunction::denominator() const { return Poly::from_roots(poles); }

RationalFn QuasiRationalFunction::log_derivative() const {
  Poly a = numerator();
  Poly b = denominator();
  // (x^mu a/b)'/(x^mu a/b) = mu/x + a'/a - b'/b, plus eps x^3.
  Poly x = Poly::x();
  Poly num = x * (a.derivative() * b - a * b.derivative()) + BigComplex(mu) * a * b;
  Poly den = x * a * b;
  RationalFn f(num, den);
  return f + RationalFn(Poly::monomial(BigComplex(eps), 3));
}

BigComplex QuasiRationalFunction::operator()(const BigComplex& x) const {
  BigComplex v = numerator()(x) / denominator()(x);
  if (!mu.is_zero()) v *= exp(BigComplex(mu) * log(x));
  BigComplex x4 = pow(x, 4);
  return v * exp(x4 * Real(eps) / Real(4));
}

}  // namespace sextic
