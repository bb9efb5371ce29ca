#include "model/potential.hpp"

#include "exactnum/errors.hpp"

namespace sextic {

RationalPotential RationalPotential::sextic(const Real& nu, const Real& ell) {
  RationalPotential v;
  v.poly = Poly{0, 0, BigComplex(-nu), 0, 0, 0, 1};
  v.ell = ell;
  v.symmetric = true;
  return v;
}

void RationalPotential::add_pole(const BigComplex& location, int multiplicity) {
  if (location.is_zero()) throw Error(ErrorCode::InvalidArgument, "poles off the origin must be nonzero");
  if (multiplicity < 1) throw Error(ErrorCode::InvalidArgument, "pole multiplicity must be positive");
  poles.push_back({location, multiplicity, BigComplex(Real(multiplicity) * Real(multiplicity + 1))});
}

BigComplex RationalPotential::operator()(const BigComplex& x) const {
  BigComplex v = poly(x);
  Real c = origin_coefficient();
  if (!c.is_zero()) v += BigComplex(c) / (x * x);
  for (const auto& p : poles) {
    BigComplex d = x - p.location;
    v += p.strength / (d * d);
  }
  return v;
}

RationalFn RationalPotential::to_rational() const {
  RationalFn v(poly);
  Real c = origin_coefficient();
  if (!c.is_zero()) v = v + RationalFn(Poly{BigComplex(c)}, Poly{0, 0, 1});
  for (const auto& p : poles) {
    Poly d{-p.location, BigComplex(1)};
    v = v + RationalFn(Poly{p.strength}, d * d);
  }
  return v;
}

}  // namespace sextic
