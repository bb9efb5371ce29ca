#pragma once

#include "exactnum/rational.hpp"

#include <vector>

namespace sextic {

using num::BigComplex;
using num::Poly;
using num::RationalFn;
using num::Real;

struct Pole {
  BigComplex location;
  int multiplicity = 1;
  // Coefficient of 1/(x - location)^2; k(k+1) for a well-formed pole, but a
  // Crum descendant with a multiple root of P_I stores what it actually got.
  BigComplex strength;
};

/// V(x) = poly(x) + l(l+1)/x^2 + sum strength_i/(x - x_i)^2.
struct RationalPotential {
  Poly poly;
  Real ell;
  std::vector<Pole> poles;
  bool symmetric = false;

  static RationalPotential sextic(const Real& nu, const Real& ell);

  Real origin_coefficient() const { return ell * (ell + Real(1)); }
  /// Coefficient nu of -nu x^2.
  BigComplex nu() const { return -poly.coeff(2); }

  void add_pole(const BigComplex& location, int multiplicity);

  BigComplex operator()(const BigComplex& x) const;
  RationalFn to_rational() const;
};

}  // namespace sextic
