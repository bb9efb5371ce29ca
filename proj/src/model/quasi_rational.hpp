#pragma once

#include "exactnum/rational.hpp"

#include <optional>
#include <vector>

namespace sextic {

using num::BigComplex;
using num::Poly;
using num::RationalFn;
using num::Real;

/// psi(x) = x^mu * P(x) * prod(x - y_j) / prod(x - x_i) * exp(eps x^4 / 4).
struct QuasiRationalFunction {
  Real mu;
  std::vector<BigComplex> zeros;
  std::vector<BigComplex> poles;
  int eps = -1;
  std::optional<Poly> poly_factor;
  std::optional<Real> time_phase;

  /// Numerator prod(x - y_j) * P(x), without the x^mu factor.
  Poly numerator() const;
  Poly denominator() const;

  /// psi'/psi as a rational function.
  RationalFn log_derivative() const;

  BigComplex operator()(const BigComplex& x) const;
};

}  // namespace sextic
