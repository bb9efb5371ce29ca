#pragma once

#include "exactnum/bigcomplex.hpp"
#include "exactnum/poly.hpp"

#include <random>

namespace testing {

using sextic::num::BigComplex;
using sextic::num::Poly;
using sextic::num::Real;

inline Real rel_err(const BigComplex& got, const BigComplex& want) {
  return abs(got - want) / max(abs(want), Real(1));
}

inline bool close(const BigComplex& got, const BigComplex& want, double tol) {
  return rel_err(got, want) < Real(tol);
}

inline BigComplex random_complex(std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  return {Real(d(rng)), Real(d(rng))};
}

inline Real sqrt2() { return sqrt(Real(2)); }

}  // namespace testing
