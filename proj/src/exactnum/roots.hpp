#pragma once

#include "exactnum/poly.hpp"

#include <vector>

namespace sextic::num {

struct Root {
  BigComplex value;
  int multiplicity = 1;
};

struct RootOptions {
  int max_iterations = 200;
  bool polish_multiple = true;
};

/// All roots of p via Aberth-Ehrlich iteration, with clusters of radius
/// tol^(1/k) merged into roots of multiplicity k.  Multiplicities sum to
/// deg p.  Throws NonConvergence past the iteration cap.
std::vector<Root> poly_roots(const Poly& p, const Real& tol, const RootOptions& opts = {});

/// Roots repeated according to multiplicity.
std::vector<BigComplex> flatten(const std::vector<Root>& roots);

/// Fujiwara upper bound on the root moduli of p.
Real fujiwara_bound(const Poly& p);

}  // namespace sextic::num
