#pragma once

#include "exactnum/poly.hpp"

#include <vector>

namespace sextic::num {

/// numerator / denominator with a monic denominator.  Arithmetic does not
/// cancel common factors; call rational_reduce for that.
class RationalFn {
public:
  RationalFn();
  RationalFn(Poly numerator);  // NOLINT(google-explicit-constructor)
  RationalFn(Poly numerator, Poly denominator);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  BigComplex operator()(const BigComplex& z) const;
  RationalFn derivative() const;

  friend RationalFn operator+(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator/(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator-(const RationalFn& a);

private:
  Poly num_;
  Poly den_;
};

struct LaurentSeries {
  int order = 0;  // order of f at the centre (negative for a pole)
  int lowest = 0;
  std::vector<BigComplex> coeffs;  // c_lowest, c_lowest+1, ...

  /// Coefficient of (x - centre)^k; zero outside the computed window.
  BigComplex at(int k) const;
};

/// Laurent coefficients of f at centre for orders lowest_order ..
/// lowest_order + n_terms - 1.  Vanishing of numerator or denominator at the
/// centre is judged relative to tol.
LaurentSeries laurent_expand(const RationalFn& f, const BigComplex& centre, int lowest_order, int n_terms,
                             const Real& tol);
LaurentSeries laurent_expand(const RationalFn& f, const BigComplex& centre, int lowest_order, int n_terms);

/// Power-series quotient a/b truncated to n terms; b(0) must be nonzero.
std::vector<BigComplex> series_divide(const Poly& a, const Poly& b, int n);

/// Cancels common roots (within tol) of numerator and denominator.
RationalFn rational_reduce(const RationalFn& f, const Real& tol);

/// Largest coefficient of a/b - c/d brought to a common denominator, relative
/// to the larger of the two cross products.
Real rational_difference(const RationalFn& a, const RationalFn& b);

}  // namespace sextic::num
