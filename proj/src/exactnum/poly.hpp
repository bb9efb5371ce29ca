#pragma once

#include "exactnum/bigcomplex.hpp"

#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace sextic::num {

/// Dense univariate polynomial with BigComplex coefficients in ascending
/// powers.  Exact-zero trailing coefficients are always trimmed; trimming by
/// tolerance is explicit (trimmed()).  Each polynomial remembers the precision
/// it was built at and refuses to mix with another precision.
class Poly {
public:
  Poly();
  explicit Poly(std::vector<BigComplex> coeffs);
  Poly(std::initializer_list<BigComplex> coeffs);

  static Poly constant(BigComplex c);
  static Poly x();
  static Poly monomial(BigComplex c, int power);
  /// Monic polynomial with the given roots.
  static Poly from_roots(std::span<const BigComplex> roots);

  /// Degree by exact zeros; the zero polynomial has degree -1.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  /// Index of the last coefficient above tol * max|c|.
  int degree(const Real& tol) const;
  bool is_zero() const { return coeffs_.empty(); }

  const std::vector<BigComplex>& coeffs() const { return coeffs_; }
  /// Coefficient of x^k (zero when k is out of range).
  BigComplex coeff(int k) const;
  const BigComplex& leading() const { return coeffs_.back(); }
  unsigned precision() const { return precision_; }

  BigComplex operator()(const BigComplex& z) const;
  /// Evaluation together with a running rounding-error bound sum|c_k||z|^k.
  std::pair<BigComplex, Real> eval_with_bound(const BigComplex& z) const;

  Real max_abs_coeff() const;
  /// Drops trailing coefficients with |c| <= tol * max|c|.
  Poly trimmed(const Real& tol) const;
  /// True when every odd coefficient is below tol * max|c|.
  bool is_even(const Real& tol) const;
  /// Sets odd coefficients exactly to zero.
  Poly even_part() const;
  /// Multiplicity of x = 0 as a root, judged with relative tolerance.
  int low_order(const Real& tol) const;
  /// Divides by x^k, discarding the k lowest coefficients.
  Poly shift_down(int k) const;
  Poly shift_up(int k) const;
  /// Coefficients of p(center + h) in powers of h.
  Poly taylor_shift(const BigComplex& center) const;
  Poly derivative(int order = 1) const;
  Poly monic() const;

  /// Polynomial long division; returns (quotient, remainder).
  std::pair<Poly, Poly> divmod(const Poly& divisor) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const BigComplex& s);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const BigComplex& s) { return a *= s; }
  friend Poly operator*(const BigComplex& s, Poly a) { return a *= s; }
  friend Poly operator-(const Poly& a);

private:
  void normalize();
  void check_precision(const Poly& o) const;

  std::vector<BigComplex> coeffs_;
  unsigned precision_;
};

enum class PolyOp { Add, Sub, Mul };

/// Ring operation on two polynomials built at the same precision.
Poly poly_arith(const Poly& a, const Poly& b, PolyOp op);
Poly poly_derivative(const Poly& p, int order);

/// Maximum coefficient magnitude of a - b, relative to max(|a|, |b|, 1).
Real relative_difference(const Poly& a, const Poly& b);

}  // namespace sextic::num
