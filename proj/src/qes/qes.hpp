#pragma once

#include "model/potential.hpp"
#include "model/quasi_rational.hpp"

#include <optional>
#include <vector>

namespace sextic::qes {

enum class Branch { MinusL, LPlusOne };  // mu = -l or mu = l + 1

struct QESProblem {
  Real nu;
  Real ell;
  int eps = -1;
  Branch branch = Branch::MinusL;

  Real mu() const;
  int sigma() const { return branch == Branch::MinusL ? 1 : -1; }
  /// (-eps nu + sigma (2l + 1)) / 4, not rounded.
  Real raw_count() const;
};

std::optional<int> count_solutions(const QESProblem& problem, const Real& tol);
std::optional<int> count_solutions(const QESProblem& problem);

struct RecurrenceRow {
  Real c_up;     // multiplies a_{n+2}
  bool diag_is_lambda = true;
  Real c_down;   // multiplies a_{n-2}; zero at n = 0
};

RecurrenceRow build_recurrence_row(int n, const QESProblem& problem);

struct QESSpectrum {
  QESProblem problem;
  int M = 0;
  Poly char_poly;
  std::vector<BigComplex> eigenvalues;
  // eigenvectors[i][k] is the coefficient of x^(2k), k = 0..M-1.
  std::vector<std::vector<BigComplex>> eigenvectors;
  // Set when a_0 could not serve as the normalisation for some eigenvector.
  bool normalisation_fallback = false;
};

/// Determinant of lambda I minus the M x M tridiagonal block.
Poly characteristic_polynomial(const QESProblem& problem, int M);

/// Builds the M x M tridiagonal block, its determinant polynomial in lambda
/// and the eigenpairs.  Throws NoSolutions when M is not a positive integer
/// and Degenerate on a repeated eigenvalue.
QESSpectrum qes_spectrum(const QESProblem& problem, const Real& tol);
QESSpectrum qes_spectrum(const QESProblem& problem);

/// Even polynomial sum a_{2k} x^{2k} from an eigenvector.
Poly eigen_polynomial(const std::vector<BigComplex>& a);

QuasiRationalFunction eigenfunction(const QESSpectrum& spectrum, int index);

/// Continues the recurrence past the truncation point and returns
/// a_{2M}, a_{2M+2}, ... (count values).
std::vector<BigComplex> continue_recurrence(const QESSpectrum& spectrum, int index, int count);

/// Max coefficient of the polynomial numerator of (-psi'' + (V - lambda) psi)
/// after clearing x^mu, the exponential and all denominators.
Real schrodinger_residual(const RationalPotential& v, const QuasiRationalFunction& psi, const BigComplex& lambda);

/// The same numerator as a polynomial, for callers that need more than its norm.
Poly schrodinger_numerator(const RationalPotential& v, const QuasiRationalFunction& psi, const BigComplex& lambda);

}  // namespace sextic::qes
