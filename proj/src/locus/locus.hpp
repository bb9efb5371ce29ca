#pragma once

#include "exactnum/errors.hpp"
#include "exactnum/linalg.hpp"
#include "model/potential.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sextic::locus {

struct PolePoint {
  BigComplex x;
  int k = 1;
};

struct PoleConfiguration {
  std::vector<PolePoint> points;
  Real nu;
  Real ell;
  bool symmetric = false;

  /// x^6 - nu x^2 + l(l+1)/x^2 + sum k(k+1)/(x - x_i)^2
  RationalPotential potential() const;
  std::vector<BigComplex> locations() const;
};

/// Odd Laurent coefficients at one singular point.
struct PointReport {
  BigComplex location;
  Real leading;  // coefficient of (x - x_i)^-2
  int m = 0;     // leading = m(m+1); -1 when it is not of that form
  std::vector<int> orders;
  std::vector<BigComplex> coefficients;
};

struct LocusReport {
  std::vector<PointReport> points;
  Real max_abs;
  bool satisfied = true;
  std::string diagnostic;
};

/// Laurent check at every finite pole (and at the origin when l is an
/// integer): the (x - x_i)^-2 coefficient must be m(m+1) and the coefficients
/// of orders -1, 1, ..., 2m - 1 must vanish.
LocusReport trivial_monodromy_check(const RationalPotential& v, const Real& tol);
/// Same check for a potential given as a bare rational function.
LocusReport trivial_monodromy_check(const RationalFn& v, const Real& tol);

/// sum_{j != i} 2/(x_i - x_j)^3 + l(l+1)/x_i^3 + nu x_i - 3 x_i^5 per point.
std::vector<BigComplex> locus_residual(const PoleConfiguration& c);

/// P^(2s-1)(x_i) - (2s)! sum_{j != i} k_j(k_j+1)/(x_i - x_j)^(2s+1), s = 1..k_i,
/// with the origin treated as a point of weight l(l+1).  Concatenated point by
/// point.
std::vector<BigComplex> higher_locus_residual(const PoleConfiguration& c);

/// Minimum pairwise distance (origin included) relative to max(1, max|x|).
Real relative_separation(const std::vector<BigComplex>& xs);

struct NewtonStep {
  int iteration = 0;
  Real residual;  // max-norm before the step
  Real step;      // max-norm of the accepted step
  Real damping;   // accepted fraction of the full Newton step
};

struct SolveResult {
  PoleConfiguration config;
  int iterations = 0;
  std::vector<NewtonStep> log;
  Real residual;
  bool converged = false;
  std::optional<ErrorCode> failure;
  std::string diagnostic;
};

struct NewtonOptions {
  int max_iter = 50;
  int max_halvings = 30;
  double collision_threshold = 1e-6;
};

/// Damped Newton on the multiplicity-one locus system.  Symmetric inputs
/// (closed under negation) are solved on one representative per pair.
SolveResult solve_locus_newton(const PoleConfiguration& init, const Real& tol, const NewtonOptions& opts = {});

struct ContinuationResult {
  std::vector<Real> nus;
  std::vector<PoleConfiguration> branch;
  std::vector<Real> residuals;
  bool truncated = false;
  std::optional<ErrorCode> failure;
  std::string diagnostic;
};

ContinuationResult homotopy_continue(const PoleConfiguration& start, const std::vector<Real>& nu_path, const Real& tol,
                                     const NewtonOptions& opts = {});

}  // namespace sextic::locus
