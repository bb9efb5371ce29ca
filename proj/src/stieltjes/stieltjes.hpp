#pragma once

#include "exactnum/errors.hpp"
#include "locus/locus.hpp"
#include "model/quasi_rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sextic::stieltjes {

struct StieltjesReport {
  std::vector<BigComplex> pole_residuals;
  std::vector<BigComplex> zero_residuals;
  Real max_abs;
};

/// Residues of f' + f^2 at the zeros and poles of psi, f = psi'/psi:
/// sum_{q != p} s_q/(z_p - z_q) + eps z_p^3 + mu/z_p with s = +1 for zeros and
/// -1 for poles.  Points sitting exactly at the origin are absorbed into the
/// origin exponent and get no relation of their own.
StieltjesReport stieltjes_residual(const QuasiRationalFunction& psi);

/// mu + (zeros at 0) - (poles at 0).
Real effective_mu(const QuasiRationalFunction& psi);

struct StieltjesSolve {
  QuasiRationalFunction psi;
  int iterations = 0;
  Real residual;
  bool converged = false;
  std::optional<ErrorCode> failure;
  std::string diagnostic;
};

struct SolveOptions {
  int max_iter = 60;
  int max_halvings = 30;
  double collision_threshold = 1e-6;
};

/// Damped Newton on the K + N relations starting from init (whose mu and eps
/// are kept).  Symmetric mode moves one representative per +- pair and leaves
/// points at the origin fixed.
StieltjesSolve solve_stieltjes(const QuasiRationalFunction& init, bool symmetric, const Real& tol,
                               const SolveOptions& opts = {});

/// Shape-checked front end: init must have K zeros and N poles.
StieltjesSolve solve_stieltjes(int K, int N, const Real& mu, int eps, const QuasiRationalFunction& init,
                               bool symmetric, const Real& tol, const SolveOptions& opts = {});

/// nu = eps (2N - 2K - 2mu - 3).
Real inferred_nu(const QuasiRationalFunction& psi);

/// x^6 - nu x^2 + 2 eps (sum y - sum x) x, constant term normalised to zero.
Poly infer_polynomial_part(const QuasiRationalFunction& psi);

/// The constant absorbed into the eigenvalue: lambda = -2 eps sum s_z z^2.
BigComplex implied_eigenvalue(const QuasiRationalFunction& psi);

/// Potential assembled from the ansatz: inferred polynomial part,
/// mu_eff(mu_eff - 1)/x^2 and 2/(x - x_i)^2 at the poles off the origin.
RationalPotential implied_potential(const QuasiRationalFunction& psi);

/// Numerator of f' + f^2 - V + lambda over the common denominator.
Poly riccati_numerator(const QuasiRationalFunction& psi, const BigComplex& lambda);

struct ImplicationReport {
  Real stieltjes;
  Real riccati;
  Real locus;  // max |V_1|/2 over the poles
  locus::LocusReport monodromy;
  Real nu;
  BigComplex lambda;
  bool stieltjes_ok = false;
  bool riccati_ok = false;
  bool locus_ok = false;
};

ImplicationReport stieltjes_implies_locus(const QuasiRationalFunction& psi, const Real& tol);

struct Shape {
  int eps = -1;
  Real mu;
  int K = 0;
};

struct ShapeResult {
  Shape shape;
  Real best_max_residual;  // min over free zeros of the max relation residual
  std::vector<BigComplex> best_zeros;
};

struct ShapeSweep {
  std::vector<ShapeResult> shapes;
  Real min_over_shapes;  // +infinity when no shape is admissible
};

/// Admissible (eps, mu, K) for N poles at (nu, l): mu in {-l, l+1} and
/// K = (2N - 2mu - 3 - eps nu)/2 a nonnegative integer.
std::vector<Shape> admissible_shapes(int N, const Real& nu, const Real& ell, const Real& tol);

/// For fixed poles, minimises the Stieltjes residual over the free zeros of
/// every admissible shape (multi-start Levenberg-Marquardt).  workers = 0
/// uses the hardware concurrency; the result is the same for any count.
ShapeSweep shape_sweep(const std::vector<BigComplex>& poles, const Real& nu, const Real& ell, std::uint64_t seed = 1,
                       int starts = 24, unsigned workers = 0);

}  // namespace sextic::stieltjes
