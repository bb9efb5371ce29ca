#include "qes/qes.hpp"

#include "exactnum/errors.hpp"
#include "exactnum/roots.hpp"

#include <algorithm>

namespace sextic::qes {

Real QESProblem::mu() const { return branch == Branch::MinusL ? -ell : ell + Real(1); }

Real QESProblem::raw_count() const {
  return (Real(-eps) * nu + Real(sigma()) * (Real(2) * ell + Real(1))) / Real(4);
}

std::optional<int> count_solutions(const QESProblem& problem, const Real& tol) {
  if (problem.eps != 1 && problem.eps != -1) {
    throw Error(ErrorCode::InvalidArgument, "eps must be +1 or -1");
  }
  Real m = problem.raw_count();
  Real r = round(m);
  if (abs(m - r) > tol * max(Real(1), abs(m))) return std::nullopt;
  long k = r.to_long();
  if (k < 1) return std::nullopt;
  return static_cast<int>(k);
}

std::optional<int> count_solutions(const QESProblem& problem) {
  return count_solutions(problem, num::default_tolerance());
}

RecurrenceRow build_recurrence_row(int n, const QESProblem& problem) {
  if (n < 0 || n % 2 != 0) throw Error(ErrorCode::InvalidArgument, "recurrence index must be even and nonnegative");
  const Real mu = problem.mu();
  const Real nr(n);
  RecurrenceRow row;
  row.c_up = (mu + nr + Real(2)) * (mu + nr + Real(1)) - problem.ell * (problem.ell + Real(1));
  if (n > 0) row.c_down = problem.nu + Real(problem.eps) * (Real(2) * nr + Real(2) * mu - Real(1));
  return row;
}

namespace {

bool before(const BigComplex& a, const BigComplex& b, const Real& tol) {
  Real scale = max(Real(1), max(abs(a), abs(b)));
  if (abs(a.re - b.re) > tol * scale) return a.re < b.re;
  return a.im < b.im;
}

// Coefficients a_0, a_2, ... for eigenvalue lambda.  Forward substitution
// from a_0 = 1 unless some c_up vanishes, in which case the always-valid
// backward sweep from the top coefficient is used.
std::vector<BigComplex> eigenvector(const QESProblem& problem, int M, const BigComplex& lambda, const Real& tol,
                                    bool& fallback) {
  std::vector<RecurrenceRow> rows;
  for (int k = 0; k < M; ++k) rows.push_back(build_recurrence_row(2 * k, problem));
  bool forward_ok = true;
  for (int k = 0; k + 1 < M; ++k) {
    if (abs(rows[static_cast<size_t>(k)].c_up) <= tol) forward_ok = false;
  }
  std::vector<BigComplex> a(static_cast<size_t>(M));
  if (forward_ok) {
    a[0] = BigComplex(1);
    for (int k = 0; k + 1 < M; ++k) {
      auto ku = static_cast<size_t>(k);
      BigComplex acc = lambda * a[ku];
      if (k > 0) acc += BigComplex(rows[ku].c_down) * a[ku - 1];
      a[ku + 1] = -acc / BigComplex(rows[ku].c_up);
    }
    return a;
  }
  a[static_cast<size_t>(M - 1)] = BigComplex(1);
  for (int k = M - 1; k >= 1; --k) {
    auto ku = static_cast<size_t>(k);
    BigComplex acc = lambda * a[ku];
    if (k + 1 < M) acc += BigComplex(rows[ku].c_up) * a[ku + 1];
    a[ku - 1] = -acc / BigComplex(rows[ku].c_down);
  }
  size_t lead = 0;
  Real top;
  for (const auto& c : a) top = max(top, abs(c));
  while (lead + 1 < a.size() && abs(a[lead]) <= tol * top) ++lead;
  if (lead != 0) fallback = true;
  BigComplex inv = num::inverse(a[lead]);
  for (auto& c : a) c *= inv;
  return a;
}

}  // namespace

Poly characteristic_polynomial(const QESProblem& problem, int M) {
  if (M < 1) throw Error(ErrorCode::InvalidArgument, "block size must be positive");
  // D_0 = 1, D_1 = lambda, D_{k+1} = lambda D_k - c_up(2k-2) c_down(2k) D_{k-1}.
  Poly lambda = Poly::x();
  Poly prev = Poly::constant(BigComplex(1));
  Poly cur = lambda;
  for (int k = 1; k < M; ++k) {
    Real coupling = build_recurrence_row(2 * (k - 1), problem).c_up * build_recurrence_row(2 * k, problem).c_down;
    Poly next = lambda * cur - prev * BigComplex(coupling);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

QESSpectrum qes_spectrum(const QESProblem& problem, const Real& tol) {
  auto count = count_solutions(problem, tol);
  if (!count) {
    throw Error(ErrorCode::NoSolutions, "M not a positive integer (M = " + problem.raw_count().to_string(12) + ")");
  }
  const int M = *count;
  QESSpectrum s;
  s.problem = problem;
  s.M = M;

  s.char_poly = characteristic_polynomial(problem, M);

  auto roots = num::poly_roots(s.char_poly, tol);
  for (const auto& r : roots) {
    if (r.multiplicity > 1) {
      throw Error(ErrorCode::Degenerate, "repeated eigenvalue " + r.value.to_string(20) + " with multiplicity " +
                                             std::to_string(r.multiplicity));
    }
    BigComplex v = r.value;
    if (abs(v.im) <= tol * max(Real(1), abs(v))) v.im = Real(0);
    s.eigenvalues.push_back(v);
  }
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end(),
            [&](const BigComplex& a, const BigComplex& b) { return before(a, b, tol); });
  for (const auto& v : s.eigenvalues) {
    s.eigenvectors.push_back(eigenvector(problem, M, v, tol, s.normalisation_fallback));
  }
  return s;
}

QESSpectrum qes_spectrum(const QESProblem& problem) { return qes_spectrum(problem, num::default_tolerance()); }

Poly eigen_polynomial(const std::vector<BigComplex>& a) {
  std::vector<BigComplex> c(a.size() * 2 - 1);
  for (size_t k = 0; k < a.size(); ++k) c[2 * k] = a[k];
  return Poly(std::move(c));
}

QuasiRationalFunction eigenfunction(const QESSpectrum& spectrum, int index) {
  if (index < 0 || index >= spectrum.M) throw Error(ErrorCode::InvalidArgument, "eigenfunction index out of range");
  QuasiRationalFunction psi;
  psi.mu = spectrum.problem.mu();
  psi.eps = spectrum.problem.eps;
  psi.poly_factor = eigen_polynomial(spectrum.eigenvectors[static_cast<size_t>(index)]);
  return psi;
}

std::vector<BigComplex> continue_recurrence(const QESSpectrum& spectrum, int index, int count) {
  std::vector<BigComplex> a = spectrum.eigenvectors.at(static_cast<size_t>(index));
  const BigComplex& lambda = spectrum.eigenvalues.at(static_cast<size_t>(index));
  std::vector<BigComplex> out;
  // Row n determines a_{n+2}; rows beyond truncation use the same formula.
  for (int extra = 0; extra < count; ++extra) {
    int k = static_cast<int>(a.size()) - 1;  // row n = 2k yields a_{2k+2}
    auto row = build_recurrence_row(2 * k, spectrum.problem);
    BigComplex acc = lambda * a[static_cast<size_t>(k)];
    if (k > 0) acc += BigComplex(row.c_down) * a[static_cast<size_t>(k - 1)];
    BigComplex next = row.c_up.is_zero() ? -acc : -acc / BigComplex(row.c_up);
    out.push_back(next);
    a.push_back(next);
  }
  return out;
}

Poly schrodinger_numerator(const RationalPotential& v, const QuasiRationalFunction& psi, const BigComplex& lambda) {
  Poly A = psi.numerator();
  Poly B = psi.denominator();
  const BigComplex mu(psi.mu);
  const BigComplex eps(Real(psi.eps));
  Poly x = Poly::x();
  Poly x2 = x * x;
  Poly x4 = x2 * x2;

  Poly A1 = A.derivative(), B1 = B.derivative();
  Poly A2 = A.derivative(2), B2 = B.derivative(2);
  Poly g0 = A * B * B;                                    // B^3 g
  Poly g1 = (A1 * B - A * B1) * B;                        // B^3 g'
  Poly g2 = A2 * B * B - A1 * B1 * B * BigComplex(2) - A * B2 * B + A * B1 * B1 * BigComplex(2);  // B^3 g''

  // x^2 L[g] = x^2 g'' + 2(mu x + eps x^5) g' + ((mu + eps x^4)^2 - mu + 3 eps x^4) g
  Poly shift = Poly::constant(mu) + x4 * eps;
  Poly c = shift * shift - Poly::constant(mu) + x4 * (eps * BigComplex(3));
  Poly lg = x2 * g2 + (x * mu + x4 * x * eps) * g1 * BigComplex(2) + c * g0;

  RationalFn vr = v.to_rational();
  return -(vr.den() * lg) + x2 * (vr.num() - vr.den() * lambda) * g0;
}

Real schrodinger_residual(const RationalPotential& v, const QuasiRationalFunction& psi, const BigComplex& lambda) {
  return schrodinger_numerator(v, psi, lambda).max_abs_coeff();
}

}  // namespace sextic::qes
