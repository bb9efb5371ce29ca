#include <doctest.h>

#include "locus/locus.hpp"
#include "stieltjes/stieltjes.hpp"
#include "support.hpp"

#include <complex>
#include <random>

using namespace sextic;
using namespace sextic::stieltjes;
using testing::close;

namespace {

BigComplex omega() { return {Real(-0.5), sqrt(Real(3)) / Real(2)}; }

QuasiRationalFunction make(std::vector<BigComplex> zeros, std::vector<BigComplex> poles, int eps, double mu = 0) {
  QuasiRationalFunction psi;
  psi.mu = Real(mu);
  psi.zeros = std::move(zeros);
  psi.poles = std::move(poles);
  psi.eps = eps;
  return psi;
}

// x1 with x1^4 = 1/(1 - omega), principal branch.
BigComplex omega_pole() { return root(inverse(BigComplex(1) - omega()), 4); }

// f' + f^2 - V + lambda at a point, through log_derivative and the potential
// evaluator rather than the numerator formula.
BigComplex riccati_at(const QuasiRationalFunction& psi, const BigComplex& x) {
  RationalFn f = psi.log_derivative();
  BigComplex fx = f(x);
  BigComplex dfx = f.derivative()(x);
  return dfx + fx * fx - implied_potential(psi)(x) + implied_eigenvalue(psi);
}

}  // namespace

TEST_CASE("omega example has vanishing residuals") {
  BigComplex x1 = omega_pole();
  auto psi = make({omega() * x1}, {x1}, -1);
  auto r = stieltjes_residual(psi);
  REQUIRE(r.zero_residuals.size() == 1);
  REQUIRE(r.pole_residuals.size() == 1);
  CHECK(r.max_abs < Real(1e-70));

  // Away from the solution the residual matches a direct double evaluation.
  auto moved = make({BigComplex(Real(0.3), Real(0.2))}, {BigComplex(Real(0.9), Real(-0.1))}, -1, 0.5);
  auto m = stieltjes_residual(moved);
  std::complex<double> y(0.3, 0.2), x(0.9, -0.1);
  std::complex<double> ry = -1.0 / (y - x) - y * y * y + 0.5 / y;
  std::complex<double> rx = 1.0 / (x - y) - x * x * x + 0.5 / x;
  CHECK(std::abs(std::complex<double>(m.zero_residuals[0].re.to_double(), m.zero_residuals[0].im.to_double()) - ry) < 1e-13);
  CHECK(std::abs(std::complex<double>(m.pole_residuals[0].re.to_double(), m.pole_residuals[0].im.to_double()) - rx) < 1e-13);
}

TEST_CASE("trivial and pole-pair examples") {
  auto empty = stieltjes_residual(make({}, {}, -1));
  CHECK(empty.pole_residuals.empty());
  CHECK(empty.zero_residuals.empty());
  CHECK(empty.max_abs.is_zero());

  BigComplex a = root(BigComplex(Real(0.5)), 4);
  auto pair = make({}, {a, -a}, 1);
  CHECK(stieltjes_residual(pair).max_abs < Real(1e-70));
  // -1/(2a) + a^3 at a = 1: 1/2.
  auto off = stieltjes_residual(make({}, {BigComplex(1), BigComplex(-1)}, 1));
  CHECK(close(off.pole_residuals[0], BigComplex(Real(0.5)), 1e-70));

  auto solved = solve_stieltjes(0, 0, Real(0), -1, make({}, {}, -1), true, Real(1e-60));
  CHECK(solved.converged);
  CHECK(solved.psi.zeros.empty());
  CHECK(solved.psi.poles.empty());
}

TEST_CASE("coincident zero and pole is rejected") {
  auto bad = make({BigComplex(1)}, {BigComplex(1)}, -1);
  CHECK_THROWS_AS(stieltjes_residual(bad), Error);
  try {
    stieltjes_residual(bad);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Collision);
  }
}

TEST_CASE("non-Darboux K=2 N=2 solution") {
  auto init = make({BigComplex(Real(0), Real(0.5)), BigComplex(Real(0), Real(-0.5))},
                   {BigComplex(Real(1)), BigComplex(Real(-1))}, -1);
  auto sol = solve_stieltjes(2, 2, Real(0), -1, init, true, Real(1e-60));
  REQUIRE(sol.converged);
  BigComplex a = sol.psi.poles[0];
  BigComplex b = sol.psi.zeros[0];
  BigComplex a2 = a * a, b2 = b * b;
  BigComplex a4 = a2 * a2, b4 = b2 * b2;
  CHECK(abs(a4 - b4 - BigComplex(1)) < Real(1e-50));
  CHECK(abs(a4 + a2 * b2 * Real(4) + b4) < Real(1e-50));

  // The ratio b^2/a^2 is a root of t^2 + 4t + 1.
  BigComplex t = b2 / a2;
  Real s3 = sqrt(Real(3));
  BigComplex e1(Real(-2) + s3), e2(Real(-2) - s3);
  BigComplex e = abs(t - e1) < abs(t - e2) ? e1 : e2;
  CHECK(abs(t - e) < Real(1e-20));
  CHECK(abs(a4 - inverse(BigComplex(1) - e * e)) < Real(1e-20));
  CHECK(sol.psi.poles[1] == -a);
  CHECK(sol.psi.zeros[1] == -b);
}

TEST_CASE("zero at the origin forces a^4 = 1/2") {
  auto init = make({BigComplex()}, {BigComplex(Real(0.8)), BigComplex(Real(-0.8))}, -1);
  auto sol = solve_stieltjes(1, 2, Real(0), -1, init, true, Real(1e-60));
  REQUIRE(sol.converged);
  CHECK(sol.psi.zeros[0].is_zero());
  CHECK(close(pow(sol.psi.poles[0], 4), BigComplex(Real(0.5)), 1e-60));
  CHECK(effective_mu(sol.psi) == Real(1));
}

TEST_CASE("infer polynomial part examples") {
  BigComplex x1 = omega_pole();
  auto psi = make({omega() * x1}, {x1}, -1);
  Poly p = infer_polynomial_part(psi);
  CHECK(p.degree() == 6);
  CHECK(p.coeff(6) == BigComplex(1));
  CHECK(close(p.coeff(2), BigComplex(-3), 1e-70));
  CHECK(close(p.coeff(1), (omega() - BigComplex(1)) * x1 * Real(-2), 1e-70));
  CHECK(p.coeff(0).is_zero());

  BigComplex a = root(BigComplex(Real(0.5)), 4);
  auto sym = make({}, {a, -a}, 1);
  CHECK(infer_polynomial_part(sym).coeff(1).is_zero());
  CHECK(inferred_nu(sym) == Real(1));

  // nu is an odd integer on both branches for integer l.
  for (int ell = 0; ell <= 4; ++ell) {
    for (double mu : {-static_cast<double>(ell), ell + 1.0}) {
      for (int eps : {-1, 1}) {
        for (int K = 0; K <= 3; ++K) {
          for (int N = 0; N <= 3; ++N) {
            std::vector<BigComplex> zs(static_cast<size_t>(K)), ps(static_cast<size_t>(N));
            for (int k = 0; k < K; ++k) zs[static_cast<size_t>(k)] = BigComplex(Real(k + 1));
            for (int n = 0; n < N; ++n) ps[static_cast<size_t>(n)] = BigComplex(Real(-n - 1));
            Real nu = inferred_nu(make(zs, ps, eps, mu));
            Real r = round(nu);
            CHECK(nu == r);
            CHECK(r.to_long() % 2 != 0);
          }
        }
      }
    }
  }
}

TEST_CASE("riccati identity on the worked solutions") {
  BigComplex x1 = omega_pole();
  BigComplex a = root(BigComplex(Real(0.5)), 4);
  std::vector<QuasiRationalFunction> cases = {
      make({omega() * x1}, {x1}, -1),
      make({}, {a, -a}, 1),
      make({BigComplex()}, {a, -a}, -1),
      make({}, {}, -1, 0),
      make({}, {}, -1, 1),
  };
  std::mt19937_64 rng(7);
  for (const auto& psi : cases) {
    auto rep = stieltjes_implies_locus(psi, Real(1e-50));
    CHECK(rep.stieltjes_ok);
    CHECK(rep.riccati_ok);
    CHECK(rep.locus_ok);
    for (int k = 0; k < 5; ++k) {
      BigComplex x = testing::random_complex(rng, 0.2, 1.3);
      CHECK(abs(riccati_at(psi, x)) < Real(1e-55));
    }
  }
  // The omega solution has eigenvalue -2 eps (y^2 - x^2) = 2 (omega^2 - 1) x1^2.
  auto psi = cases[0];
  BigComplex w = omega();
  CHECK(close(implied_eigenvalue(psi), (w * w - BigComplex(1)) * x1 * x1 * Real(2), 1e-70));

  // A wrong lambda leaves a nonzero constant in f' + f^2 - V + lambda.
  auto shifted = riccati_numerator(psi, implied_eigenvalue(psi) + BigComplex(1));
  CHECK(shifted.max_abs_coeff() > Real(1e-3));
}

TEST_CASE("minus one sixth configuration is in the locus but not Stieltjes") {
  // 12 a^8 - 4 nu a^4 - 1 = 0 at nu = 1 has the branch a^4 = -1/6.
  BigComplex a = root(BigComplex(Real(-1) / Real(6)), 4);
  locus::PoleConfiguration c;
  c.points = {{a, 1}, {-a, 1}};
  c.nu = Real(1);
  c.ell = Real(0);
  c.symmetric = true;
  CHECK(num::max_abs(locus::locus_residual(c)) < Real(1e-60));

  auto shapes = admissible_shapes(2, Real(1), Real(0), Real(1e-30));
  CHECK(shapes.size() == 3);
  for (const auto& s : shapes) CHECK(s.K <= 1);

  auto sweep = shape_sweep({a, -a}, Real(1), Real(0), 11, 16);
  REQUIRE(sweep.shapes.size() == 3);
  CHECK(sweep.min_over_shapes > Real(1e-2));
  auto serial = shape_sweep({a, -a}, Real(1), Real(0), 11, 16, 1);
  for (size_t i = 0; i < 3; ++i) CHECK(serial.shapes[i].best_max_residual == sweep.shapes[i].best_max_residual);

  // The same sweep does find the genuine a^4 = 1/2 solution at nu = 1.
  BigComplex g = root(BigComplex(Real(0.5)), 4);
  auto good = shape_sweep({g, -g}, Real(1), Real(0), 11, 16);
  CHECK(good.min_over_shapes < Real(1e-40));
}

TEST_CASE("randomised solver outputs satisfy Riccati and locus") {
  std::mt19937_64 rng(20261018);
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_real_distribution<double> jitter(-0.15, 0.15);
  const Real tol(1e-50);
  int certified = 0;
  for (int trial = 0; trial < 100; ++trial) {
    QuasiRationalFunction init;
    bool symmetric = true;
    switch (pick(rng)) {
      case 0:  // pole pair, eps = +1
        init = make({}, {BigComplex(Real(0.84 + jitter(rng)), Real(jitter(rng)))}, 1);
        init.poles.push_back(-init.poles[0]);
        break;
      case 1:  // two zeros two poles
        init = make({BigComplex(Real(jitter(rng)), Real(0.5 + jitter(rng)))},
                    {BigComplex(Real(1.0 + jitter(rng)), Real(jitter(rng)))}, -1);
        init.zeros.push_back(-init.zeros[0]);
        init.poles.push_back(-init.poles[0]);
        break;
      case 2:  // zero pair, polynomial eigenfunction
        init = make({BigComplex(Real(0.84 + jitter(rng)), Real(jitter(rng)))}, {}, -1);
        init.zeros.push_back(-init.zeros[0]);
        break;
      default: {  // one zero one pole, no symmetry
        BigComplex x1 = omega_pole();
        init = make({omega() * x1 + BigComplex(Real(jitter(rng) * 0.3), Real(jitter(rng) * 0.3))},
                    {x1 + BigComplex(Real(jitter(rng) * 0.3), Real(jitter(rng) * 0.3))}, -1);
        symmetric = false;
      }
    }
    auto sol = solve_stieltjes(init, symmetric, tol);
    if (!sol.converged) continue;
    ++certified;
    auto rep = stieltjes_implies_locus(sol.psi, tol);
    CHECK(rep.riccati_ok);
    CHECK(rep.locus_ok);
    CHECK(rep.monodromy.satisfied);
    BigComplex x = testing::random_complex(rng, 0.1, 1.7);
    CHECK(abs(riccati_at(sol.psi, x)) < Real(1e-45));
  }
  CHECK(certified >= 90);
}
