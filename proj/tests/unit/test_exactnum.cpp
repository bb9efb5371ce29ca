#include <doctest.h>

#include "exactnum/errors.hpp"
#include "exactnum/rational.hpp"
#include "exactnum/roots.hpp"
#include "support.hpp"

using namespace sextic::num;
using testing::close;
using testing::sqrt2;

TEST_CASE("real parse and exact round trip") {
  Real third = Real(1) / Real(3);
  Real back = Real::parse(third.to_exact_string());
  CHECK(back == third);
  CHECK_THROWS_AS(Real::parse("1.5x"), sextic::Error);
  CHECK_THROWS_AS(Real::parse(""), sextic::Error);
  CHECK(Real::parse("-2.5").to_double() == -2.5);
}

TEST_CASE("precision scope restores the working precision") {
  unsigned before = precision_bits();
  {
    PrecisionScope scope(128);
    CHECK(Real(1).precision() == 128);
  }
  CHECK(precision_bits() == before);
  CHECK_THROWS_AS(set_precision_bits(32), sextic::Error);
}

TEST_CASE("complex arithmetic identities") {
  BigComplex z(Real(3), Real(-4));
  CHECK(abs(z) == Real(5));
  CHECK(close(z * inverse(z), BigComplex(1), 1e-70));
  BigComplex s = sqrt(BigComplex(Real(-4)));
  CHECK(close(s, BigComplex(Real(0), Real(2)), 1e-70));
  CHECK(close(pow(BigComplex::i(), 4), BigComplex(1), 1e-70));
  BigComplex r = root(BigComplex(Real(-8)), 3);
  CHECK(close(pow(r, 3), BigComplex(Real(-8)), 1e-70));
}

TEST_CASE("poly_arith") {
  Poly a{1, 0, 1};
  Poly b{-1, 0, 1};
  Poly prod = poly_arith(a, b, PolyOp::Mul);
  CHECK(prod.degree() == 4);
  CHECK(prod.coeff(0) == BigComplex(-1));
  CHECK(prod.coeff(4) == BigComplex(1));
  CHECK(prod.coeff(2).is_zero());
  CHECK(poly_arith(a, Poly(), PolyOp::Add).coeffs() == a.coeffs());

  Poly c{BigComplex(1), 0, BigComplex(sqrt2())};
  Poly d{BigComplex(-1), 0, BigComplex(sqrt2())};
  Poly e = poly_arith(c, d, PolyOp::Mul);
  // Oracle: coefficient products computed by hand, sqrt2 * sqrt2 = 2.
  CHECK(close(e.coeff(4), BigComplex(2), 1e-70));
  CHECK(close(e.coeff(0), BigComplex(-1), 1e-70));
  CHECK(e.coeff(2).is_zero());
}

TEST_CASE("mixing precisions is rejected") {
  Poly a{1, 2};
  Poly b;
  {
    PrecisionScope scope(128);
    b = Poly{1, 2};
  }
  CHECK_THROWS_AS(poly_arith(a, b, PolyOp::Add), sextic::Error);
}

TEST_CASE("poly_derivative") {
  Poly x6 = Poly::monomial(BigComplex(1), 6);
  Poly d = poly_derivative(x6, 1);
  CHECK(d.degree() == 5);
  CHECK(d.coeff(5) == BigComplex(6));
  CHECK(poly_derivative(Poly::constant(BigComplex(5)), 1).is_zero());
  Poly v{0, 0, -7, 0, 0, 0, 1};
  Poly dv = poly_derivative(v, 1);
  CHECK(dv.coeff(1) == BigComplex(-14));
  CHECK(dv.coeff(5) == BigComplex(6));
  CHECK(poly_derivative(v, 2).coeff(0) == BigComplex(-14));
  CHECK_THROWS(poly_derivative(v, 0));
}

TEST_CASE("divmod and taylor shift") {
  Poly p{-1, 0, 1};
  auto [q, r] = p.divmod(Poly{-1, 1});
  CHECK(q.coeffs() == Poly({1, 1}).coeffs());
  CHECK(r.is_zero());
  Poly s = Poly{0, 0, 1}.taylor_shift(BigComplex(1));
  CHECK(s.coeffs() == Poly({1, 2, 1}).coeffs());
}

TEST_CASE("laurent_expand examples") {
  // 2/(x-1)^2 + x^2 = (x^4 - 2x^3 + x^2 + 2) / (x-1)^2
  RationalFn f(Poly{2, 0, 1, -2, 1}, Poly{1, -2, 1});
  auto series = laurent_expand(f, BigComplex(1), -2, 5);
  CHECK(series.order == -2);
  std::vector<int> want{2, 0, 1, 2, 1};
  for (int k = 0; k < 5; ++k) CHECK(close(series.coeffs[static_cast<size_t>(k)], BigComplex(want[static_cast<size_t>(k)]), 1e-70));

  RationalFn inv_x(Poly{1}, Poly{0, 1});
  auto s2 = laurent_expand(inv_x, BigComplex(0), -1, 4);
  CHECK(s2.order == -1);
  CHECK(s2.coeffs[0] == BigComplex(1));
  for (size_t k = 1; k < 4; ++k) CHECK(s2.coeffs[k].is_zero());

  Real r2 = sqrt2();
  Poly num{BigComplex(-Real(4) * r2), 0, 8};
  Poly base{1, 0, BigComplex(r2)};
  RationalFn g(num, base * base);
  auto s3 = laurent_expand(g, BigComplex(0), 0, 1);
  // Oracle: numerator(0) / denominator(0) = -4 sqrt2 / 1.
  CHECK(close(s3.coeffs[0], BigComplex(-Real(4) * r2), 1e-70));
}

TEST_CASE("laurent at a regular point matches repeated differentiation") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<BigComplex> nc, dc;
    for (int k = 0; k < 5; ++k) nc.push_back(testing::random_complex(rng));
    for (int k = 0; k < 4; ++k) dc.push_back(testing::random_complex(rng));
    dc.push_back(BigComplex(1));
    RationalFn f{Poly(nc), Poly(dc)};
    BigComplex c = testing::random_complex(rng, -0.3, 0.3);
    if (abs(f.den()(c)) < Real(1e-3)) continue;
    auto series = laurent_expand(f, c, 0, 5);
    RationalFn d = f;
    Real fact(1);
    for (int k = 0; k < 5; ++k) {
      if (k > 0) {
        d = d.derivative();
        fact *= Real(k);
      }
      BigComplex want = d(c) / fact;
      CHECK(testing::rel_err(series.at(k), want) < Real(1e-30));
    }
  }
}

TEST_CASE("poly_roots examples") {
  auto roots = poly_roots(Poly{-8, 0, 1}, default_tolerance());
  REQUIRE(roots.size() == 2);
  Real two_r2 = Real(2) * sqrt2();
  CHECK(close(roots[0].value, BigComplex(-two_r2), 1e-70));
  CHECK(close(roots[1].value, BigComplex(two_r2), 1e-70));

  auto cube = poly_roots(Poly{0, 0, 0, 1}, default_tolerance());
  REQUIRE(cube.size() == 1);
  CHECK(cube[0].multiplicity == 3);
  CHECK(cube[0].value.is_zero());

  auto eight = poly_roots(Poly{-1, 0, 0, 0, -4, 0, 0, 0, 12}, default_tolerance());
  int total = 0;
  int half = 0, sixth = 0;
  for (const auto& r : eight) {
    total += r.multiplicity;
    BigComplex a4 = pow(r.value, 4);
    // Oracle: quadratic formula in u = a^4 gives u = (4 +- 8)/24.
    if (close(a4, BigComplex(Real(1) / Real(2)), 1e-60)) ++half;
    if (close(a4, BigComplex(Real(-1) / Real(6)), 1e-60)) ++sixth;
  }
  CHECK(total == 8);
  CHECK(half == 4);
  CHECK(sixth == 4);
}

TEST_CASE("poly_roots multiple roots") {
  // (x-1)^3 (x+2)^2 (x - i)
  std::vector<BigComplex> rs{1, 1, 1, -2, -2, BigComplex::i()};
  Poly p = Poly::from_roots(rs);
  auto roots = poly_roots(p, default_tolerance());
  int total = 0;
  for (const auto& r : roots) {
    total += r.multiplicity;
    if (r.multiplicity == 3) CHECK(close(r.value, BigComplex(1), 1e-50));
    if (r.multiplicity == 2) CHECK(close(r.value, BigComplex(-2), 1e-50));
  }
  CHECK(total == 6);
  CHECK(roots.size() == 3);
}

TEST_CASE("random polynomials: residual and re-expansion") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> deg(1, 12);
  for (int trial = 0; trial < 100; ++trial) {
    int n = deg(rng);
    std::vector<BigComplex> c;
    for (int k = 0; k <= n; ++k) c.push_back(testing::random_complex(rng));
    Poly p(c);
    auto roots = poly_roots(p, default_tolerance());
    int total = 0;
    for (const auto& r : roots) {
      total += r.multiplicity;
      CHECK(abs(p(r.value)) < Real(1e-40) * p.max_abs_coeff());
    }
    CHECK(total == p.degree());
    auto flat = flatten(roots);
    Poly back = Poly::from_roots(flat);
    CHECK(relative_difference(back, p.monic()) < Real(1e-30));
  }
}

TEST_CASE("rational_reduce examples") {
  RationalFn f(Poly{-1, 0, 1}, Poly{-1, 1});
  auto r = rational_reduce(f, default_tolerance());
  CHECK(r.den().degree() == 0);
  CHECK(relative_difference(r.num(), Poly{1, 1}) < Real(1e-60));

  RationalFn p(Poly{1, 2, 3});
  auto rp = rational_reduce(p, default_tolerance());
  CHECK(rp.num().coeffs() == Poly({1, 2, 3}).coeffs());

  Real r2 = sqrt2();
  RationalFn g(Poly{-1, 0, 0, 0, 2}, Poly{1, 0, BigComplex(r2)});
  auto rg = rational_reduce(g, default_tolerance());
  CHECK(rg.den().degree() == 0);
  // Oracle: (2x^4 - 1) = (sqrt2 x^2 + 1)(sqrt2 x^2 - 1).
  CHECK(relative_difference(rg.num(), Poly{-1, 0, BigComplex(r2)}) < Real(1e-60));
}
