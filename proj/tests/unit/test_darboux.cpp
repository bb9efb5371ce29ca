#include <doctest.h>

#include "darboux/darboux.hpp"
#include "locus/locus.hpp"
#include "support.hpp"

using namespace sextic;
using namespace sextic::darboux;
using sextic::num::default_tolerance;
using sextic::num::rational_difference;
using testing::close;
using testing::sqrt2;

namespace {

const Real kTol = default_tolerance();

QESSpectrum nu7() { return qes::qes_spectrum({Real(7), Real(0), -1, Branch::MinusL}); }

// x^6 - x^2 + (8x^2 - 4 sqrt2)/(sqrt2 x^2 + 1)^2, typed in from the closed form.
RationalFn v1_closed_form() {
  Real r2 = sqrt2();
  Poly q{1, 0, BigComplex(r2)};
  RationalFn poly(Poly{0, 0, -1, 0, 0, 0, 1});
  return poly + RationalFn(Poly{BigComplex(Real(-4) * r2), 0, 8}, q * q);
}

}  // namespace

TEST_CASE("polynomial Wronskian of the nu = 7 pair") {
  Real r2 = sqrt2();
  Poly a{1, 0, BigComplex(r2)};
  Poly b{-1, 0, BigComplex(r2)};
  Poly w = poly_wronskian({a, b});
  // Oracle: a b' - a' b = (sqrt2 x^2 + 1) 2 sqrt2 x - 2 sqrt2 x (sqrt2 x^2 - 1) = 4 sqrt2 x.
  CHECK(w.degree(kTol) == 1);
  CHECK(close(w.coeff(1), BigComplex(Real(4) * r2), 1e-70));
  CHECK(abs(w.coeff(0)) < Real(1e-70));
  CHECK(poly_wronskian({a}).coeffs() == a.coeffs());
}

TEST_CASE("Wronskian structure for the nu = 7 subsets") {
  auto s = nu7();
  auto w12 = subset_wronskian(s, {1, 2}, kTol);
  CHECK(w12.x_power == 1);
  CHECK(w12.origin_exponent == Real(1));
  CHECK(w12.P_I.degree() == 0);
  CHECK(w12.degree_ok);
  CHECK(w12.exponent_ok);
  auto w1 = subset_wronskian(s, {1}, kTol);
  CHECK(w1.P_I.degree() == 2);
  CHECK(w1.expected_degree == 2);
  CHECK(w1.origin_nonzero);
  CHECK_THROWS(subset_wronskian(s, {3}, kTol));
  CHECK_THROWS(subset_wronskian(s, {1, 1}, kTol));
}

TEST_CASE("Crum descendants of x^6 - 7x^2") {
  auto s = nu7();
  auto base = RationalPotential::sextic(Real(7), Real(0));
  auto d1 = crum_potential(base, {1}, s, kTol);
  CHECK(d1.family == Family::PP);
  CHECK(rational_difference(d1.potential.to_rational(), v1_closed_form()) < Real(1e-30));
  CHECK(d1.representation_gap < Real(1e-30));
  CHECK(d1.potential.poles.size() == 2);
  CHECK(d1.new_nu == Real(1));
  CHECK(locus::trivial_monodromy_check(d1.potential, Real(1e-30)).satisfied);

  auto d12 = crum_potential(base, {1, 2}, s, kTol);
  CHECK(d12.potential.poles.empty());
  CHECK(close(d12.potential.poly.coeff(2), BigComplex(5), 1e-70));
  CHECK(d12.potential.poly.coeff(6) == BigComplex(1));
  CHECK(d12.potential.origin_coefficient() == Real(2));
  CHECK(d12.representation_gap < Real(1e-30));
  CHECK(locus::trivial_monodromy_check(d12.potential, Real(1e-30)).satisfied);

  auto d0 = crum_potential(base, {}, s, kTol);
  CHECK(rational_difference(d0.potential.to_rational(), base.to_rational()).is_zero());
}

TEST_CASE("family laws and dualities") {
  auto law = family_parameter_law(Family::PM, Real(7), Real(0), 2);
  CHECK(law.new_nu == Real(-5));
  CHECK(law.new_ell == Real(2));
  for (Family f : {Family::PP, Family::PM, Family::MP, Family::MM}) {
    auto z = family_parameter_law(f, Real(3), Real(1), 0);
    CHECK(z.new_nu == Real(3));
    CHECK(z.new_ell == Real(1));
  }
  auto mm = family_parameter_law(Family::MM, Real(-7), Real(0), 1);
  CHECK(mm.new_nu == Real(-1));
  CHECK(mm.new_ell == Real(1));

  auto d = dual_parameters(Real(7), Real(0), 2);
  CHECK(d.nu == Real(-5));
  CHECK(d.ell == Real(2));
  CHECK(d.M == -2);
  auto back = dual_parameters(d.nu, d.ell, d.M);
  CHECK(back.nu == Real(7));
  CHECK(back.ell == Real(0));
  CHECK(back.M == 2);
  auto refl = reflect_parameters(Real(7), Real(3), 2);
  CHECK(refl.ell * (refl.ell + Real(1)) == Real(12));

  // The worked full-subset descendant is D++ with l* = l - m = -2, which is
  // l = 1 after l -> -1 - l.
  auto pp = family_parameter_law(Family::PP, Real(7), Real(0), 2);
  CHECK(pp.new_nu == Real(-5));
  CHECK(pp.new_ell * (pp.new_ell + Real(1)) == Real(2));
}

TEST_CASE("enumeration") {
  auto set7 = enumerate_darboux_set(Real(7), Real(0), Family::PP, kTol);
  REQUIRE(set7.size() == 4);
  CHECK(set7[0].subset.empty());
  CHECK(set7[1].subset == std::vector<int>{1});
  CHECK(set7[2].subset == std::vector<int>{2});
  CHECK(set7[3].subset == std::vector<int>{1, 2});
  auto set11 = enumerate_darboux_set(Real(11), Real(0), Family::PP, kTol);
  CHECK(set11.size() == 8);
  for (const auto& d : set11) {
    CHECK(locus::trivial_monodromy_check(d.potential, Real(1e-30)).satisfied);
    CHECK(d.representation_gap < Real(1e-30));
  }
  auto small = enumerate_darboux_set(Real(3), Real(0), Family::PP, kTol, 1);
  CHECK(small.size() == 2);
  auto ordered = ordered_subsets(3);
  CHECK(ordered.size() == 8);
  CHECK(ordered[4] == std::vector<int>{1, 2});
  CHECK(ordered[7] == std::vector<int>{1, 2, 3});
}

TEST_CASE("membership classification") {
  auto r = classify_membership(2, Real(3), Real(0), kTol);
  CHECK(r.certified_nonmember);
  CHECK(r.verdict() == "certified-nonmember");
  REQUIRE(r.factorizations.size() == 1);

  auto r0 = classify_membership(0, Real(7), Real(0), kTol);
  CHECK_FALSE(r0.certified_nonmember);
  bool has_m0 = false;
  for (const auto& c : r0.candidates) has_m0 = has_m0 || c.m == 0;
  CHECK(has_m0);

  auto r1 = classify_membership(2, Real(1), Real(0), kTol);
  CHECK_FALSE(r1.certified_nonmember);
  bool found = false;
  for (const auto& c : r1.candidates) found = found || (c.m == 1 && c.M0 == 2);
  CHECK(found);
}

TEST_CASE("simple-zero audit") {
  auto s = nu7();
  auto base = RationalPotential::sextic(Real(7), Real(0));
  auto a12 = simple_zero_audit(crum_potential(base, {1, 2}, s, kTol), kTol);
  CHECK(a12.all_simple);
  CHECK(a12.degree == 0);
  auto a1 = simple_zero_audit(crum_potential(base, {1}, s, kTol), kTol);
  CHECK(a1.all_simple);
  CHECK(a1.histogram[1] == 2);
  // Oracle: sqrt2 x^2 + 1 = 0 gives x = +-i 2^(-1/4), distance 2^(3/4).
  CHECK(abs(a1.min_distance - pow(Real(2), Real(0.75))) < Real(1e-60));
  auto multi = simple_zero_audit(Poly::from_roots(std::vector<BigComplex>{1, 1, 2}), kTol);
  CHECK_FALSE(multi.all_simple);
  CHECK(multi.histogram[2] == 1);
}

TEST_CASE("structure sweep over l, M and all four families") {
  for (int l = 0; l <= 2; ++l) {
    for (int M = 2; M <= 5; ++M) {
      for (Family f : {Family::PP, Family::PM, Family::MP, Family::MM}) {
        int eps = family_eps(f);
        Branch b = family_branch(f);
        int sigma = b == Branch::MinusL ? 1 : -1;
        Real nu = Real(-eps) * (Real(4 * M) - Real(sigma * (2 * l + 1)));
        QESSpectrum s;
        try {
          s = qes::qes_spectrum({nu, Real(l), eps, b});
        } catch (const Error&) {
          continue;  // defective singular-branch block
        }
        auto base = RationalPotential::sextic(nu, Real(l));
        for (const auto& subset : ordered_subsets(M)) {
          auto d = crum_potential(base, subset, s, kTol);
          const int m = static_cast<int>(subset.size());
          CHECK(d.wronskian.degree_ok);
          CHECK(d.wronskian.exponent_ok);
          CHECK(d.wronskian.origin_nonzero);
          CHECK(d.wronskian.P_I.degree() == 2 * m * (M - m));
          CHECK(abs(d.wronskian.origin_exponent - (Real(m) * s.problem.mu() + Real(m * (m - 1) / 2))) < Real(1e-60));
          CHECK(d.representation_gap < Real(1e-30));
          CHECK_FALSE(d.conjecture_flag);
          CHECK(locus::trivial_monodromy_check(d.potential, Real(1e-30)).satisfied);
        }
      }
    }
  }
}

TEST_CASE("complementary subsets meet at the dual base") {
  for (int M = 1; M <= 3; ++M) {
    for (Family f : {Family::PP, Family::PM, Family::MP, Family::MM}) {
      int eps = family_eps(f);
      Branch b = family_branch(f);
      int sigma = b == Branch::MinusL ? 1 : -1;
      Real nu = Real(-eps) * (Real(4 * M) - Real(sigma * 1));
      QESProblem p{nu, Real(0), eps, b};
      QESSpectrum s = qes::qes_spectrum(p);
      QESProblem dp = dual_problem(p, s.M);
      QESSpectrum ds = qes::qes_spectrum(dp);
      REQUIRE(ds.M == M);
      auto base = RationalPotential::sextic(p.nu, p.ell);
      auto dual_base = RationalPotential::sextic(dp.nu, dp.ell);
      auto full = crum_potential(base, ordered_subsets(M).back(), s, kTol);
      CHECK(rational_difference(full.potential.to_rational(), dual_base.to_rational()) < Real(1e-30));
      for (const auto& subset : ordered_subsets(M)) {
        std::vector<int> complement;
        for (int i = 1; i <= M; ++i) {
          if (std::find(subset.begin(), subset.end(), i) == subset.end()) complement.push_back(i);
        }
        auto d = crum_potential(base, subset, s, kTol);
        auto e = crum_potential(dual_base, complement, ds, kTol);
        CHECK(rational_difference(d.potential.to_rational(), e.potential.to_rational()) < Real(1e-30));
      }
    }
  }
}
