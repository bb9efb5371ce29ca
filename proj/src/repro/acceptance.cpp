#include "repro/acceptance.hpp"

#include "darboux/darboux.hpp"
#include "dynamics/dynamics.hpp"
#include "locus/locus.hpp"
#include "stieltjes/stieltjes.hpp"

#include <random>
#include <sstream>

namespace sextic::repro {

using darboux::Family;
using qes::Branch;

namespace {

Real rel(const BigComplex& got, const BigComplex& want) { return abs(got - want) / max(Real(1), abs(want)); }

std::string sci(const Real& x) { return x.to_string(3); }

// Tracks the worst value of a quantity against its bound.
struct Bound {
  std::string label;
  Real worst;
  Real limit;
  bool below = true;  // pass when worst < limit; false means worst > limit
  void see(const Real& v) { worst = below ? max(worst, v) : (worst.is_zero() ? v : min(worst, v)); }
  bool ok() const { return below ? worst < limit : worst > limit; }
  std::string text() const { return label + "=" + sci(worst) + (below ? "<" : ">") + sci(limit); }
};

CriterionResult qes_criterion() {
  CriterionResult r{1, "QES spectrum nu=7 l=0", false, ""};
  auto s = qes::qes_spectrum({Real(7), Real(0), -1, Branch::MinusL});
  const Real r8 = Real(2) * sqrt(Real(2));
  Real eig_err = max(rel(s.eigenvalues[0], BigComplex(-r8)), rel(s.eigenvalues[1], BigComplex(r8)));
  auto v = RationalPotential::sextic(Real(7), Real(0));
  Real res(0), shape(0);
  for (int i = 0; i < s.M; ++i) {
    auto psi = qes::eigenfunction(s, i);
    res = max(res, qes::schrodinger_residual(v, psi, s.eigenvalues[static_cast<size_t>(i)]));
    // Expect 1 -+ sqrt2 x^2 up to scale, with the sign tied to lambda = -+2 sqrt2.
    const Poly& p = *psi.poly_factor;
    BigComplex ratio = p.coeff(2) / p.coeff(0);
    Real want = i == 0 ? sqrt(Real(2)) : -sqrt(Real(2));
    shape = max(shape, rel(ratio, BigComplex(want)));
    if (p.degree() != 2) shape = Real(1);
  }
  r.pass = s.M == 2 && eig_err < Real(1e-30) && res < Real(1e-30) && shape < Real(1e-30);
  r.detail = "M=" + std::to_string(s.M) + " eigenvalue err=" + sci(eig_err) + " shape err=" + sci(shape) +
             " residual=" + sci(res);
  return r;
}

CriterionResult crum_criterion() {
  CriterionResult r{2, "Crum descendants of nu=7", false, ""};
  const Real tol = num::default_tolerance();
  auto s = qes::qes_spectrum({Real(7), Real(0), -1, Branch::MinusL});
  auto base = RationalPotential::sextic(Real(7), Real(0));
  auto d1 = darboux::crum_potential(base, {1}, s, tol);
  auto d12 = darboux::crum_potential(base, {1, 2}, s, tol);

  const Real r2 = sqrt(Real(2));
  Poly q{1, 0, BigComplex(r2)};
  RationalFn want1 = RationalFn(Poly{0, 0, -1, 0, 0, 0, 1}) + RationalFn(Poly{BigComplex(Real(-4) * r2), 0, 8}, q * q);
  RationalFn want12(Poly{2, 0, 0, 0, 5, 0, 0, 0, 1}, Poly{0, 0, 1});  // x^6 + 5x^2 + 2/x^2
  Real g1 = num::rational_difference(d1.potential.to_rational(), want1);
  Real g12 = num::rational_difference(d12.potential.to_rational(), want12);
  bool m1 = locus::trivial_monodromy_check(d1.potential, Real(1e-30)).satisfied;
  bool m12 = locus::trivial_monodromy_check(d12.potential, Real(1e-30)).satisfied;
  r.pass = g1 < Real(1e-30) && g12 < Real(1e-30) && m1 && m12;
  r.detail = "{1} gap=" + sci(g1) + " {1,2} gap=" + sci(g12) + " monodromy-free=" + (m1 && m12 ? "yes" : "no");
  return r;
}

CriterionResult structure_criterion() {
  CriterionResult r{3, "Wronskian structure sweep", false, ""};
  const Real tol = num::default_tolerance();
  int checked = 0, bad = 0, multiple = 0, skipped = 0;
  for (int l = 0; l <= 2; ++l) {
    for (int M = 2; M <= 5; ++M) {
      for (Family f : {Family::PP, Family::PM, Family::MP, Family::MM}) {
        int eps = darboux::family_eps(f);
        Branch b = darboux::family_branch(f);
        int sigma = b == Branch::MinusL ? 1 : -1;
        Real nu = Real(-eps) * (Real(4 * M) - Real(sigma * (2 * l + 1)));
        qes::QESSpectrum s;
        try {
          s = qes::qes_spectrum({nu, Real(l), eps, b}, tol);
        } catch (const Error&) {
          ++skipped;
          continue;
        }
        for (const auto& subset : darboux::ordered_subsets(M)) {
          auto w = darboux::subset_wronskian(s, subset, tol);
          const int m = static_cast<int>(subset.size());
          Real want_exp = Real(m) * s.problem.mu() + Real(m * (m - 1) / 2);
          bool ok = w.degree_ok && w.exponent_ok && w.origin_nonzero && w.P_I.degree() == 2 * m * (M - m) &&
                    abs(w.origin_exponent - want_exp) < Real(1e-60);
          ++checked;
          if (!ok) ++bad;
          if (w.P_I.degree() > 0 && !darboux::simple_zero_audit(w.P_I, tol).all_simple) ++multiple;
        }
      }
    }
  }
  r.pass = bad == 0 && checked > 0;
  r.detail = std::to_string(checked) + " subsets, " + std::to_string(bad) + " structure failures, " +
             std::to_string(multiple) + " with multiple zeros (audit only), " + std::to_string(skipped) +
             " degenerate blocks skipped";
  return r;
}

locus::PoleConfiguration pair_config(const BigComplex& a, int k, const Real& nu) {
  locus::PoleConfiguration c;
  c.points = {{a, k}, {-a, k}};
  c.nu = nu;
  c.ell = Real(0);
  c.symmetric = true;
  return c;
}

CriterionResult locus_criterion(std::uint64_t seed) {
  CriterionResult r{4, "locus examples", false, ""};
  // (a) Newton from starts within 0.05 of 0.84.
  const Real target = pow(Real(2), Real(-0.25));
  int worst_iter = 0;
  bool a_ok = true;
  for (double re : {0.80, 0.84, 0.88}) {
    for (double im : {-0.03, 0.0, 0.03}) {
      auto res = locus::solve_locus_newton(pair_config(BigComplex(Real(re), Real(im)), 1, Real(1)), Real(1e-60));
      worst_iter = std::max(worst_iter, res.iterations);
      a_ok = a_ok && res.converged && res.iterations <= 15 && abs(res.config.points[0].x - BigComplex(target)) < Real(1e-50);
    }
  }
  // (b) a^4 = -1/6 is on the locus but has no Stieltjes shape.
  BigComplex b = root(BigComplex(Real(-1) / Real(6)), 4);
  Real locus_b = num::max_abs(locus::locus_residual(pair_config(b, 1, Real(1))));
  auto sweep = stieltjes::shape_sweep({b, -b}, Real(1), Real(0), seed, 16);
  bool b_ok = locus_b < Real(1e-30) && sweep.min_over_shapes > Real(1e-2);
  // (c) double poles at a^8 = 3/80.
  BigComplex c = root(BigComplex(-sqrt(Real(3) / Real(80))), 4);
  auto cc = pair_config(c, 2, Real(51) / (Real(4) * sqrt(Real(15))));
  Real higher = num::max_abs(locus::higher_locus_residual(cc));
  bool c_ok = higher < Real(1e-30) && rel(pow(c, 8), BigComplex(Real(3) / Real(80))) < Real(1e-60);
  r.pass = a_ok && b_ok && c_ok;
  r.detail = "(a) max iterations=" + std::to_string(worst_iter) + (a_ok ? " ok" : " FAIL") + "; (b) locus=" +
             sci(locus_b) + " min over shapes=" + sci(sweep.min_over_shapes) + "; (c) higher-locus=" + sci(higher);
  return r;
}

CriterionResult stieltjes_criterion() {
  CriterionResult r{5, "non-Darboux Stieltjes solution", false, ""};
  QuasiRationalFunction init;
  init.mu = Real(0);
  init.eps = -1;
  init.zeros = {BigComplex(Real(0), Real(0.5)), BigComplex(Real(0), Real(-0.5))};
  init.poles = {BigComplex(1), BigComplex(-1)};
  auto sol = stieltjes::solve_stieltjes(2, 2, Real(0), -1, init, true, Real(1e-60));
  Real err(1);
  if (sol.converged) {
    BigComplex a2 = sol.psi.poles[0] * sol.psi.poles[0];
    BigComplex b2 = sol.psi.zeros[0] * sol.psi.zeros[0];
    BigComplex t = b2 / a2;
    Real s3 = sqrt(Real(3));
    BigComplex e1(Real(-2) + s3), e2(Real(-2) - s3);
    BigComplex e = abs(t - e1) < abs(t - e2) ? e1 : e2;
    err = max(rel(t, e), rel(a2 * a2, inverse(BigComplex(1) - e * e)));
  }
  auto m = darboux::classify_membership(2, Real(3), Real(0), num::default_tolerance());
  r.pass = sol.converged && err < Real(1e-20) && m.certified_nonmember;
  r.detail = "solver " + std::string(sol.converged ? "converged" : "failed") + " rel err=" + sci(err) +
             " membership=" + m.verdict();
  return r;
}

CriterionResult dynamics_criterion() {
  CriterionResult r{6, "nu=7 pole dynamics", false, ""};
  auto s0 = dynamics::closed_form_nu7(Real(1e-3), BigComplex(1), BigComplex(1));
  auto tr = dynamics::integrate(s0, Real(0.5));
  const Real w = sqrt(Real(2));
  Real traj(0), cm(0), H(0), Ht(0), dH(0);
  for (size_t i = 0; i < tr.states.size(); ++i) {
    const auto& st = tr.states[i];
    BigComplex X = st.points[0].z;
    traj = max(traj, abs(X * X - BigComplex(Real(0), -tan(w * st.t) / w)));
    const auto& d = tr.diagnostics[i];
    cm = max(cm, max(d.cm_zeros, d.cm_poles));
    H = max(H, abs(d.H));
    Ht = max(Ht, abs(d.H_tilde));
    dH = max(dH, abs(d.H - d.H_tilde));
  }
  const Real lim(1e-8);
  bool reached = !tr.stop && tr.states.back().t == Real(0.5);
  r.pass = reached && traj < lim && cm < lim && H < lim && Ht < lim && dH < lim;
  r.detail = std::to_string(tr.states.size()) + " samples on [1e-3, 0.5], trajectory err=" + sci(traj) +
             " cm=" + sci(cm) + " |H|=" + sci(H) + " |H~|=" + sci(Ht) + " |H-H~|=" + sci(dH);
  return r;
}

// Random Stieltjes solutions from four solvable ansatz shapes.
std::optional<QuasiRationalFunction> random_stieltjes_solution(std::mt19937_64& rng, const Real& tol) {
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_real_distribution<double> jitter(-0.15, 0.15);
  QuasiRationalFunction init;
  init.mu = Real(0);
  bool symmetric = true;
  switch (pick(rng)) {
    case 0:
      init.eps = 1;
      init.poles = {BigComplex(Real(0.84 + jitter(rng)), Real(jitter(rng)))};
      init.poles.push_back(-init.poles[0]);
      break;
    case 1:
      init.eps = -1;
      init.zeros = {BigComplex(Real(jitter(rng)), Real(0.5 + jitter(rng)))};
      init.poles = {BigComplex(Real(1.0 + jitter(rng)), Real(jitter(rng)))};
      init.zeros.push_back(-init.zeros[0]);
      init.poles.push_back(-init.poles[0]);
      break;
    case 2:
      init.eps = -1;
      init.zeros = {BigComplex(Real(0.84 + jitter(rng)), Real(jitter(rng)))};
      init.zeros.push_back(-init.zeros[0]);
      break;
    default: {
      init.eps = -1;
      BigComplex w(Real(-0.5), sqrt(Real(3)) / Real(2));
      BigComplex x1 = root(inverse(BigComplex(1) - w), 4);
      init.zeros = {w * x1 + BigComplex(Real(0.3 * jitter(rng)), Real(0.3 * jitter(rng)))};
      init.poles = {x1 + BigComplex(Real(0.3 * jitter(rng)), Real(0.3 * jitter(rng)))};
      symmetric = false;
    }
  }
  auto sol = stieltjes::solve_stieltjes(init, symmetric, tol);
  if (!sol.converged) return std::nullopt;
  return sol.psi;
}

dynamics::DynamicsState random_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  std::uniform_int_distribution<int> count(1, 3);
  for (;;) {
    dynamics::DynamicsState s;
    s.t = Real(0);
    s.eps = u(rng) > 0 ? 1 : -1;
    s.mu = Real(0.5 * std::floor(u(rng) * 3));
    int Z = count(rng), P = count(rng) - 1;
    for (int k = 0; k < Z + P; ++k) s.points.push_back({BigComplex(Real(u(rng)), Real(u(rng))), k < Z ? 1 : -1});
    if (dynamics::relative_gap(s) > Real(0.15)) return s;
  }
}

CriterionResult property_criterion(std::uint64_t seed) {
  CriterionResult r{7, "property suites", false, ""};
  std::mt19937_64 rng(seed);
  std::ostringstream detail;
  bool all = true;

  // Stieltjes => locus and Riccati certification on solver outputs.
  {
    const Real tol(1e-50);
    int n = 0, attempts = 0, implication = 0, riccati = 0;
    while (n < 100 && attempts < 400) {
      ++attempts;
      auto psi = random_stieltjes_solution(rng, tol);
      if (!psi) continue;
      ++n;
      auto rep = stieltjes::stieltjes_implies_locus(*psi, tol);
      if (rep.locus_ok && rep.monodromy.satisfied) ++implication;
      if (rep.riccati_ok) ++riccati;
    }
    bool ok = n == 100 && implication == 100 && riccati == 100;
    all = all && ok;
    detail << "implication " << implication << "/" << n << ", riccati " << riccati << "/" << n;
  }
  // Generating-function gradients, central differences with step 1e-6.
  {
    const Real h(1e-6);
    Real worst(0), worst_mom(0);
    for (int i = 0; i < 100; ++i) {
      auto g = dynamics::generating_function_check(random_state(rng), h);
      worst = max(worst, g.fd_error);
      worst_mom = max(worst_mom, g.momentum_error);
    }
    bool ok = worst < Real(1e4) * h * h && worst_mom < Real(1e-60);
    all = all && ok;
    detail << "; gradient fd err " << sci(worst) << " (bound 1e4 h^2), momenta " << sci(worst_mom);
  }
  // Darboux descendants are monodromy-free.
  {
    const Real tol = num::default_tolerance();
    std::uniform_int_distribution<int> lpick(0, 2), Mpick(2, 4), fpick(0, 3);
    int n = 0, good = 0;
    while (n < 100) {
      int l = lpick(rng), M = Mpick(rng);
      Family f = static_cast<Family>(fpick(rng));
      int eps = darboux::family_eps(f);
      Branch b = darboux::family_branch(f);
      int sigma = b == Branch::MinusL ? 1 : -1;
      Real nu = Real(-eps) * (Real(4 * M) - Real(sigma * (2 * l + 1)));
      qes::QESSpectrum s;
      try {
        s = qes::qes_spectrum({nu, Real(l), eps, b}, tol);
      } catch (const Error&) {
        continue;
      }
      auto subsets = darboux::ordered_subsets(M);
      std::uniform_int_distribution<size_t> spick(1, subsets.size() - 1);
      auto d = darboux::crum_potential(RationalPotential::sextic(nu, Real(l)), subsets[spick(rng)], s, tol);
      ++n;
      if (locus::trivial_monodromy_check(d.potential, Real(1e-30)).satisfied) ++good;
    }
    all = all && good == 100;
    detail << "; descendants monodromy-free " << good << "/100";
  }
  // Integer characteristic polynomials on the full grid l = 0..4, M = 1..5, four families.
  {
    int n = 0, good = 0;
    for (int l = 0; l <= 4; ++l) {
      for (int M = 1; M <= 5; ++M) {
        for (Family f : {Family::PP, Family::PM, Family::MP, Family::MM}) {
          int eps = darboux::family_eps(f);
          Branch b = darboux::family_branch(f);
          int sigma = b == Branch::MinusL ? 1 : -1;
          Real nu = Real(-eps) * (Real(4 * M) - Real(sigma * (2 * l + 1)));
          Poly cp = qes::characteristic_polynomial({nu, Real(l), eps, b}, M);
          bool ok = cp.degree() == M;
          for (const auto& c : cp.coeffs()) ok = ok && c.im.is_zero() && c.re == round(c.re);
          ++n;
          if (ok) ++good;
        }
      }
    }
    all = all && good == n && n == 100;
    detail << "; integer char_poly " << good << "/" << n;
  }
  r.pass = all;
  r.detail = detail.str();
  return r;
}

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
  try {
    switch (id) {
      case 1: return qes_criterion();
      case 2: return crum_criterion();
      case 3: return structure_criterion();
      case 4: return locus_criterion(seed);
      case 5: return stieltjes_criterion();
      case 6: return dynamics_criterion();
      case 7: return property_criterion(seed);
      default: throw Error(ErrorCode::InvalidArgument, "criteria are numbered 1 to 7");
    }
  } catch (const Error& e) {
    if (id < 1 || id > 7) throw;
    return {id, "criterion " + std::to_string(id), false, std::string("error: ") + e.what()};
  }
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 7; ++id) out.push_back(run_criterion(id, seed));
  return out;
}

std::string format_line(const CriterionResult& r) {
  return "criterion " + std::to_string(r.id) + " " + r.name + ": " + (r.pass ? "PASS" : "FAIL") + " (" + r.detail + ")";
}

}  // namespace sextic::repro
