#pragma once

#include "model/potential.hpp"
#include "model/quasi_rational.hpp"
#include "qes/qes.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sextic::darboux {

using qes::Branch;
using qes::QESProblem;
using qes::QESSpectrum;

// D_{s1 s2} with s1 = -eps and s2 = sigma (+ for mu = -l, - for mu = l + 1).
enum class Family { PP, PM, MP, MM };

Family family_of(int eps, Branch branch);
int family_eps(Family f);
Branch family_branch(Family f);
std::string to_string(Family f);
std::optional<Family> family_from_string(const std::string& s);

struct FamilyLaw {
  Real new_nu;
  Real new_ell;
  Real M;  // the family's (+-nu +- (2l + 1))/4 at the input parameters
};

FamilyLaw family_parameter_law(Family f, const Real& nu, const Real& ell, int m);

struct DualTriple {
  Real nu;
  Real ell;
  int M;
};

/// (nu - 6M, l + M, -M).
DualTriple dual_parameters(const Real& nu, const Real& ell, int M);
/// (nu, -1 - l, M): leaves l(l+1) alone.
DualTriple reflect_parameters(const Real& nu, const Real& ell, int M);

/// Problem whose full spectrum sits on the full-subset descendant: both eps
/// and the mu-branch flip, and the count stays M.
QESProblem dual_problem(const QESProblem& p, int M);

struct WronskianResult {
  Real origin_exponent;  // total power of x pulled out of W
  int x_power = 0;       // the part of it coming from the polynomial Wronskian
  Poly P_I;
  int exp_multiplier = 0;  // W carries exp(eps m x^4 / 4)
  int eps = -1;
  std::vector<int> subset;  // 1-based, sorted
  int expected_degree = -1;
  bool origin_nonzero = true;
  bool degree_ok = true;
  bool exponent_ok = true;
};

/// Polynomial Wronskian of P_1..P_m by Laplace expansion over column subsets.
Poly poly_wronskian(const std::vector<Poly>& polys);

/// Wronskian of x^mu P_i exp(eps x^4/4) with the prefactor pulled out.
WronskianResult wronskian(const std::vector<QuasiRationalFunction>& functions, const Real& tol);

/// The same for a subset of a spectrum, with the structure checks filled in.
WronskianResult subset_wronskian(const QESSpectrum& spectrum, const std::vector<int>& subset, const Real& tol);

struct DarbouxDescendant {
  RationalPotential potential;
  QESProblem parent;
  std::vector<int> subset;
  Real new_nu;
  Real new_ell;
  Family family = Family::PP;
  WronskianResult wronskian;
  // max coefficient gap between the assembled potential and base - 2 (ln W)''
  Real representation_gap;
  bool conjecture_flag = false;
  std::string note;
};

/// base - 2 (ln W)'' as one rational function.
RationalFn crum_rational(const RationalPotential& base, const WronskianResult& w);

DarbouxDescendant crum_potential(const RationalPotential& base, const std::vector<int>& subset,
                                 const QESSpectrum& spectrum, const Real& tol);

/// All 2^M subsets ordered by size, then lexicographically.
std::vector<std::vector<int>> ordered_subsets(int M);

std::vector<DarbouxDescendant> enumerate_darboux_set(const Real& nu0, const Real& ell0, Family family,
                                                     const Real& tol, unsigned workers = 0);

struct Candidate {
  int m = 0;
  int M0 = 0;
  Family family = Family::PP;
};

struct MembershipReport {
  int N = 0;
  std::vector<std::pair<Family, int>> grid;  // families whose M is an integer
  std::vector<std::pair<int, int>> factorizations;  // (m, k) with m k = N/2
  std::vector<Candidate> candidates;
  bool certified_nonmember = false;
  std::string verdict() const { return certified_nonmember ? "certified-nonmember" : "candidate-member"; }
};

MembershipReport classify_membership(int N, const Real& nu, const Real& ell, const Real& tol);

struct ZeroAudit {
  std::map<int, int> histogram;  // multiplicity -> count
  Real min_distance;             // among distinct roots; 0 when fewer than two
  bool all_simple = true;
  int degree = 0;
};

ZeroAudit simple_zero_audit(const DarbouxDescendant& d, const Real& tol);
ZeroAudit simple_zero_audit(const Poly& p, const Real& tol);

}  // namespace sextic::darboux
