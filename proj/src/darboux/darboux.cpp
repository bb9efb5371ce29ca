#include "darboux/darboux.hpp"

#include "exactnum/errors.hpp"
#include "exactnum/roots.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <thread>

namespace sextic::darboux {

Family family_of(int eps, Branch branch) {
  bool plus1 = eps < 0;
  bool plus2 = branch == Branch::MinusL;
  if (plus1) return plus2 ? Family::PP : Family::PM;
  return plus2 ? Family::MP : Family::MM;
}

int family_eps(Family f) { return (f == Family::PP || f == Family::PM) ? -1 : 1; }

Branch family_branch(Family f) {
  return (f == Family::PP || f == Family::MP) ? Branch::MinusL : Branch::LPlusOne;
}

std::string to_string(Family f) {
  switch (f) {
    case Family::PP: return "D++";
    case Family::PM: return "D+-";
    case Family::MP: return "D-+";
    case Family::MM: return "D--";
  }
  return "?";
}

std::optional<Family> family_from_string(const std::string& s) {
  for (Family f : {Family::PP, Family::PM, Family::MP, Family::MM}) {
    if (s == to_string(f)) return f;
  }
  if (s == "pp") return Family::PP;
  if (s == "pm") return Family::PM;
  if (s == "mp") return Family::MP;
  if (s == "mm") return Family::MM;
  return std::nullopt;
}

FamilyLaw family_parameter_law(Family f, const Real& nu, const Real& ell, int m) {
  if (m < 0) throw Error(ErrorCode::InvalidArgument, "subset size must be nonnegative");
  const int eps = family_eps(f);
  const Branch b = family_branch(f);
  FamilyLaw law;
  law.new_nu = nu + Real(6 * eps * m);
  law.new_ell = b == Branch::LPlusOne ? ell + Real(m) : ell - Real(m);
  law.M = QESProblem{nu, ell, eps, b}.raw_count();
  return law;
}

DualTriple dual_parameters(const Real& nu, const Real& ell, int M) {
  return {nu - Real(6 * M), ell + Real(M), -M};
}

DualTriple reflect_parameters(const Real& nu, const Real& ell, int M) { return {nu, Real(-1) - ell, M}; }

QESProblem dual_problem(const QESProblem& p, int M) {
  Family f = family_of(p.eps, p.branch);
  FamilyLaw law = family_parameter_law(f, p.nu, p.ell, M);
  Branch flipped = p.branch == Branch::MinusL ? Branch::LPlusOne : Branch::MinusL;
  return {law.new_nu, law.new_ell, -p.eps, flipped};
}

Poly poly_wronskian(const std::vector<Poly>& polys) {
  const size_t m = polys.size();
  if (m == 0) return Poly::constant(BigComplex(1));
  // derivs[r][j] = P_j^(r)
  std::vector<std::vector<Poly>> derivs(m, std::vector<Poly>(m));
  for (size_t j = 0; j < m; ++j) {
    derivs[0][j] = polys[j];
    for (size_t r = 1; r < m; ++r) derivs[r][j] = derivs[r - 1][j].derivative();
  }
  // dp[mask]: signed sum over assignments of rows 0..popcount(mask)-1 to the
  // columns in mask.
  const size_t full = (size_t{1} << m) - 1;
  std::vector<Poly> dp(full + 1);
  std::vector<char> seen(full + 1, 0);
  dp[0] = Poly::constant(BigComplex(1));
  seen[0] = 1;
  for (size_t mask = 0; mask < full; ++mask) {
    if (!seen[mask] || dp[mask].is_zero()) continue;
    const size_t row = static_cast<size_t>(std::popcount(mask));
    for (size_t j = 0; j < m; ++j) {
      if (mask & (size_t{1} << j)) continue;
      int above = std::popcount(mask >> (j + 1));
      Poly term = dp[mask] * derivs[row][j];
      size_t next = mask | (size_t{1} << j);
      if (above % 2) term = -term;
      dp[next] = seen[next] ? dp[next] + term : term;
      seen[next] = 1;
    }
  }
  return dp[full];
}

WronskianResult wronskian(const std::vector<QuasiRationalFunction>& functions, const Real& tol) {
  WronskianResult w;
  const int m = static_cast<int>(functions.size());
  w.exp_multiplier = m;
  if (m == 0) {
    w.P_I = Poly::constant(BigComplex(1));
    return w;
  }
  const Real mu = functions[0].mu;
  w.eps = functions[0].eps;
  std::vector<Poly> polys;
  for (const auto& f : functions) {
    if (f.mu != mu || f.eps != w.eps) {
      throw Error(ErrorCode::InvalidArgument, "Wronskian inputs must share the origin exponent and exponential sign");
    }
    if (!f.poles.empty()) throw Error(ErrorCode::InvalidArgument, "Wronskian inputs must be quasi-polynomial");
    polys.push_back(f.numerator());
  }
  Poly W = poly_wronskian(polys);
  if (W.is_zero() || W.degree(tol) < 0) throw Error(ErrorCode::Degenerate, "Wronskian vanishes identically");
  W = W.trimmed(tol);
  w.x_power = W.low_order(tol);
  Poly P = W.shift_down(w.x_power);
  if (P.is_even(tol)) P = P.even_part();
  w.P_I = P;
  w.origin_exponent = Real(m) * mu + Real(w.x_power);
  return w;
}

WronskianResult subset_wronskian(const QESSpectrum& spectrum, const std::vector<int>& subset, const Real& tol) {
  std::vector<int> sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::InvalidArgument, "subset has repeated indices");
  }
  std::vector<QuasiRationalFunction> fs;
  for (int i : sorted) {
    if (i < 1 || i > spectrum.M) {
      throw Error(ErrorCode::InvalidArgument, "subset index " + std::to_string(i) + " outside 1.." + std::to_string(spectrum.M));
    }
    fs.push_back(qes::eigenfunction(spectrum, i - 1));
  }
  WronskianResult w = wronskian(fs, tol);
  w.eps = spectrum.problem.eps;
  w.subset = sorted;
  const int m = static_cast<int>(sorted.size());
  w.expected_degree = 2 * m * (spectrum.M - m);
  w.degree_ok = w.P_I.degree() == w.expected_degree;
  w.origin_nonzero = abs(w.P_I.coeff(0)) > tol * w.P_I.max_abs_coeff();
  w.exponent_ok = w.x_power == m * (m - 1) / 2;
  return w;
}

RationalFn crum_rational(const RationalPotential& base, const WronskianResult& w) {
  RationalFn v = base.to_rational();
  const int m = w.exp_multiplier;
  if (m == 0) return v;
  const Poly& P = w.P_I;
  Poly x2{0, 0, 1};
  Poly P1 = P.derivative();
  Poly P2 = P.derivative(2);
  // -2 (ln P)'' = -2 (P'' P - P'^2) / P^2 ; 2 e0 / x^2 ; -6 eps m x^2
  Poly num = P * P * BigComplex(Real(2) * w.origin_exponent) - x2 * (P2 * P - P1 * P1) * BigComplex(2);
  v = v + RationalFn(num, x2 * P * P);
  v = v + RationalFn(Poly::monomial(BigComplex(Real(-6 * w.eps * m)), 2));
  return v;
}

DarbouxDescendant crum_potential(const RationalPotential& base, const std::vector<int>& subset,
                                 const QESSpectrum& spectrum, const Real& tol) {
  DarbouxDescendant d;
  d.parent = spectrum.problem;
  d.family = family_of(spectrum.problem.eps, spectrum.problem.branch);
  d.wronskian = subset_wronskian(spectrum, subset, tol);
  d.subset = d.wronskian.subset;
  const int m = static_cast<int>(d.subset.size());
  FamilyLaw law = family_parameter_law(d.family, spectrum.problem.nu, spectrum.problem.ell, m);
  d.new_nu = law.new_nu;
  d.new_ell = law.new_ell;
  if (m == 0) {
    d.potential = base;
    return d;
  }

  RationalPotential v;
  v.poly = base.poly + Poly::monomial(BigComplex(Real(-6 * spectrum.problem.eps * m)), 2);
  v.ell = law.new_ell;
  v.poles = base.poles;
  v.symmetric = base.symmetric;

  Real origin_direct = base.origin_coefficient() + Real(2) * d.wronskian.origin_exponent;
  if (abs(origin_direct - v.origin_coefficient()) > tol * max(Real(1), abs(origin_direct))) {
    d.note += "origin coefficient differs from the family law; ";
  }

  if (d.wronskian.P_I.degree() >= 1) {
    for (const auto& r : num::poly_roots(d.wronskian.P_I, tol)) {
      // -2 (ln P)'' contributes 2k/(x - r)^2 for a root of multiplicity k.
      const int k = r.multiplicity;
      Pole pole;
      pole.location = r.value;
      pole.strength = BigComplex(Real(2 * k));
      pole.multiplicity = k;
      for (int j = 1; j * (j + 1) <= 2 * k; ++j) {
        if (j * (j + 1) == 2 * k) pole.multiplicity = j;
      }
      if (k > 1) {
        d.conjecture_flag = true;
        d.note += "root of P_I with multiplicity " + std::to_string(k) + "; ";
      }
      v.poles.push_back(pole);
    }
  }
  d.potential = v;
  d.representation_gap = num::rational_difference(v.to_rational(), crum_rational(base, d.wronskian));
  return d;
}

std::vector<std::vector<int>> ordered_subsets(int M) {
  std::vector<std::vector<int>> out;
  for (int size = 0; size <= M; ++size) {
    std::vector<int> cur(static_cast<size_t>(size));
    for (int i = 0; i < size; ++i) cur[static_cast<size_t>(i)] = i + 1;
    while (true) {
      out.push_back(cur);
      int i = size - 1;
      while (i >= 0 && cur[static_cast<size_t>(i)] == M - size + i + 1) --i;
      if (i < 0) break;
      ++cur[static_cast<size_t>(i)];
      for (int j = i + 1; j < size; ++j) cur[static_cast<size_t>(j)] = cur[static_cast<size_t>(j - 1)] + 1;
    }
  }
  return out;
}

std::vector<DarbouxDescendant> enumerate_darboux_set(const Real& nu0, const Real& ell0, Family family,
                                                     const Real& tol, unsigned workers) {
  QESProblem p{nu0, ell0, family_eps(family), family_branch(family)};
  QESSpectrum s = qes::qes_spectrum(p, tol);
  RationalPotential base = RationalPotential::sextic(nu0, ell0);
  auto subsets = ordered_subsets(s.M);
  std::vector<DarbouxDescendant> out(subsets.size());
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(subsets.size()));

  const unsigned bits = num::precision_bits();
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto job = [&] {
    num::PrecisionScope scope(bits);
    try {
      for (size_t i = next++; i < subsets.size(); i = next++) {
        out[i] = crum_potential(base, subsets[i], s, tol);
      }
    } catch (...) {
      if (!failed.exchange(true)) failure = std::current_exception();
    }
  };
  if (workers <= 1) {
    job();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(job);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

MembershipReport classify_membership(int N, const Real& nu, const Real& ell, const Real& tol) {
  if (N < 0 || N % 2 != 0) throw Error(ErrorCode::InvalidArgument, "pole count must be even and nonnegative");
  MembershipReport r;
  r.N = N;
  std::vector<std::pair<Family, std::optional<int>>> counts;
  for (Family f : {Family::PP, Family::PM, Family::MP, Family::MM}) {
    Real M = QESProblem{nu, ell, family_eps(f), family_branch(f)}.raw_count();
    Real rounded = round(M);
    std::optional<int> value;
    if (abs(M - rounded) <= tol * max(Real(1), abs(M))) {
      value = static_cast<int>(rounded.to_long());
      r.grid.emplace_back(f, *value);
    }
    counts.emplace_back(f, value);
  }
  if (N == 0) {
    for (const auto& [f, M] : r.grid) r.candidates.push_back({0, M, f});
  } else {
    const int half = N / 2;
    for (int m = 1; m <= half; ++m) {
      if (half % m != 0) continue;
      const int k = half / m;
      r.factorizations.emplace_back(m, k);
      // A descendant with |I| = m of a base with count M0 = m + k has count M0 - 2m.
      for (const auto& [f, M] : counts) {
        if (M && *M == k - m) r.candidates.push_back({m, m + k, f});
      }
    }
  }
  r.certified_nonmember = r.candidates.empty();
  return r;
}

ZeroAudit simple_zero_audit(const Poly& p, const Real& tol) {
  ZeroAudit a;
  a.degree = p.degree();
  if (p.degree() < 1) return a;
  auto roots = num::poly_roots(p, tol);
  for (const auto& r : roots) {
    ++a.histogram[r.multiplicity];
    if (r.multiplicity > 1) a.all_simple = false;
  }
  bool first = true;
  for (size_t i = 0; i < roots.size(); ++i) {
    for (size_t j = i + 1; j < roots.size(); ++j) {
      Real d = abs(roots[i].value - roots[j].value);
      if (first || d < a.min_distance) a.min_distance = d;
      first = false;
    }
  }
  return a;
}

ZeroAudit simple_zero_audit(const DarbouxDescendant& d, const Real& tol) {
  return simple_zero_audit(d.wronskian.P_I, tol);
}

}  // namespace sextic::darboux
