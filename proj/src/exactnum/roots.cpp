#include "exactnum/roots.hpp"

#include "exactnum/errors.hpp"

#include <algorithm>
#include <numeric>

namespace sextic::num {

namespace {

// p(z) and p'(z) by one Horner pass.
void horner2(const Poly& p, const BigComplex& z, BigComplex& value, BigComplex& deriv) {
  const auto& c = p.coeffs();
  value = BigComplex();
  deriv = BigComplex();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    deriv *= z;
    deriv += value;
    value *= z;
    value += *it;
  }
}

std::vector<BigComplex> aberth(const Poly& p, int max_iterations) {
  const int n = p.degree();
  std::vector<BigComplex> z(static_cast<size_t>(n));
  if (n == 1) {
    z[0] = -p.coeff(0) / p.coeff(1);
    return z;
  }

  const Real radius = fujiwara_bound(p);
  const Real two_pi = Real::pi() * Real(2);
  for (int k = 0; k < n; ++k) {
    // Offset angle and slightly varying radius break the symmetry of
    // even/odd polynomials, where a symmetric start can stall.
    Real angle = two_pi * Real(k) / Real(n) + Real(0.4);
    Real r = radius * (Real(1) - Real(0.01) * Real(k % 3) / Real(n));
    z[static_cast<size_t>(k)] = BigComplex::polar(r, angle);
  }

  const Real eps = Real::epsilon();
  const Real n_real(n);
  std::vector<char> done(static_cast<size_t>(n), 0);
  BigComplex value, deriv;

  for (int iter = 0; iter < max_iterations; ++iter) {
    bool all_done = true;
    for (int k = 0; k < n; ++k) {
      auto ku = static_cast<size_t>(k);
      if (done[ku]) continue;
      auto [pv, bound] = p.eval_with_bound(z[ku]);
      if (abs(pv) <= Real(16) * n_real * eps * bound) {
        done[ku] = 1;
        continue;
      }
      horner2(p, z[ku], value, deriv);
      if (deriv.is_zero()) {
        // Stationary point of p: nudge and try again next sweep.
        z[ku] += BigComplex(radius * Real(1e-3), radius * Real(1e-3));
        all_done = false;
        continue;
      }
      BigComplex w = value / deriv;
      BigComplex sum;
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        BigComplex d = z[ku] - z[static_cast<size_t>(j)];
        if (!d.is_zero()) sum += inverse(d);
      }
      BigComplex step = w / (BigComplex(1) - w * sum);
      z[ku] -= step;
      if (abs(step) <= Real(8) * eps * abs(z[ku])) {
        done[ku] = 1;
      } else {
        all_done = false;
      }
    }
    if (all_done) return z;
  }
  if (std::all_of(done.begin(), done.end(), [](char d) { return d != 0; })) return z;
  throw Error(ErrorCode::NonConvergence,
              "Aberth iteration did not converge in " + std::to_string(max_iterations) + " iterations");
}

// Newton on p^(k-1) starting from a cluster centroid; a root of
// multiplicity k is a simple root there.
BigComplex polish(const Poly& p, int k, BigComplex z) {
  Poly q = k > 1 ? p.derivative(k - 1) : p;
  const Real eps = Real::epsilon();
  BigComplex value, deriv;
  for (int it = 0; it < 20; ++it) {
    horner2(q, z, value, deriv);
    if (deriv.is_zero()) break;
    BigComplex step = value / deriv;
    z -= step;
    if (abs(step) <= Real(4) * eps * max(abs(z), Real(1))) break;
  }
  return z;
}

}  // namespace

Real fujiwara_bound(const Poly& p) {
  const int n = p.degree();
  Real lead = abs(p.leading());
  Real best;
  for (int k = 1; k <= n; ++k) {
    Real c = abs(p.coeff(n - k)) / lead;
    if (k == n) c /= Real(2);
    if (c.is_zero()) continue;
    Real candidate = root(c, static_cast<unsigned long>(k));
    if (candidate > best) best = candidate;
  }
  best *= Real(2);
  return best.is_zero() ? Real(1) : best;
}

std::vector<Root> poly_roots(const Poly& p, const Real& tol, const RootOptions& opts) {
  if (p.degree() < 1) {
    throw Error(ErrorCode::InvalidArgument, "poly_roots needs degree at least 1");
  }
  int zero_mult = 0;
  while (p.coeff(zero_mult).is_zero()) ++zero_mult;
  Poly q = p.shift_down(zero_mult);

  std::vector<BigComplex> raw;
  if (q.degree() >= 1) raw = aberth(q, opts.max_iterations);

  // Greedy clustering: a group of k approximations of one root is spread over
  // roughly eps^(1/k), so the admission radius grows with the group size.
  std::vector<std::vector<size_t>> clusters;
  std::vector<char> used(raw.size(), 0);
  for (size_t i = 0; i < raw.size(); ++i) {
    if (used[i]) continue;
    std::vector<size_t> members{i};
    used[i] = 1;
    BigComplex centre = raw[i];
    bool grew = true;
    while (grew) {
      grew = false;
      Real radius = pow(tol, Real(1) / Real(static_cast<long>(members.size() + 1))) * max(Real(1), abs(centre));
      for (size_t j = 0; j < raw.size(); ++j) {
        if (used[j]) continue;
        if (abs(raw[j] - centre) < radius) {
          members.push_back(j);
          used[j] = 1;
          BigComplex sum;
          for (size_t m : members) sum += raw[m];
          centre = sum / Real(static_cast<long>(members.size()));
          grew = true;
          break;
        }
      }
    }
    clusters.push_back(std::move(members));
  }

  std::vector<Root> out;
  if (zero_mult > 0) out.push_back({BigComplex(), zero_mult});
  for (const auto& members : clusters) {
    BigComplex sum;
    for (size_t m : members) sum += raw[m];
    const int k = static_cast<int>(members.size());
    BigComplex centre = sum / Real(k);
    if (k == 1) {
      out.push_back({raw[members[0]], 1});
    } else {
      out.push_back({opts.polish_multiple ? polish(q, k, centre) : centre, k});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
    if (a.value.re != b.value.re) return a.value.re < b.value.re;
    return a.value.im < b.value.im;
  });
  return out;
}

std::vector<BigComplex> flatten(const std::vector<Root>& roots) {
  std::vector<BigComplex> out;
  for (const auto& r : roots) {
    for (int k = 0; k < r.multiplicity; ++k) out.push_back(r.value);
  }
  return out;
}

}  // namespace sextic::num
