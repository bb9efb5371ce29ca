#include "locus/locus.hpp"

#include "exactnum/linalg.hpp"
#include "exactnum/roots.hpp"

#include <algorithm>

namespace sextic::locus {

using num::Matrix;

RationalPotential PoleConfiguration::potential() const {
  RationalPotential v = RationalPotential::sextic(nu, ell);
  v.symmetric = symmetric;
  for (const auto& p : points) v.add_pole(p.x, p.k);
  return v;
}

std::vector<BigComplex> PoleConfiguration::locations() const {
  std::vector<BigComplex> out;
  for (const auto& p : points) out.push_back(p.x);
  return out;
}

namespace {

// Solves m(m+1) = c for a nonnegative integer m; -1 if there is none.
int triangular_index(const BigComplex& c, const Real& tol) {
  if (abs(c.im) > tol * max(Real(1), abs(c.re))) return -1;
  Real m = (sqrt(Real(1) + Real(4) * c.re) - Real(1)) / Real(2);
  if (!m.is_finite()) return -1;
  Real r = round(m);
  if (r.sign() < 0 || abs(m - r) > tol * max(Real(1), abs(m))) return -1;
  return static_cast<int>(r.to_long());
}

bool integer_ell(const Real& ell, const Real& tol) { return abs(ell - round(ell)) <= tol; }

struct Centre {
  BigComplex location;
  BigComplex strength;
};

// Taylor/Laurent coefficient of order n (n >= -2) at x0 of
// poly + sum strength/(x - c)^2, where x0 may coincide with one centre.
class PotentialSeries {
public:
  PotentialSeries(const RationalPotential& v) : poly_(v.poly) {  // NOLINT
    Real c = v.origin_coefficient();
    if (!c.is_zero()) centres_.push_back({BigComplex(), BigComplex(c)});
    for (const auto& p : v.poles) centres_.push_back({p.location, p.strength});
  }

  const std::vector<Centre>& centres() const { return centres_; }

  std::vector<BigComplex> coefficients(size_t self, const std::vector<int>& orders) const {
    const BigComplex& x0 = centres_[self].location;
    Poly shifted = poly_.taylor_shift(x0);
    std::vector<BigComplex> out;
    for (int n : orders) {
      BigComplex acc;
      if (n == -2) acc = centres_[self].strength;
      if (n >= 0) {
        acc = shifted.coeff(n);
        for (size_t j = 0; j < centres_.size(); ++j) {
          if (j == self) continue;
          // s/(x0 + h - c)^2 = s sum (n+1)(-h)^n / (x0 - c)^(n+2)
          BigComplex d = x0 - centres_[j].location;
          BigComplex term = centres_[j].strength * Real(n + 1) / pow(d, n + 2);
          if (n % 2) term = -term;
          acc += term;
        }
      }
      out.push_back(acc);
    }
    return out;
  }

private:
  Poly poly_;
  std::vector<Centre> centres_;
};

void finish(LocusReport& r, const Real& tol) {
  r.max_abs = Real(0);
  for (const auto& p : r.points) {
    for (size_t i = 0; i < p.orders.size(); ++i) {
      if (p.orders[i] == -2) continue;
      r.max_abs = max(r.max_abs, abs(p.coefficients[i]));
    }
  }
  if (r.max_abs > tol) r.satisfied = false;
}

std::vector<int> odd_orders(int m) {
  std::vector<int> orders{-2, -1};
  for (int k = 1; k <= 2 * m - 1; k += 2) orders.push_back(k);
  return orders;
}

}  // namespace

LocusReport trivial_monodromy_check(const RationalPotential& v, const Real& tol) {
  LocusReport r;
  PotentialSeries series(v);
  const Real structural = num::default_tolerance();
  const bool check_origin = integer_ell(v.ell, structural);
  for (size_t i = 0; i < series.centres().size(); ++i) {
    const auto& c = series.centres()[i];
    const bool at_origin = c.location.is_zero();
    if (at_origin && !check_origin) continue;
    PointReport p;
    p.location = c.location;
    p.leading = c.strength.re;
    p.m = triangular_index(c.strength, structural);
    if (p.m < 0) {
      r.satisfied = false;
      r.diagnostic += "leading coefficient at " + c.location.to_string(12) + " is not m(m+1); ";
      p.orders = {-2};
      p.coefficients = {c.strength};
    } else {
      p.orders = odd_orders(p.m);
      p.coefficients = series.coefficients(i, p.orders);
    }
    r.points.push_back(std::move(p));
  }
  finish(r, tol);
  return r;
}

LocusReport trivial_monodromy_check(const RationalFn& v, const Real& tol) {
  LocusReport r;
  const Real structural = num::default_tolerance();
  RationalFn f = num::rational_reduce(v, structural);
  if (f.den().degree() >= 1) {
    for (const auto& root : num::poly_roots(f.den(), structural)) {
      if (root.multiplicity > 2) {
        throw Error(ErrorCode::Malformed, "pole of order " + std::to_string(root.multiplicity) + " at " +
                                              root.value.to_string(12));
      }
      PointReport p;
      p.location = root.value;
      auto lead = num::laurent_expand(f, root.value, -2, 1, structural);
      p.m = root.multiplicity == 2 ? triangular_index(lead.at(-2), structural) : 0;
      p.leading = lead.at(-2).re;
      if (p.m < 0) {
        r.satisfied = false;
        r.diagnostic += "leading coefficient at " + root.value.to_string(12) + " is not m(m+1); ";
        p.orders = {-2};
        p.coefficients = {lead.at(-2)};
      } else {
        p.orders = odd_orders(std::max(p.m, 0));
        int top = p.orders.back();
        auto s = num::laurent_expand(f, root.value, -2, top + 3, structural);
        for (int o : p.orders) p.coefficients.push_back(s.at(o));
      }
      r.points.push_back(std::move(p));
    }
  }
  finish(r, tol);
  return r;
}

std::vector<BigComplex> locus_residual(const PoleConfiguration& c) {
  for (const auto& p : c.points) {
    if (p.k != 1) throw Error(ErrorCode::InvalidArgument, "locus_residual needs simple poles; use higher_locus_residual");
  }
  const BigComplex origin(c.ell * (c.ell + Real(1)));
  const BigComplex nu(c.nu);
  std::vector<BigComplex> out;
  for (size_t i = 0; i < c.points.size(); ++i) {
    const BigComplex& xi = c.points[i].x;
    BigComplex acc = nu * xi - pow(xi, 5) * Real(3);
    if (!origin.is_zero()) acc += origin / pow(xi, 3);
    for (size_t j = 0; j < c.points.size(); ++j) {
      if (j == i) continue;
      acc += BigComplex(2) / pow(xi - c.points[j].x, 3);
    }
    out.push_back(acc);
  }
  return out;
}

std::vector<BigComplex> higher_locus_residual(const PoleConfiguration& c) {
  const Poly P{0, 0, BigComplex(-c.nu), 0, 0, 0, 1};
  const Real origin = c.ell * (c.ell + Real(1));
  std::vector<BigComplex> out;
  for (size_t i = 0; i < c.points.size(); ++i) {
    const BigComplex& xi = c.points[i].x;
    for (int s = 1; s <= c.points[i].k; ++s) {
      BigComplex acc = P.derivative(2 * s - 1)(xi);
      BigComplex sum;
      if (!origin.is_zero()) sum += BigComplex(origin) / pow(xi, 2 * s + 1);
      for (size_t j = 0; j < c.points.size(); ++j) {
        if (j == i) continue;
        int kj = c.points[j].k;
        sum += BigComplex(Real(kj * (kj + 1))) / pow(xi - c.points[j].x, 2 * s + 1);
      }
      acc -= sum * num::factorial(static_cast<unsigned>(2 * s));
      out.push_back(acc);
    }
  }
  return out;
}

Real relative_separation(const std::vector<BigComplex>& xs) {
  Real scale(1);
  for (const auto& x : xs) scale = max(scale, abs(x));
  Real best;
  bool first = true;
  for (size_t i = 0; i < xs.size(); ++i) {
    Real d0 = abs(xs[i]);
    if (first || d0 < best) best = d0;
    first = false;
    for (size_t j = i + 1; j < xs.size(); ++j) {
      Real d = abs(xs[i] - xs[j]);
      if (d < best) best = d;
    }
  }
  return first ? Real(1) : best / scale;
}

namespace {

// Jacobian of locus_residual with respect to the point positions.
Matrix locus_jacobian(const PoleConfiguration& c) {
  const size_t n = c.points.size();
  const BigComplex origin(c.ell * (c.ell + Real(1)));
  Matrix J = num::zeros(n, n);
  for (size_t i = 0; i < n; ++i) {
    const BigComplex& xi = c.points[i].x;
    BigComplex diag = BigComplex(c.nu) - pow(xi, 4) * Real(15);
    if (!origin.is_zero()) diag -= origin * Real(3) / pow(xi, 4);
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      BigComplex t = BigComplex(6) / pow(xi - c.points[j].x, 4);
      diag -= t;
      J[i][j] = t;
    }
    J[i][i] = diag;
  }
  return J;
}

// partner[i] = index of -x_i, or -1 when the configuration is not symmetric.
std::vector<int> negation_partners(const PoleConfiguration& c, const Real& tol) {
  const size_t n = c.points.size();
  std::vector<int> partner(n, -1);
  Real scale(1);
  for (const auto& p : c.points) scale = max(scale, abs(p.x));
  for (size_t i = 0; i < n; ++i) {
    if (partner[i] >= 0) continue;
    for (size_t j = i + 1; j < n; ++j) {
      if (partner[j] >= 0) continue;
      if (abs(c.points[i].x + c.points[j].x) <= tol * scale) {
        partner[i] = static_cast<int>(j);
        partner[j] = static_cast<int>(i);
        break;
      }
    }
    if (partner[i] < 0) return {};
  }
  return partner;
}

}  // namespace

SolveResult solve_locus_newton(const PoleConfiguration& init, const Real& tol, const NewtonOptions& opts) {
  for (const auto& p : init.points) {
    if (p.k != 1) throw Error(ErrorCode::InvalidArgument, "Newton solve supports simple poles only");
  }
  SolveResult out;
  out.config = init;
  PoleConfiguration& c = out.config;
  const size_t n = c.points.size();

  // Unknowns: all points, or one representative per +-pair in symmetric mode.
  std::vector<size_t> reps;
  std::vector<int> partner;
  if (init.symmetric) {
    partner = negation_partners(init, Real(1e-20));
    if (partner.empty()) throw Error(ErrorCode::InvalidArgument, "symmetric flag set but points are not closed under negation");
    for (size_t i = 0; i < n; ++i) {
      if (partner[i] > static_cast<int>(i)) reps.push_back(i);
    }
    // Snap the mirror images exactly.
    for (size_t r : reps) c.points[static_cast<size_t>(partner[r])].x = -c.points[r].x;
  } else {
    for (size_t i = 0; i < n; ++i) reps.push_back(i);
  }

  auto reduced_residual = [&](const PoleConfiguration& cfg) {
    auto full = locus_residual(cfg);
    std::vector<BigComplex> r;
    for (size_t i : reps) r.push_back(full[i]);
    return r;
  };
  auto apply = [&](const PoleConfiguration& base, const std::vector<BigComplex>& delta, const Real& t) {
    PoleConfiguration next = base;
    for (size_t p = 0; p < reps.size(); ++p) {
      next.points[reps[p]].x = base.points[reps[p]].x + delta[p] * t;
      if (!partner.empty()) next.points[static_cast<size_t>(partner[reps[p]])].x = -next.points[reps[p]].x;
    }
    return next;
  };

  auto r = reduced_residual(c);
  Real res = num::max_abs(r);
  for (int iter = 0;; ++iter) {
    out.residual = res;
    out.iterations = iter;
    if (res < tol) {
      out.converged = true;
      return out;
    }
    if (iter >= opts.max_iter) {
      out.failure = ErrorCode::NonConvergence;
      out.diagnostic = "iteration cap reached with residual " + res.to_string(6);
      return out;
    }
    Matrix full = locus_jacobian(c);
    Matrix J = num::zeros(reps.size(), reps.size());
    for (size_t p = 0; p < reps.size(); ++p) {
      for (size_t q = 0; q < reps.size(); ++q) {
        J[p][q] = full[reps[p]][reps[q]];
        if (!partner.empty()) J[p][q] -= full[reps[p]][static_cast<size_t>(partner[reps[q]])];
      }
    }
    std::vector<BigComplex> rhs;
    for (const auto& v : r) rhs.push_back(-v);
    std::vector<BigComplex> delta;
    try {
      delta = num::solve_linear(J, rhs, Real(1e-60));
    } catch (const Error& e) {
      out.failure = e.code();
      out.diagnostic = e.what();
      return out;
    }

    Real norm0 = num::norm2(r);
    Real t(1);
    bool accepted = false;
    PoleConfiguration trial;
    std::vector<BigComplex> trial_r;
    for (int h = 0; h <= opts.max_halvings; ++h) {
      trial = apply(c, delta, t);
      if (relative_separation(trial.locations()) >= Real(opts.collision_threshold)) {
        trial_r = reduced_residual(trial);
        if (num::norm2(trial_r) < norm0) {
          accepted = true;
          break;
        }
      }
      t /= Real(2);
    }
    if (!accepted) {
      bool collided = relative_separation(apply(c, delta, Real(1)).locations()) < Real(opts.collision_threshold);
      out.failure = collided ? ErrorCode::Collision : ErrorCode::NonConvergence;
      out.diagnostic = collided ? "points collide along the Newton direction" : "line search failed to reduce the residual";
      return out;
    }
    out.log.push_back({iter, res, num::max_abs(delta) * t, t});
    c = std::move(trial);
    r = std::move(trial_r);
    res = num::max_abs(r);
  }
}

ContinuationResult homotopy_continue(const PoleConfiguration& start, const std::vector<Real>& nu_path, const Real& tol,
                                     const NewtonOptions& opts) {
  ContinuationResult out;
  if (nu_path.empty()) return out;
  PoleConfiguration cur = start;
  cur.nu = nu_path[0];
  auto first = solve_locus_newton(cur, tol, opts);
  if (!first.converged) {
    out.truncated = true;
    out.failure = first.failure;
    out.diagnostic = "start does not satisfy the locus: " + first.diagnostic;
    return out;
  }
  cur = first.config;
  out.nus.push_back(cur.nu);
  out.branch.push_back(cur);
  out.residuals.push_back(first.residual);

  const Real min_fraction(1e-8);
  for (size_t k = 1; k < nu_path.size(); ++k) {
    const Real target = nu_path[k];
    const Real span = target - cur.nu;
    Real h = span;
    while (cur.nu != target) {
      if (abs(h) < min_fraction * max(abs(span), Real(1e-30))) {
        out.truncated = true;
        out.failure = ErrorCode::StepUnderflow;
        out.diagnostic = "step size underflow near nu = " + cur.nu.to_string(12);
        return out;
      }
      if (abs(target - cur.nu) < abs(h)) h = target - cur.nu;
      // Predictor: dx/dnu = -J^{-1} dr/dnu, and dr_i/dnu = x_i.
      PoleConfiguration pred = cur;
      try {
        Matrix J = locus_jacobian(cur);
        std::vector<BigComplex> b;
        for (const auto& p : cur.points) b.push_back(-p.x);
        auto dx = num::solve_linear(J, b, Real(1e-60));
        for (size_t i = 0; i < pred.points.size(); ++i) pred.points[i].x += dx[i] * h;
      } catch (const Error&) {
        // fall back to a zeroth-order predictor
      }
      pred.nu = cur.nu + h;
      if (relative_separation(pred.locations()) < Real(opts.collision_threshold)) {
        h /= Real(2);
        if (relative_separation(cur.locations()) < Real(opts.collision_threshold) * Real(10)) {
          out.truncated = true;
          out.failure = ErrorCode::Collision;
          out.diagnostic = "collision approaching nu = " + pred.nu.to_string(12);
          return out;
        }
        continue;
      }
      auto corr = solve_locus_newton(pred, tol, opts);
      if (!corr.converged) {
        if (corr.failure == ErrorCode::Collision) {
          out.truncated = true;
          out.failure = ErrorCode::Collision;
          out.diagnostic = "collision near nu = " + pred.nu.to_string(12) + ": " + corr.diagnostic;
          return out;
        }
        h /= Real(2);
        continue;
      }
      // Divergence guard: reject a corrector that jumped far from the predictor.
      Real jump;
      for (size_t i = 0; i < pred.points.size(); ++i) jump = max(jump, abs(corr.config.points[i].x - pred.points[i].x));
      Real scale(1);
      for (const auto& p : cur.points) scale = max(scale, abs(p.x));
      if (jump > Real(0.25) * scale) {
        h /= Real(2);
        continue;
      }
      cur = corr.config;
      if (relative_separation(cur.locations()) < Real(opts.collision_threshold) * Real(10)) {
        out.truncated = true;
        out.failure = ErrorCode::Collision;
        out.diagnostic = "points within the collision threshold at nu = " + cur.nu.to_string(12);
        return out;
      }
    }
    out.nus.push_back(cur.nu);
    out.branch.push_back(cur);
    out.residuals.push_back(num::max_abs(locus_residual(cur)));
  }
  return out;
}

}  // namespace sextic::locus
