#include "stieltjes/stieltjes.hpp"

#include "exactnum/linalg.hpp"

#include <atomic>
#include <limits>
#include <random>
#include <thread>

namespace sextic::stieltjes {

using num::Matrix;

namespace {

struct Point {
  BigComplex z;
  int s;  // +1 zero, -1 pole
};

std::vector<Point> points_of(const QuasiRationalFunction& psi) {
  std::vector<Point> pts;
  for (const auto& y : psi.zeros) pts.push_back({y, 1});
  for (const auto& x : psi.poles) pts.push_back({x, -1});
  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[i].z == pts[j].z) {
        throw Error(ErrorCode::Collision, pts[i].s != pts[j].s ? "a zero coincides with a pole"
                                                               : "repeated zero or pole in the ansatz");
      }
    }
  }
  return pts;
}

BigComplex relation(const std::vector<Point>& pts, size_t p, const Real& mu, int eps) {
  const BigComplex& zp = pts[p].z;
  BigComplex acc = pow(zp, 3) * Real(eps);
  if (!mu.is_zero()) acc += BigComplex(mu) / zp;
  for (size_t q = 0; q < pts.size(); ++q) {
    if (q == p) continue;
    BigComplex t = inverse(zp - pts[q].z);
    if (pts[q].s > 0) {
      acc += t;
    } else {
      acc -= t;
    }
  }
  return acc;
}

// d relation_p / d z_q
BigComplex relation_derivative(const std::vector<Point>& pts, size_t p, size_t q, const Real& mu, int eps) {
  const BigComplex& zp = pts[p].z;
  if (p != q) {
    BigComplex d = zp - pts[q].z;
    BigComplex t = inverse(d * d);
    return pts[q].s > 0 ? t : -t;
  }
  BigComplex acc = zp * zp * Real(3 * eps);
  if (!mu.is_zero()) acc -= BigComplex(mu) / (zp * zp);
  for (size_t r = 0; r < pts.size(); ++r) {
    if (r == p) continue;
    BigComplex d = zp - pts[r].z;
    BigComplex t = inverse(d * d);
    if (pts[r].s > 0) {
      acc -= t;
    } else {
      acc += t;
    }
  }
  return acc;
}

Real separation(const std::vector<Point>& pts) {
  std::vector<BigComplex> xs;
  for (const auto& p : pts) {
    if (!p.z.is_zero()) xs.push_back(p.z);
  }
  return locus::relative_separation(xs);
}

QuasiRationalFunction rebuild(const QuasiRationalFunction& like, const std::vector<Point>& pts) {
  QuasiRationalFunction psi = like;
  psi.zeros.clear();
  psi.poles.clear();
  for (const auto& p : pts) (p.s > 0 ? psi.zeros : psi.poles).push_back(p.z);
  return psi;
}

}  // namespace

Real effective_mu(const QuasiRationalFunction& psi) {
  Real mu = psi.mu;
  for (const auto& y : psi.zeros) {
    if (y.is_zero()) mu += Real(1);
  }
  for (const auto& x : psi.poles) {
    if (x.is_zero()) mu -= Real(1);
  }
  return mu;
}

StieltjesReport stieltjes_residual(const QuasiRationalFunction& psi) {
  auto pts = points_of(psi);
  StieltjesReport r;
  r.max_abs = Real(0);
  for (size_t p = 0; p < pts.size(); ++p) {
    BigComplex v = pts[p].z.is_zero() ? BigComplex() : relation(pts, p, psi.mu, psi.eps);
    r.max_abs = max(r.max_abs, abs(v));
    (pts[p].s > 0 ? r.zero_residuals : r.pole_residuals).push_back(v);
  }
  return r;
}

StieltjesSolve solve_stieltjes(const QuasiRationalFunction& init, bool symmetric, const Real& tol,
                               const SolveOptions& opts) {
  StieltjesSolve out;
  auto pts = points_of(init);
  const size_t n = pts.size();

  // Unknowns are indices into pts; partner[i] holds the mirror image in
  // symmetric mode.
  std::vector<size_t> reps;
  std::vector<int> partner(n, -1);
  if (symmetric) {
    Real scale(1);
    for (const auto& p : pts) scale = max(scale, abs(p.z));
    for (size_t i = 0; i < n; ++i) {
      if (pts[i].z.is_zero() || partner[i] >= 0) continue;
      for (size_t j = i + 1; j < n; ++j) {
        if (partner[j] >= 0 || pts[j].s != pts[i].s) continue;
        if (abs(pts[i].z + pts[j].z) <= Real(1e-20) * scale) {
          partner[i] = static_cast<int>(j);
          partner[j] = static_cast<int>(i);
          break;
        }
      }
      if (partner[i] < 0) {
        throw Error(ErrorCode::InvalidArgument, "symmetric mode needs zeros and poles closed under negation");
      }
      reps.push_back(i);
      pts[static_cast<size_t>(partner[i])].z = -pts[i].z;
    }
  } else {
    for (size_t i = 0; i < n; ++i) {
      if (!pts[i].z.is_zero()) reps.push_back(i);
    }
  }

  auto residual = [&](const std::vector<Point>& cfg) {
    std::vector<BigComplex> r;
    for (size_t p : reps) r.push_back(relation(cfg, p, init.mu, init.eps));
    return r;
  };
  auto apply = [&](const std::vector<Point>& base, const std::vector<BigComplex>& delta, const Real& t) {
    std::vector<Point> next = base;
    for (size_t k = 0; k < reps.size(); ++k) {
      next[reps[k]].z = base[reps[k]].z + delta[k] * t;
      if (partner[reps[k]] >= 0) next[static_cast<size_t>(partner[reps[k]])].z = -next[reps[k]].z;
    }
    return next;
  };

  auto r = residual(pts);
  Real res = num::max_abs(r);
  // Extra steps past tol so quantities derived from the roots also meet it.
  int polish = 2;
  for (int iter = 0;; ++iter) {
    out.iterations = iter;
    out.residual = res;
    out.psi = rebuild(init, pts);
    if (res < tol) {
      out.converged = true;
      if (polish-- <= 0 || res.is_zero()) return out;
    } else if (out.converged) {
      return out;
    }
    if (iter >= opts.max_iter && !out.converged) {
      out.failure = ErrorCode::NonConvergence;
      out.diagnostic = "iteration cap reached with residual " + res.to_string(6);
      return out;
    }
    Matrix J = num::zeros(reps.size(), reps.size());
    for (size_t a = 0; a < reps.size(); ++a) {
      for (size_t b = 0; b < reps.size(); ++b) {
        J[a][b] = relation_derivative(pts, reps[a], reps[b], init.mu, init.eps);
        int mirror = partner[reps[b]];
        if (mirror >= 0) J[a][b] -= relation_derivative(pts, reps[a], static_cast<size_t>(mirror), init.mu, init.eps);
      }
    }
    std::vector<BigComplex> rhs;
    for (const auto& v : r) rhs.push_back(-v);
    std::vector<BigComplex> delta;
    try {
      delta = num::solve_linear(J, rhs, Real(1e-60));
    } catch (const Error& e) {
      if (out.converged) return out;
      out.failure = e.code();
      out.diagnostic = e.what();
      return out;
    }
    Real norm0 = num::norm2(r);
    Real t(1);
    bool accepted = false;
    std::vector<Point> trial;
    std::vector<BigComplex> trial_r;
    for (int h = 0; h <= opts.max_halvings; ++h) {
      trial = apply(pts, delta, t);
      if (separation(trial) >= Real(opts.collision_threshold)) {
        trial_r = residual(trial);
        if (num::norm2(trial_r) < norm0) {
          accepted = true;
          break;
        }
      }
      t /= Real(2);
    }
    if (!accepted && out.converged) return out;
    if (!accepted) {
      bool collided = separation(apply(pts, delta, Real(1))) < Real(opts.collision_threshold);
      out.failure = collided ? ErrorCode::Collision : ErrorCode::NonConvergence;
      out.diagnostic = collided ? "points collide along the Newton direction" : "line search failed to reduce the residual";
      return out;
    }
    pts = std::move(trial);
    r = std::move(trial_r);
    res = num::max_abs(r);
  }
}

StieltjesSolve solve_stieltjes(int K, int N, const Real& mu, int eps, const QuasiRationalFunction& init,
                               bool symmetric, const Real& tol, const SolveOptions& opts) {
  if (static_cast<int>(init.zeros.size()) != K || static_cast<int>(init.poles.size()) != N) {
    throw Error(ErrorCode::InvalidArgument, "initial guess does not have the requested (K, N) shape");
  }
  QuasiRationalFunction start = init;
  start.mu = mu;
  start.eps = eps;
  return solve_stieltjes(start, symmetric, tol, opts);
}

Real inferred_nu(const QuasiRationalFunction& psi) {
  Real K(static_cast<long>(psi.zeros.size()));
  Real N(static_cast<long>(psi.poles.size()));
  return Real(psi.eps) * (Real(2) * N - Real(2) * K - Real(2) * psi.mu - Real(3));
}

Poly infer_polynomial_part(const QuasiRationalFunction& psi) {
  BigComplex sum;
  for (const auto& y : psi.zeros) sum += y;
  for (const auto& x : psi.poles) sum -= x;
  return Poly{0, sum * Real(2 * psi.eps), BigComplex(-inferred_nu(psi)), 0, 0, 0, 1};
}

BigComplex implied_eigenvalue(const QuasiRationalFunction& psi) {
  BigComplex sum;
  for (const auto& y : psi.zeros) sum += y * y;
  for (const auto& x : psi.poles) sum -= x * x;
  return sum * Real(-2 * psi.eps);
}

RationalPotential implied_potential(const QuasiRationalFunction& psi) {
  RationalPotential v;
  v.poly = infer_polynomial_part(psi);
  v.ell = effective_mu(psi) - Real(1);
  for (const auto& x : psi.poles) {
    if (!x.is_zero()) v.add_pole(x, 1);
  }
  v.symmetric = v.poly.coeff(1).is_zero();
  return v;
}

Poly riccati_numerator(const QuasiRationalFunction& psi, const BigComplex& lambda) {
  auto pts = points_of(psi);
  const Poly x = Poly::x();
  bool has_origin = false;
  Poly D = Poly::constant(BigComplex(1));
  for (const auto& p : pts) {
    D *= Poly{-p.z, BigComplex(1)};
    has_origin = has_origin || p.z.is_zero();
  }
  if (!psi.mu.is_zero() && !has_origin) D *= x;
  auto without = [&](const BigComplex& z) {
    return z.is_zero() ? D.shift_down(1) : D.divmod(Poly{-z, BigComplex(1)}).first;
  };

  Poly A = Poly::monomial(BigComplex(Real(psi.eps)), 3) * D;
  if (!psi.mu.is_zero()) A += D.shift_down(1) * BigComplex(psi.mu);
  for (const auto& p : pts) A += without(p.z) * BigComplex(Real(p.s));

  Real mu_e = effective_mu(psi);
  Poly Vl = infer_polynomial_part(psi) - Poly::constant(lambda);
  Poly N = A.derivative() * D - A * D.derivative() + A * A - Vl * D * D;
  Real origin = mu_e * (mu_e - Real(1));
  if (!origin.is_zero()) {
    Poly Dx = D.shift_down(1);
    N -= Dx * Dx * BigComplex(origin);
  }
  for (const auto& p : pts) {
    if (p.s > 0 || p.z.is_zero()) continue;
    Poly q = without(p.z);
    N -= q * q * BigComplex(2);
  }
  return N;
}

ImplicationReport stieltjes_implies_locus(const QuasiRationalFunction& psi, const Real& tol) {
  ImplicationReport r;
  r.stieltjes = stieltjes_residual(psi).max_abs;
  r.nu = inferred_nu(psi);
  r.lambda = implied_eigenvalue(psi);
  Poly N = riccati_numerator(psi, r.lambda);
  Real scale(1);
  for (const auto& z : psi.zeros) scale = max(scale, abs(z));
  for (const auto& z : psi.poles) scale = max(scale, abs(z));
  r.riccati = N.max_abs_coeff() / pow(scale, static_cast<long>(2 * (psi.zeros.size() + psi.poles.size()) + 6));
  r.monodromy = locus::trivial_monodromy_check(implied_potential(psi), tol);
  r.locus = Real(0);
  for (const auto& p : r.monodromy.points) {
    for (size_t i = 0; i < p.orders.size(); ++i) {
      if (p.orders[i] == 1) r.locus = max(r.locus, abs(p.coefficients[i]) / Real(2));
    }
  }
  r.stieltjes_ok = r.stieltjes < tol;
  r.riccati_ok = r.riccati < tol;
  r.locus_ok = r.locus < Real(10) * tol && r.monodromy.max_abs < Real(10) * tol;
  return r;
}

std::vector<Shape> admissible_shapes(int N, const Real& nu, const Real& ell, const Real& tol) {
  std::vector<Shape> out;
  for (int eps : {1, -1}) {
    for (const Real& mu : {-ell, ell + Real(1)}) {
      Real K = (Real(2 * N) - Real(2) * mu - Real(3) - Real(eps) * nu) / Real(2);
      Real r = round(K);
      if (abs(K - r) > tol * max(Real(1), abs(K)) || r.sign() < 0) continue;
      bool duplicate = false;
      for (const auto& s : out) duplicate = duplicate || (s.eps == eps && s.mu == mu);
      if (!duplicate) out.push_back({eps, mu, static_cast<int>(r.to_long())});
    }
  }
  return out;
}

namespace {

// Levenberg-Marquardt on all relations with the poles frozen.
Real minimise_zeros(const std::vector<BigComplex>& poles, const Shape& shape, std::vector<BigComplex>& zeros) {
  auto build = [&](const std::vector<BigComplex>& ys) {
    std::vector<Point> pts;
    for (const auto& y : ys) pts.push_back({y, 1});
    for (const auto& x : poles) pts.push_back({x, -1});
    return pts;
  };
  auto residual = [&](const std::vector<Point>& pts) {
    std::vector<BigComplex> r;
    for (size_t p = 0; p < pts.size(); ++p) {
      if (!pts[p].z.is_zero()) r.push_back(relation(pts, p, shape.mu, shape.eps));
    }
    return r;
  };
  auto safe_residual = [&](const std::vector<BigComplex>& ys, std::vector<BigComplex>& r) {
    auto pts = build(ys);
    if (separation(pts) < Real(1e-12)) return false;
    r = residual(pts);
    return true;
  };

  std::vector<BigComplex> r;
  if (!safe_residual(zeros, r)) return Real(std::numeric_limits<double>::infinity());
  const size_t K = zeros.size();
  if (K == 0) return num::max_abs(r);
  Real damping(1e-3);
  Real cost = num::norm2(r);
  for (int iter = 0; iter < 200; ++iter) {
    auto pts = build(zeros);
    Matrix J = num::zeros(r.size(), K);
    size_t row = 0;
    for (size_t p = 0; p < pts.size(); ++p) {
      if (pts[p].z.is_zero()) continue;
      for (size_t k = 0; k < K; ++k) J[row][k] = relation_derivative(pts, p, k, shape.mu, shape.eps);
      ++row;
    }
    Matrix G = num::gram(J);
    auto g = num::adjoint_apply(J, r);
    bool improved = false;
    for (int tries = 0; tries < 12 && !improved; ++tries) {
      Matrix H = G;
      for (size_t k = 0; k < K; ++k) H[k][k] += BigComplex(damping * max(Real(1), abs(G[k][k])));
      std::vector<BigComplex> rhs;
      for (const auto& v : g) rhs.push_back(-v);
      std::vector<BigComplex> delta;
      try {
        delta = num::solve_linear(H, rhs, Real(1e-70));
      } catch (const Error&) {
        damping *= Real(10);
        continue;
      }
      std::vector<BigComplex> trial = zeros;
      for (size_t k = 0; k < K; ++k) trial[k] += delta[k];
      std::vector<BigComplex> tr;
      if (safe_residual(trial, tr) && num::norm2(tr) < cost) {
        Real gain = cost - num::norm2(tr);
        zeros = std::move(trial);
        r = std::move(tr);
        cost = num::norm2(r);
        damping = max(damping / Real(3), Real(1e-12));
        improved = true;
        if (gain < Real(1e-40) * max(Real(1), cost)) return num::max_abs(r);
      } else {
        damping *= Real(4);
      }
    }
    if (!improved) break;
  }
  return num::max_abs(r);
}

}  // namespace

ShapeSweep shape_sweep(const std::vector<BigComplex>& poles, const Real& nu, const Real& ell, std::uint64_t seed,
                       int starts, unsigned workers) {
  ShapeSweep out;
  out.min_over_shapes = Real(std::numeric_limits<double>::infinity());
  const int N = static_cast<int>(poles.size());
  Real radius(1);
  for (const auto& x : poles) radius = max(radius, abs(x));
  radius *= Real(1.5);

  // Starts are drawn up front in a fixed order so the result does not depend
  // on how the runs are scheduled.
  struct Run {
    size_t shape;
    std::vector<BigComplex> zeros;
    Real value;
  };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto shapes = admissible_shapes(N, nu, ell, num::default_tolerance());
  std::vector<Run> runs;
  for (size_t i = 0; i < shapes.size(); ++i) {
    const int count = shapes[i].K == 0 ? 1 : starts;
    for (int run = 0; run < count; ++run) {
      std::vector<BigComplex> zeros;
      for (int k = 0; k < shapes[i].K; ++k) zeros.emplace_back(radius * Real(unit(rng)), radius * Real(unit(rng)));
      runs.push_back({i, std::move(zeros), Real()});
    }
  }

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(runs.size())));
  const unsigned bits = num::precision_bits();
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto job = [&] {
    num::PrecisionScope scope(bits);
    try {
      for (size_t i = next++; i < runs.size(); i = next++) {
        runs[i].value = minimise_zeros(poles, shapes[runs[i].shape], runs[i].zeros);
      }
    } catch (...) {
      if (!failed.exchange(true)) failure = std::current_exception();
    }
  };
  if (workers == 1) {
    job();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(job);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (size_t i = 0; i < shapes.size(); ++i) {
    ShapeResult res;
    res.shape = shapes[i];
    res.best_max_residual = Real(std::numeric_limits<double>::infinity());
    for (auto& r : runs) {
      if (r.shape == i && r.value < res.best_max_residual) {
        res.best_max_residual = r.value;
        res.best_zeros = r.zeros;
      }
    }
    out.min_over_shapes = min(out.min_over_shapes, res.best_max_residual);
    out.shapes.push_back(std::move(res));
  }
  return out;
}

}  // namespace sextic::stieltjes
