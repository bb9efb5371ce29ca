#include "dynamics/dynamics.hpp"

#include "exactnum/roots.hpp"

#include <algorithm>
#include <cmath>

namespace sextic::dynamics {

int DynamicsState::zero_count() const {
  return static_cast<int>(std::count_if(points.begin(), points.end(), [](const MovingPoint& p) { return p.gamma > 0; }));
}

int DynamicsState::pole_count() const { return static_cast<int>(points.size()) - zero_count(); }

namespace {

const BigComplex kI = BigComplex::i();

// Bracket of the flow: dz_j/dt = -i F_j.
std::vector<BigComplex> bracket(const DynamicsState& s) {
  const size_t n = s.points.size();
  std::vector<BigComplex> F(n);
  for (size_t j = 0; j < n; ++j) {
    const BigComplex& zj = s.points[j].z;
    BigComplex acc = pow(zj, 3) * Real(s.eps);
    if (!s.mu.is_zero()) {
      if (zj.is_zero()) throw Error(ErrorCode::Collision, "point at the origin with nonzero mu");
      acc += BigComplex(s.mu) / zj;
    }
    for (size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      BigComplex d = zj - s.points[k].z;
      if (d.is_zero()) throw Error(ErrorCode::Collision, "coincident points");
      acc += BigComplex(Real(s.points[k].gamma)) / d;
    }
    F[j] = acc;
  }
  return F;
}

BigComplex moment(const DynamicsState& s, int power) {
  BigComplex acc;
  for (const auto& p : s.points) acc += pow(p.z, power) * Real(p.gamma);
  return acc;
}

BigComplex inverse_moment(const DynamicsState& s) {
  BigComplex acc;
  for (const auto& p : s.points) acc += BigComplex(Real(p.gamma)) / p.z;
  return acc;
}

void require_simple(const DynamicsState& s) {
  for (const auto& p : s.points) {
    if (p.gamma != 1 && p.gamma != -1) {
      throw Error(ErrorCode::InvalidArgument, "only simple zeros and poles (|gamma| = 1) are supported here");
    }
  }
}

Real max_modulus(const DynamicsState& s) {
  Real m(0);
  for (const auto& p : s.points) m = max(m, abs(p.z));
  return m;
}

}  // namespace

Velocity dynamics_rhs(const DynamicsState& s) {
  Velocity v;
  auto F = bracket(s);
  v.dz.reserve(F.size());
  for (auto& f : F) v.dz.push_back(-kI * f);
  v.df = moment(s, 2) * Real(s.eps);
  return v;
}

Real relative_gap(const DynamicsState& s) {
  std::vector<BigComplex> xs;
  for (const auto& p : s.points) xs.push_back(p.z);
  Real best(std::numeric_limits<double>::infinity());
  for (size_t i = 0; i < xs.size(); ++i) {
    if (!s.mu.is_zero()) best = min(best, abs(xs[i]));
    for (size_t j = i + 1; j < xs.size(); ++j) best = min(best, abs(xs[i] - xs[j]));
  }
  return best / max(Real(1), max_modulus(s));
}

std::vector<BigComplex> flow_acceleration(const DynamicsState& s) {
  auto F = bracket(s);
  const size_t n = F.size();
  std::vector<BigComplex> acc(n);
  for (size_t j = 0; j < n; ++j) {
    const BigComplex& zj = s.points[j].z;
    BigComplex a = zj * zj * F[j] * Real(-3 * s.eps);
    if (!s.mu.is_zero()) a += BigComplex(s.mu) * F[j] / (zj * zj);
    for (size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      BigComplex d = zj - s.points[k].z;
      a += (F[j] - F[k]) * Real(s.points[k].gamma) / (d * d);
    }
    acc[j] = a;
  }
  return acc;
}

CMResidual cm_residual(const DynamicsState& s) {
  require_simple(s);
  auto acc = flow_acceleration(s);
  const Real Gamma = Real(s.zero_count() - s.pole_count()) + s.mu;
  const BigComplex M = moment(s, 1);
  const BigComplex S = s.mu.is_zero() ? BigComplex() : inverse_moment(s);
  CMResidual r{Real(0), Real(0)};
  for (size_t j = 0; j < s.points.size(); ++j) {
    const BigComplex& zj = s.points[j].z;
    const int g = s.points[j].gamma;
    BigComplex want = -pow(zj, 5) * Real(3) - zj * (Real(2) * Gamma - Real(3 * g)) * Real(s.eps) - M * Real(s.eps);
    if (!s.mu.is_zero()) {
      want += BigComplex(s.mu * (s.mu + Real(g))) / pow(zj, 3);
      want -= BigComplex(s.mu) * S / (zj * zj);
    }
    for (size_t k = 0; k < s.points.size(); ++k) {
      if (k == j || s.points[k].gamma != g) continue;
      want += BigComplex(2) / pow(zj - s.points[k].z, 3);
    }
    Real dev = abs(acc[j] - want);
    if (g > 0) {
      r.zeros = max(r.zeros, dev);
    } else {
      r.poles = max(r.poles, dev);
    }
  }
  return r;
}

std::vector<CMResidual> cm_residual(const Trajectory& tr) {
  std::vector<CMResidual> out;
  out.reserve(tr.states.size());
  for (const auto& s : tr.states) out.push_back(cm_residual(s));
  return out;
}

std::pair<BigComplex, BigComplex> hamiltonians(const DynamicsState& s) {
  if (s.points.empty()) return {};
  require_simple(s);
  auto v = dynamics_rhs(s);
  const Real Gamma = Real(s.zero_count() - s.pole_count()) + s.mu;
  BigComplex H, Ht;
  for (size_t j = 0; j < s.points.size(); ++j) {
    const BigComplex& zj = s.points[j].z;
    const int g = s.points[j].gamma;
    BigComplex z2 = zj * zj;
    BigComplex e = v.dz[j] * v.dz[j] + z2 * z2 * z2 + z2 * (Real(2) * Gamma - Real(3 * g)) * Real(s.eps);
    if (!s.mu.is_zero()) e += BigComplex(s.mu * (s.mu + Real(g))) / z2;
    for (size_t k = 0; k < s.points.size(); ++k) {
      if (k == j || s.points[k].gamma != g) continue;
      BigComplex d = zj - s.points[k].z;
      e += inverse(d * d);
    }
    (g > 0 ? H : Ht) += e / Real(2);
  }
  return {H, Ht};
}

BigComplex generating_function(const DynamicsState& s) {
  require_simple(s);
  BigComplex logs, quartic;
  const size_t n = s.points.size();
  for (size_t j = 0; j < n; ++j) {
    const auto& pj = s.points[j];
    for (size_t k = j + 1; k < n; ++k) {
      const auto& pk = s.points[k];
      if (pj.gamma == pk.gamma) {
        logs += log(pj.z - pk.z);
      } else if (pj.gamma > 0) {
        logs -= log(pj.z - pk.z);
      } else {
        logs -= log(pk.z - pj.z);
      }
    }
    if (!s.mu.is_zero()) logs += log(pj.z) * s.mu * Real(pj.gamma);
    quartic += pow(pj.z, 4) * Real(pj.gamma);
  }
  return -kI * logs - kI * quartic * Real(s.eps) / Real(4);
}

GeneratingCheck generating_function_check(const DynamicsState& s, const Real& fd_step) {
  require_simple(s);
  GeneratingCheck out;
  out.fd_error = Real(0);
  out.momentum_error = Real(0);
  auto v = dynamics_rhs(s);
  const Real two_pi = Real::pi() * Real(2);
  const size_t n = s.points.size();
  for (size_t j = 0; j < n; ++j) {
    const BigComplex& zj = s.points[j].z;
    const int g = s.points[j].gamma;
    // Closed-form gradient; for a pole this is -dS/dxt.
    BigComplex inner = pow(zj, 3) * Real(s.eps);
    if (!s.mu.is_zero()) inner += BigComplex(s.mu) / zj;
    for (size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      BigComplex t = inverse(zj - s.points[k].z);
      if (s.points[k].gamma == g) {
        inner += g > 0 ? t : -t;
      } else {
        inner -= g > 0 ? t : -t;
      }
    }
    BigComplex grad = -kI * (g > 0 ? inner : -inner);
    BigComplex analytic = g > 0 ? grad : -grad;

    DynamicsState plus = s, minus = s;
    plus.points[j].z += BigComplex(fd_step);
    minus.points[j].z -= BigComplex(fd_step);
    BigComplex diff = generating_function(plus) - generating_function(minus);
    // -i log contributes arg terms to the real part; undo 2 pi jumps.
    diff.re -= two_pi * round(diff.re / two_pi);
    BigComplex fd = diff / (Real(2) * fd_step);
    if (g < 0) fd = -fd;

    out.fd_error = max(out.fd_error, abs(analytic - fd));
    out.momentum_error = max(out.momentum_error, abs(analytic - v.dz[j]));
    out.analytic.push_back(analytic);
    out.finite_difference.push_back(fd);
  }
  return out;
}

BigComplex closed_form_nu7_square(const Real& t, const BigComplex& c1, const BigComplex& c2) {
  const Real w = sqrt(Real(2));
  BigComplex e1 = c1 * BigComplex::polar(Real(1), w * t);
  BigComplex e2 = c2 * BigComplex::polar(Real(1), -w * t);
  BigComplex den = (e1 + e2) * w;
  if (abs(den) <= num::default_tolerance() * max(abs(e1), abs(e2))) {
    throw Error(ErrorCode::Degenerate, "closed-form denominator vanishes at this time");
  }
  return -(e1 - e2) / den;
}

DynamicsState closed_form_nu7(const Real& t, const BigComplex& c1, const BigComplex& c2) {
  BigComplex u = closed_form_nu7_square(t, c1, c2);
  BigComplex X = sqrt(u);
  if (abs(X) <= num::default_tolerance()) {
    throw Error(ErrorCode::Collision, "X = 0: the two points coincide");
  }
  DynamicsState s;
  s.points = {{X, 1}, {-X, 1}};
  s.t = t;
  s.mu = Real(0);
  s.eps = -1;
  // f' = -2 X^2 = -i (log D)' with D = c1 e^{i sqrt2 t} + c2 e^{-i sqrt2 t}.
  const Real w = sqrt(Real(2));
  BigComplex D = c1 * BigComplex::polar(Real(1), w * t) + c2 * BigComplex::polar(Real(1), -w * t);
  s.phase_f = -kI * log(D);
  return s;
}

DynamicsState darboux_chain_state(const qes::QESSpectrum& spectrum, const std::vector<BigComplex>& c,
                                  const Real& t) {
  if (c.size() != static_cast<size_t>(spectrum.M)) {
    throw Error(ErrorCode::InvalidArgument, "need one coefficient per QES eigenfunction");
  }
  Poly P;
  for (int k = 0; k < spectrum.M; ++k) {
    const auto ku = static_cast<size_t>(k);
    if (c[ku].is_zero()) continue;
    BigComplex phase = exp(-kI * spectrum.eigenvalues[ku] * t / Real(2));
    P += qes::eigen_polynomial(spectrum.eigenvectors[ku]) * (c[ku] * phase);
  }
  if (P.is_zero()) throw Error(ErrorCode::InvalidArgument, "all coefficients vanish");
  DynamicsState s;
  s.t = t;
  s.mu = spectrum.problem.mu();
  s.eps = spectrum.problem.eps;
  s.phase_f = -kI * log(P.leading());
  if (P.degree() == 0) return s;
  for (const auto& r : num::poly_roots(P, num::default_tolerance())) {
    if (r.multiplicity != 1 || r.value.is_zero()) {
      throw Error(ErrorCode::Collision, "the combination has a multiple zero or a zero at the origin at this time");
    }
    s.points.push_back({r.value, 1});
  }
  return s;
}

BigComplex time_schrodinger_residual(const DynamicsState& s, const BigComplex& x) {
  auto v = dynamics_rhs(s);
  BigComplex g = pow(x, 3) * Real(s.eps);
  BigComplex dg = x * x * Real(3 * s.eps);
  BigComplex log_t = kI * v.df;  // psi_t/psi
  if (!s.mu.is_zero()) {
    g += BigComplex(s.mu) / x;
    dg -= BigComplex(s.mu) / (x * x);
  }
  const Real Gamma = Real(s.zero_count() - s.pole_count());
  Real nu = -Real(s.eps) * (Real(2) * Gamma + Real(2) * s.mu + Real(3));
  BigComplex x2 = x * x;
  BigComplex V = x2 * x2 * x2 - x2 * nu + x * moment(s, 1) * Real(2 * s.eps);
  if (!s.mu.is_zero()) {
    V += BigComplex(s.mu * (s.mu - Real(1))) / x2;
    V -= BigComplex(s.mu) * inverse_moment(s) * Real(2) / x;
  }
  for (size_t j = 0; j < s.points.size(); ++j) {
    const int gam = s.points[j].gamma;
    BigComplex r = inverse(x - s.points[j].z);
    g += r * Real(gam);
    dg -= r * r * Real(gam);
    log_t -= v.dz[j] * r * Real(gam);
    V += r * r * Real(gam * (gam - 1));
  }
  return kI * log_t * Real(2) + dg + g * g - V;
}

bool counting_consistent(const DynamicsState& s, int N, int m) {
  int total = 0;
  for (const auto& p : s.points) total += p.gamma;
  return total == N - 3 * m;
}

namespace {

// Dormand-Prince 5(4) tableau, rebuilt from exact rationals at working precision.
struct Tableau {
  Real c[7];
  Real a[7][6];
  Real e[7];
  Tableau() {
    static constexpr long kCn[7][2] = {{0, 1}, {1, 5}, {3, 10}, {4, 5}, {8, 9}, {1, 1}, {1, 1}};
    static constexpr long kAn[7][6][2] = {
        {},
        {{1, 5}},
        {{3, 40}, {9, 40}},
        {{44, 45}, {-56, 15}, {32, 9}},
        {{19372, 6561}, {-25360, 2187}, {64448, 6561}, {-212, 729}},
        {{9017, 3168}, {-355, 33}, {46732, 5247}, {49, 176}, {-5103, 18656}},
        {{35, 384}, {0, 1}, {500, 1113}, {125, 192}, {-2187, 6784}, {11, 84}},
    };
    static constexpr long kEn[7][2] = {{71, 57600}, {0, 1}, {-71, 16695}, {71, 1920}, {-17253, 339200}, {22, 525}, {-1, 40}};
    for (int i = 0; i < 7; ++i) {
      c[i] = Real(kCn[i][0]) / Real(kCn[i][1]);
      e[i] = Real(kEn[i][0]) / Real(kEn[i][1]);
      for (int j = 0; j < 6; ++j) {
        long den = kAn[i][j][1] == 0 ? 1 : kAn[i][j][1];
        a[i][j] = Real(kAn[i][j][0]) / Real(den);
      }
    }
  }
};

using Vec = std::vector<BigComplex>;

Vec pack(const DynamicsState& s) {
  Vec y;
  for (const auto& p : s.points) y.push_back(p.z);
  y.push_back(s.phase_f);
  return y;
}

void unpack(const Vec& y, DynamicsState& s) {
  for (size_t j = 0; j < s.points.size(); ++j) s.points[j].z = y[j];
  s.phase_f = y.back();
}

Vec rhs_vec(const DynamicsState& shape, const Vec& y) {
  DynamicsState s = shape;
  unpack(y, s);
  auto v = dynamics_rhs(s);
  Vec out = std::move(v.dz);
  out.push_back(v.df);
  return out;
}

Diagnostics diagnose(const DynamicsState& s) {
  Diagnostics d;
  auto [H, Ht] = hamiltonians(s);
  d.H = H;
  d.H_tilde = Ht;
  if (!s.points.empty()) {
    auto cm = cm_residual(s);
    d.cm_zeros = cm.zeros;
    d.cm_poles = cm.poles;
  } else {
    d.cm_zeros = Real(0);
    d.cm_poles = Real(0);
  }
  return d;
}

}  // namespace

Trajectory integrate(const DynamicsState& s0, const Real& t_end, const IntegrateOptions& opts) {
  if (!(t_end > s0.t)) throw Error(ErrorCode::InvalidArgument, "t_end must exceed the start time");
  const Tableau tab;
  const bool simple = std::all_of(s0.points.begin(), s0.points.end(),
                                  [](const MovingPoint& p) { return p.gamma == 1 || p.gamma == -1; });
  const bool want_diag = opts.diagnostics && simple;

  Trajectory tr;
  tr.states.push_back(s0);
  if (want_diag) tr.diagnostics.push_back(diagnose(s0));
  if (relative_gap(s0) < Real(opts.collision_threshold)) {
    tr.stop = ErrorCode::Collision;
    tr.diagnostic = "initial state is already below the collision threshold";
    return tr;
  }

  DynamicsState cur = s0;
  Vec y = pack(cur);
  Vec k[7];
  k[0] = rhs_vec(cur, y);
  Real t = cur.t;
  Real h = min(Real(opts.initial_step), t_end - t);
  const Real rtol(opts.rtol), atol(opts.atol), max_step(opts.max_step), safety(opts.safety);
  const Real fifth = Real(1) / Real(5);
  const Real escape = Real(opts.escape_factor) * max(Real(1), max_modulus(s0));

  while (t < t_end) {
    if (h < Real(opts.min_step) * max(Real(1), abs(t))) {
      tr.stop = ErrorCode::StepUnderflow;
      tr.diagnostic = "step size underflow at t = " + t.to_string(12);
      return tr;
    }
    bool last = false;
    if (t + h >= t_end) {
      h = t_end - t;
      last = true;
    }
    Vec y5;
    Real err(0);
    try {
      for (int stage = 1; stage < 7; ++stage) {
        Vec ys = y;
        for (size_t i = 0; i < y.size(); ++i) {
          for (int j = 0; j < stage; ++j) {
            if (!tab.a[stage][j].is_zero()) ys[i] += k[j][i] * (tab.a[stage][j] * h);
          }
        }
        if (stage == 6) y5 = ys;
        k[stage] = rhs_vec(cur, ys);
      }
      for (size_t i = 0; i < y.size(); ++i) {
        BigComplex e;
        for (int j = 0; j < 7; ++j) {
          if (!tab.e[j].is_zero()) e += k[j][i] * tab.e[j];
        }
        Real sc = atol + rtol * max(abs(y[i]), abs(y5[i]));
        err = max(err, abs(e) * h / sc);
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Collision) throw;
      err = Real(1e10);  // a stage landed on a singularity; shrink
    }

    if (err <= Real(1)) {
      t += h;
      if (last) t = t_end;
      y = std::move(y5);
      k[0] = k[6];
      unpack(y, cur);
      cur.t = t;
      tr.states.push_back(cur);
      if (want_diag) tr.diagnostics.push_back(diagnose(cur));
      if (max_modulus(cur) > escape) {
        tr.stop = ErrorCode::Collision;
        tr.diagnostic = "points escape to infinity near t = " + t.to_string(12);
        return tr;
      }
      if (relative_gap(cur) < Real(opts.collision_threshold)) {
        tr.stop = ErrorCode::Collision;
        tr.diagnostic = "points collide near t = " + t.to_string(12);
        return tr;
      }
      Real factor = err.is_zero() ? Real(5) : safety * pow(err, -fifth);
      h = min(h * min(Real(5), max(Real(0.2), factor)), max_step);
    } else {
      ++tr.rejected_steps;
      Real factor = safety * pow(err, -fifth);
      h *= min(Real(1), max(Real(0.2), factor));
    }
  }
  return tr;
}

}  // namespace sextic::dynamics
