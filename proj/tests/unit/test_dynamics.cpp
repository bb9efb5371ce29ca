#include <doctest.h>

#include "dynamics/dynamics.hpp"
#include "stieltjes/stieltjes.hpp"
#include "support.hpp"

#include <random>

using namespace sextic;
using namespace sextic::dynamics;
using testing::close;

namespace {

DynamicsState state(std::vector<MovingPoint> pts, int eps, double mu = 0) {
  DynamicsState s;
  s.points = std::move(pts);
  s.t = Real(0);
  s.mu = Real(mu);
  s.eps = eps;
  return s;
}

// -i tan(sqrt2 t)/sqrt2.
BigComplex tan_square(const Real& t) {
  Real w = sqrt(Real(2));
  return {Real(0), -tan(w * t) / w};
}

// z'' by a central difference of the flow along itself.
std::vector<BigComplex> fd_acceleration(const DynamicsState& s, const Real& h) {
  auto v = dynamics_rhs(s).dz;
  DynamicsState plus = s, minus = s;
  for (size_t j = 0; j < s.points.size(); ++j) {
    plus.points[j].z += v[j] * h;
    minus.points[j].z -= v[j] * h;
  }
  auto vp = dynamics_rhs(plus).dz;
  auto vm = dynamics_rhs(minus).dz;
  std::vector<BigComplex> out;
  for (size_t j = 0; j < v.size(); ++j) out.push_back((vp[j] - vm[j]) / (Real(2) * h));
  return out;
}

DynamicsState random_state(std::mt19937_64& rng, int zeros, int poles, int eps, double mu) {
  for (;;) {
    DynamicsState s = state({}, eps, mu);
    for (int k = 0; k < zeros + poles; ++k) s.points.push_back({testing::random_complex(rng, -1.2, 1.2), k < zeros ? 1 : -1});
    if (relative_gap(s) > Real(0.15)) return s;
  }
}

}  // namespace

TEST_CASE("flow examples") {
  BigComplex z(Real(0.4), Real(-0.3));
  auto one = dynamics_rhs(state({{z, 1}}, 1));
  CHECK(close(one.dz[0], -BigComplex::i() * pow(z, 3), 1e-70));

  BigComplex X(Real(0.6), Real(0.25));
  auto two = dynamics_rhs(state({{X, 1}, {-X, 1}}, 1));
  BigComplex want = -BigComplex::i() / (X * Real(2)) - BigComplex::i() * pow(X, 3);
  CHECK(close(two.dz[0], want, 1e-70));
  CHECK(close(two.dz[1], -want, 1e-70));
  CHECK(close(two.df, X * X * Real(2), 1e-70));

  auto s = state({{X, 1}, {-X, 1}, {z, -1}}, 1);
  CHECK(counting_consistent(s, 4, 1));
  CHECK_FALSE(counting_consistent(s, 5, 1));

  CHECK_THROWS_AS(dynamics_rhs(state({{z, 1}, {z, -1}}, 1)), Error);
}

TEST_CASE("closed form derivative matches the flow") {
  BigComplex c1(Real(0.8), Real(0.3)), c2(Real(-0.4), Real(1.1));
  for (double tv : {0.05, 0.3, 0.7}) {
    Real t(tv), h(1e-25);
    auto s = closed_form_nu7(t, c1, c2);
    BigComplex X = s.points[0].z;
    BigComplex Xp = sqrt(closed_form_nu7_square(t + h, c1, c2));
    BigComplex Xm = sqrt(closed_form_nu7_square(t - h, c1, c2));
    if (abs(Xp - X) > abs(Xp + X)) Xp = -Xp;
    if (abs(Xm - X) > abs(Xm + X)) Xm = -Xm;
    BigComplex dX = (Xp - Xm) / (Real(2) * h);
    CHECK(close(dynamics_rhs(s).dz[0], dX, 1e-40));
  }
  auto tan_state = closed_form_nu7(Real(0.3), BigComplex(1), BigComplex(1));
  CHECK(close(tan_state.points[0].z * tan_state.points[0].z, tan_square(Real(0.3)), 1e-70));
  CHECK_THROWS_AS(closed_form_nu7(Real(0), BigComplex(1), BigComplex(1)), Error);
  // c1 e^{i sqrt2 t} + c2 e^{-i sqrt2 t} = 0 at t = 0 for c2 = -c1.
  CHECK_THROWS_AS(closed_form_nu7(Real(0), BigComplex(1), BigComplex(-1)), Error);
}

TEST_CASE("integrated nu = 7 trajectory follows the tangent law") {
  auto s = closed_form_nu7(Real(1e-3), BigComplex(1), BigComplex(1));
  auto tr = integrate(s, Real(0.5));
  REQUIRE_FALSE(tr.stop.has_value());
  CHECK(tr.states.back().t == Real(0.5));
  Real worst(0);
  for (size_t i = 0; i < tr.states.size(); ++i) {
    const auto& st = tr.states[i];
    BigComplex X = st.points[0].z;
    worst = max(worst, abs(X * X - tan_square(st.t)));
    CHECK(abs(tr.diagnostics[i].H) < Real(1e-8));
    CHECK(abs(tr.diagnostics[i].H_tilde) < Real(1e-8));
    CHECK(tr.diagnostics[i].cm_zeros < Real(1e-8));
  }
  CHECK(worst < Real(1e-8));

  // Phase: f(t) - f(t0) = -i log(cos(sqrt2 t)/cos(sqrt2 t0)).
  Real w = sqrt(Real(2));
  BigComplex df = tr.states.back().phase_f - s.phase_f;
  BigComplex want(Real(0), -log(cos(w * Real(0.5)) / cos(w * Real(1e-3))));
  CHECK(abs(df - want) < Real(1e-8));
}

TEST_CASE("integration stops at the tangent singularity") {
  auto s = closed_form_nu7(Real(0.9), BigComplex(1), BigComplex(1));
  auto tr = integrate(s, Real(1.5));
  REQUIRE(tr.stop.has_value());
  CHECK(*tr.stop == ErrorCode::Collision);
  Real t_stop = tr.states.back().t;
  Real t_pole = Real::pi() / (Real(2) * sqrt(Real(2)));
  CHECK(abs(t_stop - t_pole) < Real(1e-3));
  CHECK(t_stop < t_pole);
}

TEST_CASE("empty state integrates trivially") {
  auto s = state({}, -1);
  s.phase_f = BigComplex(Real(0.25));
  auto tr = integrate(s, Real(0.3));
  CHECK_FALSE(tr.stop.has_value());
  CHECK(tr.states.back().phase_f == BigComplex(Real(0.25)));
  auto [H, Ht] = hamiltonians(s);
  CHECK(H.is_zero());
  CHECK(Ht.is_zero());
}

TEST_CASE("cm residual examples") {
  for (double tv : {0.1, 0.4, 1.0}) {
    auto s = closed_form_nu7(Real(tv), BigComplex(Real(0.3), Real(0.2)), BigComplex(1));
    auto r = cm_residual(s);
    CHECK(r.zeros < Real(1e-30));
    CHECK(r.poles.is_zero());
  }
  // One zero: z'' = -3 z^5 with the moment term cancelling the linear one.
  BigComplex z(Real(0.7), Real(0.1));
  auto single = state({{z, 1}}, 1);
  CHECK(cm_residual(single).zeros < Real(1e-70));
  CHECK(close(flow_acceleration(single)[0], -pow(z, 5) * Real(3), 1e-70));

  auto multi = state({{z, 2}}, 1);
  CHECK_THROWS_AS(cm_residual(multi), Error);
  CHECK_NOTHROW(dynamics_rhs(multi));
}

TEST_CASE("analytic acceleration agrees with differencing the flow") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    int eps = trial % 2 == 0 ? 1 : -1;
    double mu = trial % 3 == 0 ? 0.0 : 0.5 * (trial % 5) - 1.0;
    auto s = random_state(rng, 1 + trial % 3, trial % 3, eps, mu);
    auto exact = flow_acceleration(s);
    auto fd = fd_acceleration(s, Real(1e-30));
    for (size_t j = 0; j < exact.size(); ++j) CHECK(close(exact[j], fd[j], 1e-45));
    auto r = cm_residual(s);
    CHECK(r.zeros < Real(1e-60));
    CHECK(r.poles < Real(1e-60));
  }
}

TEST_CASE("hamiltonians are conserved and equal") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 4; ++trial) {
    BigComplex a = testing::random_complex(rng, 0.3, 0.9);
    BigComplex b = testing::random_complex(rng, 0.3, 0.9) * BigComplex::i();
    auto s = state({{a, 1}, {-a, 1}, {b, -1}, {-b, -1}}, trial % 2 ? 1 : -1);
    if (relative_gap(s) < Real(0.1)) continue;
    auto tr = integrate(s, Real(0.2));
    if (tr.stop) continue;
    auto [H0, Ht0] = hamiltonians(s);
    Real scale = max(Real(1), abs(H0));
    for (const auto& d : tr.diagnostics) {
      CHECK(abs(d.H - H0) < Real(1e-11) * scale);
      CHECK(abs(d.H_tilde - Ht0) < Real(1e-11) * scale);
      CHECK(abs(d.H - d.H_tilde) < Real(1e-11) * scale);
    }
  }
}

TEST_CASE("generating function gradients") {
  auto s = closed_form_nu7(Real(0.1), BigComplex(1), BigComplex(1));
  auto g = generating_function_check(s, Real(1e-6));
  CHECK(g.momentum_error < Real(1e-20));
  CHECK(g.fd_error < Real(1e-12) * Real(100));

  // Z = P = 1, eps = +1: the pole enters with gamma = -1, so p = i/(x - xt) - i x^3.
  BigComplex x(Real(0.5), Real(0.2)), xt(Real(-0.3), Real(0.6));
  auto pair = state({{x, 1}, {xt, -1}}, 1);
  auto gp = generating_function_check(pair, Real(1e-6));
  BigComplex p = BigComplex::i() / (x - xt) - BigComplex::i() * pow(x, 3);
  CHECK(close(gp.analytic[0], p, 1e-70));
  CHECK(gp.momentum_error < Real(1e-70));

  // The FD error shrinks like step^2.
  std::mt19937_64 rng(99);
  auto r = random_state(rng, 2, 2, -1, 0.5);
  Real e1 = generating_function_check(r, Real(1e-4)).fd_error;
  Real e2 = generating_function_check(r, Real(5e-5)).fd_error;
  CHECK(e1 / e2 > Real(3.5));
  CHECK(e1 / e2 < Real(4.5));
}

TEST_CASE("darboux chain states carry zero energy") {
  std::mt19937_64 rng(3);
  for (double nu : {7.0, 11.0, 15.0}) {
    qes::QESProblem prob{Real(nu), Real(0), -1, qes::Branch::MinusL};
    auto sp = qes::qes_spectrum(prob);
    std::vector<BigComplex> c;
    for (int k = 0; k < sp.M; ++k) c.push_back(testing::random_complex(rng, 0.5, 1.5));
    auto s = darboux_chain_state(sp, c, Real(0.05));
    CHECK(static_cast<int>(s.points.size()) == 2 * (sp.M - 1));
    auto [H, Ht] = hamiltonians(s);
    CHECK(abs(H) < Real(1e-50));
    CHECK(Ht.is_zero());
    CHECK(abs(time_schrodinger_residual(s, BigComplex(Real(0.3), Real(0.45)))) < Real(1e-50));

    // Roots at a later time agree with integrating the flow.
    auto tr = integrate(s, Real(0.15));
    REQUIRE_FALSE(tr.stop.has_value());
    auto later = darboux_chain_state(sp, c, Real(0.15));
    for (const auto& p : tr.states.back().points) {
      Real best(1e9);
      for (const auto& q : later.points) best = min(best, abs(p.z - q.z));
      CHECK(best < Real(1e-8));
    }
  }
}

TEST_CASE("time-dependent Schrodinger identity for general states") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    auto s = random_state(rng, 1 + trial % 3, trial % 2 + 1, trial % 2 ? 1 : -1, 0.25 * trial);
    BigComplex x = testing::random_complex(rng, 1.5, 2.0);
    CHECK(abs(time_schrodinger_residual(s, x)) < Real(1e-55));
  }
}

TEST_CASE("stieltjes solutions are stationary") {
  BigComplex a = root(BigComplex(Real(0.5)), 4);
  auto s = state({{a, -1}, {-a, -1}}, 1);
  auto v = dynamics_rhs(s);
  for (const auto& d : v.dz) CHECK(abs(d) < Real(1e-70));

  QuasiRationalFunction psi;
  psi.mu = Real(0);
  psi.eps = 1;
  psi.poles = {a, -a};
  auto rep = stieltjes::stieltjes_implies_locus(psi, Real(1e-60));
  CHECK(rep.locus_ok);

  auto tr = integrate(s, Real(0.2));
  CHECK_FALSE(tr.stop.has_value());
  CHECK(abs(tr.states.back().points[0].z - a) < Real(1e-60));
}
