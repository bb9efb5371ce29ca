#pragma once

#include "exactnum/errors.hpp"
#include "qes/qes.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sextic::dynamics {

struct MovingPoint {
  BigComplex z;
  int gamma = 1;  // +alpha for zeros, -beta for poles
};

/// psi(x, t) = x^mu prod (x - z_j)^gamma_j exp(eps x^4/4 + i f), evolving by
/// 2i psi_t = -psi'' + V psi.
struct DynamicsState {
  std::vector<MovingPoint> points;
  Real t;
  BigComplex phase_f;
  Real mu;
  int eps = -1;

  int zero_count() const;
  int pole_count() const;
};

struct Velocity {
  std::vector<BigComplex> dz;
  BigComplex df;
};

/// dz_j/dt = -i (sum_k gamma_k/(z_j - z_k) + mu/z_j + eps z_j^3) and
/// df/dt = eps sum gamma_j z_j^2.
Velocity dynamics_rhs(const DynamicsState& s);

/// Minimum distance between points (and to the origin when mu != 0) divided
/// by max(1, max |z|).
Real relative_gap(const DynamicsState& s);

struct Diagnostics {
  BigComplex H;
  BigComplex H_tilde;
  Real cm_zeros;
  Real cm_poles;
};

struct IntegrateOptions {
  double rtol = 1e-12;
  double atol = 1e-12;
  double max_step = 0.05;
  double initial_step = 1e-3;
  double safety = 0.9;
  double collision_threshold = 1e-5;
  double escape_factor = 1e4;  // relative to max(1, initial max |z|)
  double min_step = 1e-14;
  bool diagnostics = true;
};

struct Trajectory {
  std::vector<DynamicsState> states;
  std::vector<Diagnostics> diagnostics;  // empty unless requested
  int rejected_steps = 0;
  std::optional<ErrorCode> stop;
  std::string diagnostic;
};

/// Dormand-Prince 5(4) from s to t_end; every accepted step is a sample.  A
/// collision, escape to infinity or step underflow ends the trajectory early
/// with stop set.
Trajectory integrate(const DynamicsState& s, const Real& t_end, const IntegrateOptions& opts = {});

struct CMResidual {
  Real zeros;
  Real poles;
};

/// Deviation of z'' (obtained by differentiating the flow along itself) from
///   z'' = sum_same 2/(z_j - z_k)^3 + mu(mu + g_j)/z_j^3 - 3 z_j^5
///         - eps z_j (2(Z - P + mu) - 3 g_j) - eps sum gamma z - mu (sum gamma/z)/z_j^2.
/// The last two terms vanish on symmetric states.  Throws for |gamma| > 1.
CMResidual cm_residual(const DynamicsState& s);
std::vector<CMResidual> cm_residual(const Trajectory& tr);

/// Exact z'' from the flow.
std::vector<BigComplex> flow_acceleration(const DynamicsState& s);

/// H over the zeros and H~ over the poles with momenta p = dz/dt.
std::pair<BigComplex, BigComplex> hamiltonians(const DynamicsState& s);

/// S = -i [sum log(x_j - x_k) + sum log(xt_j - xt_k) - sum log(x_j - xt_k)
///         + mu sum log x - mu sum log xt] - i eps sum x^4/4 + i eps sum xt^4/4.
BigComplex generating_function(const DynamicsState& s);

struct GeneratingCheck {
  std::vector<BigComplex> analytic;  // dS/dx_j for zeros, -dS/dxt_j for poles, in state order
  std::vector<BigComplex> finite_difference;
  Real fd_error;        // max |analytic - fd|
  Real momentum_error;  // max |analytic - dz/dt|
};

GeneratingCheck generating_function_check(const DynamicsState& s, const Real& fd_step);

/// The two-zero nu = 7 state +-X(t) with
/// X^2 = -(c1 e^{i sqrt2 t} - c2 e^{-i sqrt2 t}) / (sqrt2 (c1 e^{i sqrt2 t} + c2 e^{-i sqrt2 t})).
DynamicsState closed_form_nu7(const Real& t, const BigComplex& c1, const BigComplex& c2);
BigComplex closed_form_nu7_square(const Real& t, const BigComplex& c1, const BigComplex& c2);

/// Zeros at time t of sum_k c_k exp(-i lambda_k t/2) psi_k for the QES
/// eigenfunctions psi_k of spectrum.
DynamicsState darboux_chain_state(const qes::QESSpectrum& spectrum, const std::vector<BigComplex>& c,
                                  const Real& t);

/// 2i psi_t/psi + psi''/psi - V at x, with V the time-dependent potential
/// x^6 - nu x^2 + 2 eps (sum gamma z) x + mu(mu-1)/x^2 - 2 mu (sum gamma/z)/x
///   + sum gamma(gamma-1)/(x - z)^2,   nu = -eps (2(Z - P) + 2 mu + 3)
/// (for |gamma| = 1).
BigComplex time_schrodinger_residual(const DynamicsState& s, const BigComplex& x);

/// sum alpha - sum beta = N - 3m bookkeeping for a Wronskian pair.
bool counting_consistent(const DynamicsState& s, int N, int m);

}  // namespace sextic::dynamics
