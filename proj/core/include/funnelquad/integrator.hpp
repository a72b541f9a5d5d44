#ifndef FUNNELQUAD_INTEGRATOR_HPP
#define FUNNELQUAD_INTEGRATOR_HPP

#include <utility>

namespace funnelquad {

/// One classical 4th-order Runge-Kutta step of x' = rhs(x, t).
/// Works for any state type supporting x + s * x (scalars, Eigen vectors).
template <typename State, typename Rhs>
State rk4_step(Rhs&& rhs, const State& x, double t, double dt) {
  const State k1 = rhs(x, t);
  const State k2 = rhs(State(x + (0.5 * dt) * k1), t + 0.5 * dt);
  const State k3 = rhs(State(x + (0.5 * dt) * k2), t + 0.5 * dt);
  const State k4 = rhs(State(x + dt * k3), t + dt);
  return State(x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

}  // namespace funnelquad

#endif  // FUNNELQUAD_INTEGRATOR_HPP
