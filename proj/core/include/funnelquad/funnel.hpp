#ifndef FUNNELQUAD_FUNNEL_HPP
#define FUNNELQUAD_FUNNEL_HPP

#include <array>
#include <limits>

#include "funnelquad/channels.hpp"
#include "funnelquad/errors.hpp"

namespace funnelquad {

/// Exponentially shrinking performance envelope
///   rho(t) = (rho0 - rho_inf) * exp(-l * t) + rho_inf.
/// rho0 bounds the initial error, rho_inf the steady-state error, l the
/// convergence rate. Requires rho0 > rho_inf > 0 and l > 0.
struct PerformanceFunction {
  double rho0;
  double rho_inf;
  double l;

  /// rho(t) for t >= 0. Strictly decreasing, bounded below by rho_inf.
  double value(double t) const;

  /// d rho / dt = -l * (rho0 - rho_inf) * exp(-l * t). Negative for finite t.
  double derivative(double t) const;

  /// Throws ConfigError if the parameter ordering constraints are violated.
  void validate(const char* name = "performance function") const;
};

/// The twelve per-channel envelopes of the cascade, indexed by Channel.
struct FunnelSet {
  std::array<PerformanceFunction, 3> pos;   // p_x, p_y, p_z      [m]
  std::array<PerformanceFunction, 3> vel;   // v_x, v_y, v_z      [m/s]
  std::array<PerformanceFunction, 2> tilt;  // phitheta_1/2       [-]
  PerformanceFunction yaw;                  // psi                [rad]
  std::array<PerformanceFunction, 3> rate;  // omega_phi/theta/psi [rad/s]

  const PerformanceFunction& channel(Channel c) const;
  PerformanceFunction& channel(Channel c);

  void validate() const;
};

/// Error scaled by its envelope; the funnel constraint reads |xi| < 1.
struct NormalizedError {
  double value;
};

/// xi = e / rho. Requires rho > 0; out-of-funnel values are returned as-is
/// and flagged downstream.
NormalizedError normalize(double error, double rho);

/// The PPC error transformation eps = atanh(xi): odd, strictly increasing,
/// unbounded as |xi| -> 1. Throws FunnelViolation for |xi| >= 1.
double transform(NormalizedError xi);

/// d eps / d xi = 1 / (1 - xi^2) >= 1. Throws FunnelViolation for |xi| >= 1.
double transform_slope(NormalizedError xi);

/// Whether a channel at the funnel boundary aborts or is clamped just
/// inside it (diagnostic continuation for post-mortem runs).
enum class XiPolicy { strict, clamp };

inline constexpr double kXiClamp = 1.0 - 1e-9;

/// One channel fully evaluated at time t: error, envelope, normalized error,
/// transformed error and transform slope. In clamp mode, xi keeps the raw
/// (possibly out-of-funnel) value while eps/slope use the clamped one.
struct ChannelSignal {
  double e = 0.0;
  double rho = 0.0;
  double xi = 0.0;
  double eps = 0.0;
  double slope = 1.0;
  bool violated = false;
};

ChannelSignal evaluate_channel(double error, const PerformanceFunction& pf,
                               Channel channel, double t,
                               XiPolicy policy = XiPolicy::strict);

}  // namespace funnelquad

#endif  // FUNNELQUAD_FUNNEL_HPP
