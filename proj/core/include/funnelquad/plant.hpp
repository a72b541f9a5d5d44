#ifndef FUNNELQUAD_PLANT_HPP
#define FUNNELQUAD_PLANT_HPP

#include <utility>

#include "funnelquad/state.hpp"

namespace funnelquad {

/// Physical parameters of the vehicle. These exist only on the plant side;
/// the control law never sees them.
struct QuadParams {
  double m = 1.0;                          // kg
  Vec3 inertia_diag = Vec3(1.0, 1.0, 2.0); // kg m^2, body-frame diagonal
  double g = 9.81;                         // m/s^2

  void validate() const;
};

enum class DisturbanceKind { none, constant, sinusoid, linear_drag };

/// Exogenous force/torque model. Every kind is uniformly bounded in time:
/// constants, sinusoids, and linear drag against the (bounded) state.
struct DisturbanceSpec {
  DisturbanceKind kind = DisturbanceKind::none;
  Vec3 force_params = Vec3::Zero();   // N (amplitude or drag coefficient)
  Vec3 torque_params = Vec3::Zero();  // N m
  double frequency = 0.0;             // rad/s, sinusoid only
};

/// Evaluate the disturbance force/torque at (state, t).
std::pair<Vec3, Vec3> disturbance(const DisturbanceSpec& spec,
                                  const VehicleState& state, double t);

/// Rigid-body dynamics:
///   p_dot     = v
///   v_dot     = (R_IB [0,0,F_z]^T + F_d) / m - [0,0,g]^T
///   eta_dot   = R_T(eta) omega
///   omega_dot = I^-1 (-omega x I omega + tau + tau_d)
/// Returns the packed derivative (p_dot, v_dot, eta_dot, omega_dot).
StateVec dynamics_rhs(const VehicleState& state, const ControlCommand& cmd,
                      const DisturbanceSpec& spec, const QuadParams& params,
                      double t);

}  // namespace funnelquad

#endif  // FUNNELQUAD_PLANT_HPP
