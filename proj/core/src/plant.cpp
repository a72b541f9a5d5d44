#include "funnelquad/plant.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace funnelquad {

StateVec pack_state(const VehicleState& s) {
  StateVec x;
  x.segment<3>(0) = s.p;
  x.segment<3>(3) = s.v;
  x(6) = s.eta.phi;
  x(7) = s.eta.theta;
  x(8) = s.eta.psi;
  x.segment<3>(9) = s.omega;
  return x;
}

VehicleState unpack_state(const StateVec& x) {
  VehicleState s;
  s.p = x.segment<3>(0);
  s.v = x.segment<3>(3);
  s.eta = EulerAngles{x(6), x(7), x(8)};
  s.omega = x.segment<3>(9);
  return s;
}

void validate_state(const VehicleState& s) {
  const StateVec x = pack_state(s);
  if (!x.allFinite()) {
    throw NumericError("state contains NaN/Inf");
  }
  constexpr double half_pi = std::numbers::pi / 2.0;
  if (std::fabs(s.eta.phi) >= half_pi || std::fabs(s.eta.theta) >= half_pi) {
    throw SingularityError("attitude left the Euler domain: phi = " +
                           std::to_string(s.eta.phi) +
                           ", theta = " + std::to_string(s.eta.theta));
  }
}

void QuadParams::validate() const {
  if (!(m > 0.0)) throw ConfigError("params.m", "mass must be > 0");
  if (!(inertia_diag.array() > 0.0).all()) {
    throw ConfigError("params.inertia", "inertia entries must be > 0");
  }
  if (!(g > 0.0)) throw ConfigError("params.g", "g must be > 0");
}

std::pair<Vec3, Vec3> disturbance(const DisturbanceSpec& spec,
                                  const VehicleState& state, double t) {
  switch (spec.kind) {
    case DisturbanceKind::none:
      return {Vec3::Zero(), Vec3::Zero()};
    case DisturbanceKind::constant:
      return {spec.force_params, spec.torque_params};
    case DisturbanceKind::sinusoid: {
      const double s = std::sin(spec.frequency * t);
      return {spec.force_params * s, spec.torque_params * s};
    }
    case DisturbanceKind::linear_drag:
      return {-spec.force_params.cwiseProduct(state.v),
              -spec.torque_params.cwiseProduct(state.omega)};
  }
  return {Vec3::Zero(), Vec3::Zero()};
}

StateVec dynamics_rhs(const VehicleState& state, const ControlCommand& cmd,
                      const DisturbanceSpec& spec, const QuadParams& params,
                      double t) {
  const auto [f_d, tau_d] = disturbance(spec, state, t);

  const Mat3 r_ib = rot_body_to_inertial(state.eta);
  const Vec3 thrust_world = r_ib * Vec3(0.0, 0.0, cmd.f_z);

  const Vec3 p_dot = state.v;
  const Vec3 v_dot =
      (thrust_world + f_d) / params.m - Vec3(0.0, 0.0, params.g);
  const Vec3 eta_dot = euler_rate_map(state.eta) * state.omega;

  const Vec3 i_omega = params.inertia_diag.cwiseProduct(state.omega);
  const Vec3 omega_dot = (-state.omega.cross(i_omega) + cmd.tau + tau_d)
                             .cwiseQuotient(params.inertia_diag);

  StateVec dx;
  dx.segment<3>(0) = p_dot;
  dx.segment<3>(3) = v_dot;
  dx.segment<3>(6) = eta_dot;
  dx.segment<3>(9) = omega_dot;
  return dx;
}

}  // namespace funnelquad
