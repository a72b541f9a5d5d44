#ifndef FUNNELQUAD_STATE_HPP
#define FUNNELQUAD_STATE_HPP

#include <Eigen/Dense>

#include "funnelquad/attitude.hpp"

namespace funnelquad {

/// Flat state layout used by the integrator: (p, v, eta, omega).
using StateVec = Eigen::Matrix<double, 12, 1>;

/// Full rigid-body state: inertial position and velocity, Euler attitude,
/// angular velocity.
struct VehicleState {
  Vec3 p = Vec3::Zero();
  Vec3 v = Vec3::Zero();
  EulerAngles eta;
  Vec3 omega = Vec3::Zero();
};

/// Collective body-z thrust and 3-axis torque.
struct ControlCommand {
  double f_z = 0.0;
  Vec3 tau = Vec3::Zero();
};

StateVec pack_state(const VehicleState& s);
VehicleState unpack_state(const StateVec& x);

/// Checks finiteness of every component and the Euler-angle domain
/// (|phi|, |theta| < pi/2). Throws NumericError or SingularityError.
void validate_state(const VehicleState& s);

}  // namespace funnelquad

#endif  // FUNNELQUAD_STATE_HPP
