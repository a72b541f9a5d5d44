#ifndef FUNNELQUAD_ATTITUDE_HPP
#define FUNNELQUAD_ATTITUDE_HPP

#include <Eigen/Dense>

#include "funnelquad/errors.hpp"

namespace funnelquad {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

/// ZYX Euler angles (roll phi, pitch theta, yaw psi). Roll and pitch live in
/// (-pi/2, pi/2); yaw is kept wrapped to (-pi, pi].
struct EulerAngles {
  double phi = 0.0;
  double theta = 0.0;
  double psi = 0.0;
};

/// Wrap an angle to (-pi, pi].
double wrap_angle(double a);

/// Determinant threshold below which the kinematic maps are treated as
/// singular. Far tighter than any operational tilt bound, so it only fires
/// on genuine blow-up.
inline constexpr double kSingularityTol = 1e-9;

/// Body-to-inertial rotation R = Rz(psi) * Ry(theta) * Rx(phi).
Mat3 rot_body_to_inertial(const EulerAngles& eta);

/// Tilt vector (sin(theta)cos(phi), -sin(phi)): the 2D surrogate through
/// which body-z thrust commands horizontal acceleration.
Vec2 tilt_vector(double phi, double theta);

/// Jacobian of tilt_vector wrt (phi, theta):
///   [[-sin(theta)sin(phi), cos(theta)cos(phi)], [-cos(phi), 0]].
/// Throws SingularityError when |det| = |cos(phi)^2 cos(theta)| < tol.
Mat2 tilt_jacobian(double phi, double theta);

/// Upper-left 2x2 block of the Euler rate map:
///   [[cos(psi)/cos(theta), sin(psi)/cos(theta)], [-sin(psi), cos(psi)]].
/// Invertible for |theta| < pi/2; throws SingularityError near the boundary.
Mat2 heading_block(double psi, double theta);

/// Full 3x3 map from angular velocity to Euler-angle rates:
///   [heading_block, 0; cos(psi)tan(theta), sin(psi)tan(theta), 1].
Mat3 euler_rate_map(const EulerAngles& eta);

/// Planar rotation in SO(2).
Mat2 yaw_rotation_2d(double psi);

/// Invert tilt_vector back to (phi, theta). Throws InversionError when the
/// input lies outside the image of the admissible angle box.
struct TiltAngles {
  double phi;
  double theta;
};
TiltAngles tilt_to_angles(const Vec2& tilt);

}  // namespace funnelquad

#endif  // FUNNELQUAD_ATTITUDE_HPP
