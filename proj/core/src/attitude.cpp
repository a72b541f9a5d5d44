#include "funnelquad/attitude.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace funnelquad {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

double wrap_angle(double a) {
  double w = std::remainder(a, kTwoPi);  // lands in [-pi, pi]
  if (w <= -kPi) w += kTwoPi;
  return w;
}

Mat3 rot_body_to_inertial(const EulerAngles& eta) {
  using Eigen::AngleAxisd;
  return (AngleAxisd(eta.psi, Vec3::UnitZ()) *
          AngleAxisd(eta.theta, Vec3::UnitY()) *
          AngleAxisd(eta.phi, Vec3::UnitX()))
      .toRotationMatrix();
}

Vec2 tilt_vector(double phi, double theta) {
  return {std::sin(theta) * std::cos(phi), -std::sin(phi)};
}

Mat2 tilt_jacobian(double phi, double theta) {
  const double sp = std::sin(phi), cp = std::cos(phi);
  const double st = std::sin(theta), ct = std::cos(theta);
  // det = cos(phi)^2 cos(theta)
  if (std::fabs(cp * cp * ct) < kSingularityTol) {
    throw SingularityError("tilt Jacobian degenerate at phi = " +
                           std::to_string(phi) +
                           ", theta = " + std::to_string(theta));
  }
  Mat2 j;
  j << -st * sp, ct * cp,  //
      -cp, 0.0;
  return j;
}

Mat2 heading_block(double psi, double theta) {
  const double ct = std::cos(theta);
  if (std::fabs(ct) < kSingularityTol) {
    throw SingularityError("heading block undefined at theta = " +
                           std::to_string(theta));
  }
  const double sp = std::sin(psi), cp = std::cos(psi);
  Mat2 r;
  r << cp / ct, sp / ct,  //
      -sp, cp;
  return r;
}

Mat3 euler_rate_map(const EulerAngles& eta) {
  const Mat2 block = heading_block(eta.psi, eta.theta);
  const double tt = std::tan(eta.theta);
  Mat3 m;
  m.topLeftCorner<2, 2>() = block;
  m.topRightCorner<2, 1>().setZero();
  m(2, 0) = std::cos(eta.psi) * tt;
  m(2, 1) = std::sin(eta.psi) * tt;
  m(2, 2) = 1.0;
  return m;
}

Mat2 yaw_rotation_2d(double psi) {
  return Eigen::Rotation2Dd(psi).toRotationMatrix();
}

TiltAngles tilt_to_angles(const Vec2& tilt) {
  if (!(std::fabs(tilt.y()) < 1.0)) {
    throw InversionError("|second component| = " +
                         std::to_string(std::fabs(tilt.y())) + " >= 1");
  }
  const double phi = std::asin(-tilt.y());
  const double ratio = tilt.x() / std::cos(phi);
  if (std::fabs(ratio) > 1.0) {
    throw InversionError("first component / cos(phi) = " +
                         std::to_string(ratio) + " outside [-1, 1]");
  }
  return {phi, std::asin(ratio)};
}

}  // namespace funnelquad
