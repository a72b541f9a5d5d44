#ifndef FUNNELQUAD_CONTROLLER_HPP
#define FUNNELQUAD_CONTROLLER_HPP

// The control law is model-free: this header must stay free of any include
// path to the plant parameters (see tests/controller_isolation.cpp).

#include <array>

#include "funnelquad/attitude.hpp"
#include "funnelquad/funnel.hpp"
#include "funnelquad/state.hpp"

namespace funnelquad {

/// Per-loop diagonal gains, all strictly positive.
struct GainSet {
  Vec3 k_p = Vec3(1.25, 1.25, 12.5);
  Vec2 k_v_xy = Vec2(1.0, 2.0);
  double k_v_z = 10.0;
  Vec2 k_phitheta = Vec2(3.0, 1.5);
  double k_psi = 1.0;
  Vec3 k_omega = Vec3(10.0, 10.0, 10.0);

  void validate() const;
};

/// Commanded position and heading at one instant. The generators also have
/// derivatives, but the control law never consumes them.
struct ReferenceSample {
  Vec3 p_r = Vec3::Zero();
  double psi_r = 0.0;
};

/// Runtime thresholds for the closed-loop operating assumptions:
/// pi_bar bounds |phi|, |theta| away from pi/2, f_z_min makes the
/// strict condition F_z != 0 monitorable.
struct TheoremConditions {
  double pi_bar = 1.2;    // rad, must lie in (0, pi/2)
  double f_z_min = 1e-3;  // N

  void validate() const;
};

/// Everything the cascade computed on the way to a command. xi/eps arrays
/// are indexed by Channel; every xi is recorded raw (pre-clamp).
struct ControlDiagnostics {
  Vec3 v_r = Vec3::Zero();
  Vec2 tilt_r = Vec2::Zero();
  Vec3 omega_r = Vec3::Zero();
  std::array<double, kChannelCount> e_all{};
  std::array<double, kChannelCount> rho_all{};
  std::array<double, kChannelCount> xi_all{};
  std::array<double, kChannelCount> eps_all{};
  std::array<bool, 3> condition_flags{true, true, true};
};

struct ControlResult {
  ControlCommand command;
  ControlDiagnostics diagnostics;
};

/// Position loop: v_r = -k_p rho_p^-1 r_p eps_p, componentwise.
Vec3 reference_velocity(const Vec3& e_p, const FunnelSet& funnels,
                        const GainSet& gains, double t,
                        XiPolicy policy = XiPolicy::strict);

/// Vertical velocity loop: F_z = -k_vz rho_vz^-1 r_vz eps_vz.
double thrust(double e_v_z, const PerformanceFunction& funnel, double k_v_z,
              double t, XiPolicy policy = XiPolicy::strict);

/// Horizontal velocity loop:
///   tilt_r = -K_vxy R_psi^T rho_vxy^-1 r_vxy eps_vxy / F_z.
/// Exactly zero lateral feedback commands zero tilt for any F_z; otherwise
/// |F_z| < f_z_min throws ThrustDegenerate.
Vec2 tilt_reference(const Vec2& e_v_xy, double psi, double f_z,
                    const FunnelSet& funnels, const Vec2& k_v_xy,
                    double f_z_min, double t,
                    XiPolicy policy = XiPolicy::strict);

/// Tilt and yaw loops:
///   omega_phitheta_r = -K_pt R_phitheta^-1 J_phitheta^-1
///                       rho_pt^-1 r_pt eps_pt
///   omega_psi_r      = -k_psi rho_psi^-1 r_psi eps_psi
///                       - omega_phi cos(psi)tan(theta)
///                       - omega_theta sin(psi)tan(theta)
/// The yaw feedforward uses the measured rates.
Vec3 rate_reference(const Vec2& e_tilt, double e_psi, const EulerAngles& eta,
                    const Vec3& omega, const FunnelSet& funnels,
                    const GainSet& gains, double t,
                    XiPolicy policy = XiPolicy::strict);

/// Rate loop: tau = -k_omega rho_omega^-1 r_omega eps_omega, componentwise.
Vec3 torque(const Vec3& e_omega, const FunnelSet& funnels,
            const Vec3& k_omega, double t,
            XiPolicy policy = XiPolicy::strict);

/// Operating-assumption monitor, evaluated each step but never feeding back
/// into the command:
///   (a) |F_z| >= f_z_min
///   (b) min_i k_vxy_i / k_vz > max_j rho_phitheta_j,0 / (4 cos^2 pi_bar)
///   (c) |tilt_r_i(t)| <= rho_phitheta_i(t) + 1 for both components
std::array<bool, 3> check_conditions(double f_z, const Vec2& tilt_r,
                                     const FunnelSet& funnels,
                                     const GainSet& gains,
                                     const TheoremConditions& cond, double t);

/// The full cascade: position -> velocity -> tilt/yaw -> rate -> torque.
/// Evaluates every stage at time t from measured state and reference,
/// recording all twelve normalized errors along the way. The first funnel
/// violation (strict policy), degenerate thrust, or kinematic singularity
/// aborts with a tagged exception.
ControlResult compute_control(double t, const VehicleState& state,
                              const ReferenceSample& ref,
                              const FunnelSet& funnels, const GainSet& gains,
                              const TheoremConditions& cond,
                              XiPolicy policy = XiPolicy::strict);

}  // namespace funnelquad

#endif  // FUNNELQUAD_CONTROLLER_HPP
