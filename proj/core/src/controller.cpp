#include "funnelquad/controller.hpp"

#include <cmath>
#include <numbers>

namespace funnelquad {

namespace {

// -k / rho * r * eps for one channel.
double loop_term(double k, const ChannelSignal& s) {
  return -k / s.rho * s.slope * s.eps;
}

Channel nth(Channel base, int i) {
  return static_cast<Channel>(static_cast<int>(base) + i);
}

}  // namespace

void GainSet::validate() const {
  const bool ok = (k_p.array() > 0.0).all() && (k_v_xy.array() > 0.0).all() &&
                  k_v_z > 0.0 && (k_phitheta.array() > 0.0).all() &&
                  k_psi > 0.0 && (k_omega.array() > 0.0).all();
  if (!ok) throw ConfigError("gains", "all gain entries must be > 0");
}

void TheoremConditions::validate() const {
  if (!(pi_bar > 0.0 && pi_bar < std::numbers::pi / 2.0)) {
    throw ConfigError("conditions.pi_bar", "must lie in (0, pi/2)");
  }
  if (!(f_z_min > 0.0)) {
    throw ConfigError("conditions.F_z_min", "must be > 0");
  }
}

Vec3 reference_velocity(const Vec3& e_p, const FunnelSet& funnels,
                        const GainSet& gains, double t, XiPolicy policy) {
  Vec3 v_r;
  for (int i = 0; i < 3; ++i) {
    const auto s = evaluate_channel(e_p(i), funnels.pos[i],
                                    nth(Channel::p_x, i), t, policy);
    v_r(i) = loop_term(gains.k_p(i), s);
  }
  return v_r;
}

double thrust(double e_v_z, const PerformanceFunction& funnel, double k_v_z,
              double t, XiPolicy policy) {
  const auto s = evaluate_channel(e_v_z, funnel, Channel::v_z, t, policy);
  return loop_term(k_v_z, s);
}

Vec2 tilt_reference(const Vec2& e_v_xy, double psi, double f_z,
                    const FunnelSet& funnels, const Vec2& k_v_xy,
                    double f_z_min, double t, XiPolicy policy) {
  Vec2 w;  // rho^-1 r eps, per lateral channel
  for (int i = 0; i < 2; ++i) {
    const auto s = evaluate_channel(e_v_xy(i), funnels.vel[i],
                                    nth(Channel::v_x, i), t, policy);
    w(i) = s.slope * s.eps / s.rho;
  }
  // The lateral feedback vanishes identically at zero error; the commanded
  // tilt is then zero whatever the thrust is (the division is 0/0 in the
  // formula but its limit is 0).
  if (w(0) == 0.0 && w(1) == 0.0) {
    return Vec2::Zero();
  }
  if (std::fabs(f_z) < f_z_min) {
    throw ThrustDegenerate(f_z, f_z_min, t);
  }
  return -(k_v_xy.asDiagonal() * (yaw_rotation_2d(psi).transpose() * w)) /
         f_z;
}

Vec3 rate_reference(const Vec2& e_tilt, double e_psi, const EulerAngles& eta,
                    const Vec3& omega, const FunnelSet& funnels,
                    const GainSet& gains, double t, XiPolicy policy) {
  Vec2 w;
  for (int i = 0; i < 2; ++i) {
    const auto s = evaluate_channel(e_tilt(i), funnels.tilt[i],
                                    nth(Channel::phitheta_1, i), t, policy);
    w(i) = s.slope * s.eps / s.rho;
  }
  const Mat2 j_inv = tilt_jacobian(eta.phi, eta.theta).inverse();
  const Mat2 r_inv = heading_block(eta.psi, eta.theta).inverse();
  const Vec2 omega_pt_r =
      -(gains.k_phitheta.asDiagonal() * (r_inv * (j_inv * w)));

  const auto s_psi = evaluate_channel(e_psi, funnels.yaw, Channel::psi, t,
                                      policy);
  const double tt = std::tan(eta.theta);
  const double omega_psi_r = loop_term(gains.k_psi, s_psi) -
                             omega(0) * std::cos(eta.psi) * tt -
                             omega(1) * std::sin(eta.psi) * tt;

  return {omega_pt_r(0), omega_pt_r(1), omega_psi_r};
}

Vec3 torque(const Vec3& e_omega, const FunnelSet& funnels, const Vec3& k_omega,
            double t, XiPolicy policy) {
  Vec3 tau;
  for (int i = 0; i < 3; ++i) {
    const auto s = evaluate_channel(e_omega(i), funnels.rate[i],
                                    nth(Channel::omega_phi, i), t, policy);
    tau(i) = loop_term(k_omega(i), s);
  }
  return tau;
}

std::array<bool, 3> check_conditions(double f_z, const Vec2& tilt_r,
                                     const FunnelSet& funnels,
                                     const GainSet& gains,
                                     const TheoremConditions& cond, double t) {
  std::array<bool, 3> flags;
  flags[0] = std::fabs(f_z) >= cond.f_z_min;

  const double ratio = gains.k_v_xy.minCoeff() / gains.k_v_z;
  const double rho0_max =
      std::max(funnels.tilt[0].rho0, funnels.tilt[1].rho0);
  const double c = std::cos(cond.pi_bar);
  flags[1] = ratio > rho0_max / (4.0 * c * c);

  flags[2] = true;
  for (int i = 0; i < 2; ++i) {
    if (std::fabs(tilt_r(i)) > funnels.tilt[i].value(t) + 1.0) {
      flags[2] = false;
    }
  }
  return flags;
}

ControlResult compute_control(double t, const VehicleState& state,
                              const ReferenceSample& ref,
                              const FunnelSet& funnels, const GainSet& gains,
                              const TheoremConditions& cond,
                              XiPolicy policy) {
  ControlResult out;
  auto& diag = out.diagnostics;

  auto record = [&](Channel c, const ChannelSignal& s) {
    const auto i = channel_index(c);
    diag.e_all[i] = s.e;
    diag.rho_all[i] = s.rho;
    diag.xi_all[i] = s.xi;
    diag.eps_all[i] = s.eps;
  };

  // Position loop.
  const Vec3 e_p = state.p - ref.p_r;
  for (int i = 0; i < 3; ++i) {
    record(nth(Channel::p_x, i),
           evaluate_channel(e_p(i), funnels.pos[i], nth(Channel::p_x, i), t,
                            policy));
  }
  diag.v_r = reference_velocity(e_p, funnels, gains, t, policy);

  // Velocity loop: thrust from the vertical channel, tilt reference from
  // the horizontal ones.
  const Vec3 e_v = state.v - diag.v_r;
  for (int i = 0; i < 3; ++i) {
    record(nth(Channel::v_x, i),
           evaluate_channel(e_v(i), funnels.vel[i], nth(Channel::v_x, i), t,
                            policy));
  }
  out.command.f_z = thrust(e_v(2), funnels.vel[2], gains.k_v_z, t, policy);
  diag.tilt_r = tilt_reference(e_v.head<2>(), state.eta.psi, out.command.f_z,
                               funnels, gains.k_v_xy, cond.f_z_min, t,
                               policy);

  // Tilt and yaw loops.
  const Vec2 e_tilt =
      tilt_vector(state.eta.phi, state.eta.theta) - diag.tilt_r;
  for (int i = 0; i < 2; ++i) {
    record(nth(Channel::phitheta_1, i),
           evaluate_channel(e_tilt(i), funnels.tilt[i],
                            nth(Channel::phitheta_1, i), t, policy));
  }
  const double e_psi = wrap_angle(state.eta.psi - ref.psi_r);
  record(Channel::psi,
         evaluate_channel(e_psi, funnels.yaw, Channel::psi, t, policy));
  diag.omega_r = rate_reference(e_tilt, e_psi, state.eta, state.omega,
                                funnels, gains, t, policy);

  // Rate loop.
  const Vec3 e_omega = state.omega - diag.omega_r;
  for (int i = 0; i < 3; ++i) {
    record(nth(Channel::omega_phi, i),
           evaluate_channel(e_omega(i), funnels.rate[i],
                            nth(Channel::omega_phi, i), t, policy));
  }
  out.command.tau = torque(e_omega, funnels, gains.k_omega, t, policy);

  diag.condition_flags = check_conditions(out.command.f_z, diag.tilt_r,
                                          funnels, gains, cond, t);
  return out;
}

}  // namespace funnelquad
