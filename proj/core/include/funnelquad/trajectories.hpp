#ifndef FUNNELQUAD_TRAJECTORIES_HPP
#define FUNNELQUAD_TRAJECTORIES_HPP

#include <variant>

#include "funnelquad/controller.hpp"

namespace funnelquad {

/// Figure-eight sweep in the horizontal plane with a constant-rate climb:
///   p_x = cos(t) / (1 + sin^2 t)
///   p_y = sin(t) cos(t) / (1 + sin^2 t)
///   p_z = 1 + t/5,  psi_r = 0
struct LemniscateAscent {};

/// Descend onto a moving surface vehicle: horizontal components follow
/// boat_path, vertical follows a sigmoid from z_d down to 0 centred at t_d.
struct Landing {
  double z_d = 5.0;
  double t_d = 5.0;
};

/// Constant reference with zero derivatives.
struct Hover {
  Vec3 p = Vec3::Zero();
  double psi = 0.0;
};

using TrajectoryKind = std::variant<LemniscateAscent, Landing, Hover>;

/// Planar unicycle pose of the surface vehicle.
struct BoatState {
  Vec2 p_b = Vec2::Zero();
  double alpha = 0.0;
};

/// Closed-form solution of the unicycle
///   p_dot = (cos alpha, sin alpha), alpha_dot = u(t)
/// with u piecewise in {-1, 1, -1, 0} switching at 3pi/4, 9pi/4, 11pi/4,
/// defined on [0, 10]. Throws std::out_of_range outside that window.
BoatState boat_path(double t);

ReferenceSample lemniscate_ascent(double t);
ReferenceSample landing_reference(double t, double z_d = 5.0,
                                  double t_d = 5.0);
ReferenceSample hover_reference(const Hover& h);

/// Sample any trajectory kind at time t.
ReferenceSample sample(const TrajectoryKind& kind, double t);

/// Analytic first derivatives of the reference (position rate and yaw
/// rate). Not consumed by the control law; used for generator validation.
struct ReferenceRates {
  Vec3 p_dot = Vec3::Zero();
  double psi_dot = 0.0;
};
ReferenceRates sample_rates(const TrajectoryKind& kind, double t);

/// Natural run length of a scenario: 10 s for the landing window, 20 s
/// otherwise.
double default_duration(const TrajectoryKind& kind);

}  // namespace funnelquad

#endif  // FUNNELQUAD_TRAJECTORIES_HPP
