#include "funnelquad/trajectories.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace funnelquad {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBoatEnd = 10.0;
// Slack for t values produced by step-count arithmetic (i * dt can land a
// few ulps past the nominal end).
constexpr double kBoatTimeTol = 1e-9;

struct BoatSegment {
  double t_start;
  double u;
};

// Turn-rate schedule: -1, +1, -1, 0 switching at 3pi/4, 9pi/4, 11pi/4.
constexpr std::array<BoatSegment, 4> kBoatSegments = {{
    {0.0, -1.0},
    {3.0 * kPi / 4.0, 1.0},
    {9.0 * kPi / 4.0, -1.0},
    {11.0 * kPi / 4.0, 0.0},
}};

// Advance the unicycle from (state at t0, heading rate u) to time t1.
// Heading is linear in time; position integrates to sinusoids (or a ray
// when u = 0).
BoatState advance_segment(const BoatState& s0, double u, double t0,
                          double t1) {
  BoatState s;
  const double dt = t1 - t0;
  s.alpha = s0.alpha + u * dt;
  if (u == 0.0) {
    s.p_b = s0.p_b + dt * Vec2(std::cos(s0.alpha), std::sin(s0.alpha));
  } else {
    s.p_b.x() = s0.p_b.x() + (std::sin(s.alpha) - std::sin(s0.alpha)) / u;
    s.p_b.y() = s0.p_b.y() - (std::cos(s.alpha) - std::cos(s0.alpha)) / u;
  }
  return s;
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

BoatState boat_path(double t) {
  if (t < -kBoatTimeTol || t > kBoatEnd + kBoatTimeTol) {
    throw std::out_of_range("boat path defined on [0, 10]; got t = " +
                            std::to_string(t));
  }
  t = std::clamp(t, 0.0, kBoatEnd);

  BoatState s{};  // alpha(0) = 0, p_b(0) = (0, 0)
  for (std::size_t i = 0; i < kBoatSegments.size(); ++i) {
    const double seg_start = kBoatSegments[i].t_start;
    const double seg_end =
        (i + 1 < kBoatSegments.size()) ? kBoatSegments[i + 1].t_start
                                       : kBoatEnd;
    if (t <= seg_end) {
      return advance_segment(s, kBoatSegments[i].u, seg_start, t);
    }
    s = advance_segment(s, kBoatSegments[i].u, seg_start, seg_end);
  }
  return s;
}

ReferenceSample lemniscate_ascent(double t) {
  const double st = std::sin(t), ct = std::cos(t);
  const double den = 1.0 + st * st;
  return {{ct / den, st * ct / den, 1.0 + t / 5.0}, 0.0};
}

ReferenceSample landing_reference(double t, double z_d, double t_d) {
  const BoatState b = boat_path(t);
  const double z = z_d * (1.0 - sigmoid(t - t_d));
  return {{b.p_b.x(), b.p_b.y(), z}, 0.0};
}

ReferenceSample hover_reference(const Hover& h) { return {h.p, h.psi}; }

ReferenceSample sample(const TrajectoryKind& kind, double t) {
  return std::visit(
      [t](const auto& k) -> ReferenceSample {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, LemniscateAscent>) {
          return lemniscate_ascent(t);
        } else if constexpr (std::is_same_v<T, Landing>) {
          return landing_reference(t, k.z_d, k.t_d);
        } else {
          return hover_reference(k);
        }
      },
      kind);
}

ReferenceRates sample_rates(const TrajectoryKind& kind, double t) {
  return std::visit(
      [t](const auto& k) -> ReferenceRates {
        using T = std::decay_t<decltype(k)>;
        ReferenceRates r;
        if constexpr (std::is_same_v<T, LemniscateAscent>) {
          // Quotient rule against den = 1 + sin^2 t, den' = 2 sin t cos t.
          const double st = std::sin(t), ct = std::cos(t);
          const double den = 1.0 + st * st;
          const double dden = 2.0 * st * ct;
          r.p_dot.x() = (-st * den - ct * dden) / (den * den);
          r.p_dot.y() =
              ((ct * ct - st * st) * den - st * ct * dden) / (den * den);
          r.p_dot.z() = 0.2;
        } else if constexpr (std::is_same_v<T, Landing>) {
          const BoatState b = boat_path(t);
          const double s = sigmoid(t - k.t_d);
          r.p_dot = {std::cos(b.alpha), std::sin(b.alpha),
                     -k.z_d * s * (1.0 - s)};
        }
        return r;  // hover: all zero
      },
      kind);
}

double default_duration(const TrajectoryKind& kind) {
  return std::holds_alternative<Landing>(kind) ? 10.0 : 20.0;
}

}  // namespace funnelquad
