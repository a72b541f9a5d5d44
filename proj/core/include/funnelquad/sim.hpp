#ifndef FUNNELQUAD_SIM_HPP
#define FUNNELQUAD_SIM_HPP

#include <string>
#include <vector>

#include "funnelquad/controller.hpp"
#include "funnelquad/integrator.hpp"
#include "funnelquad/plant.hpp"
#include "funnelquad/trajectories.hpp"

namespace funnelquad {

/// What to do when a normalized error reaches its funnel boundary:
/// halt aborts with full context; clamp_and_continue soft-clamps the
/// transform input just inside the boundary and keeps logging, for
/// post-mortem plots.
enum class ViolationMode { halt, clamp_and_continue };

struct SimConfig {
  double dt = 1e-3;       // s
  double duration = 20.0; // s
  TrajectoryKind scenario = LemniscateAscent{};
  VehicleState initial_state;
  QuadParams params;
  DisturbanceSpec disturbance;
  FunnelSet funnels;
  GainSet gains;
  TheoremConditions conditions;
  ViolationMode violation_mode = ViolationMode::halt;

  /// Enforces dt in (0, 0.01], dt <= duration, and the per-section
  /// constraints of the owned types.
  void validate() const;
};

/// One logged step of the closed loop.
struct SimRecord {
  double t = 0.0;
  VehicleState state;
  ReferenceSample reference;
  ControlCommand command;
  ControlDiagnostics diagnostics;
};

struct ChannelViolation {
  double t;
  Channel channel;
  double xi;
};

struct Metrics {
  std::array<double, kChannelCount> max_abs_xi{};
  std::array<double, kChannelCount> max_abs_e{};
  // max |e| over the final quarter of the run, per channel
  std::array<double, kChannelCount> steady_abs_e{};
  std::array<long, 3> condition_false_counts{};
};

struct RunReport {
  std::vector<SimRecord> records;
  std::vector<ChannelViolation> violations;
  bool assumption1_ok = true;   // |phi|, |theta| <= pi_bar throughout
  std::string early_stop;       // empty when the run reached its duration
  Metrics metrics;
};

/// Number of logged samples for a run: floor(duration/dt) + 1, with a
/// tolerance on the division so exact multiples are not lost to rounding.
long step_count(double duration, double dt);

/// Evaluate the full cascade once at t = 0 and report every channel that
/// starts at or outside its funnel boundary. Empty result means compliant.
std::vector<ChannelViolation> validate_initial(const SimConfig& cfg);

/// Integrate the closed loop over [0, duration] with RK4, logging one
/// record per step boundary. The control law is part of the integrated
/// right-hand side (evaluated at every RK4 stage); the recorded command is
/// the step-start evaluation. Throws InitialComplianceError if any channel
/// starts outside its funnel, FunnelViolation at the first in-flight
/// violation in halt mode, and NumericError/SingularityError on blow-up.
RunReport run(const SimConfig& cfg);

/// Per-channel maxima and steady-state window maxima over a finished run.
Metrics metrics(const RunReport& report);

}  // namespace funnelquad

#endif  // FUNNELQUAD_SIM_HPP
