#include "funnelquad/sim.hpp"

#include <cmath>
#include <stdexcept>

namespace funnelquad {

void SimConfig::validate() const {
  if (!(dt > 0.0)) throw ConfigError("dt", "must be > 0");
  if (dt > 0.01) {
    throw ConfigError("dt", "must be <= 0.01 (controller stiffness guard)");
  }
  if (!(duration > 0.0)) throw ConfigError("duration", "must be > 0");
  if (dt > duration) throw ConfigError("dt", "must be <= duration");
  params.validate();
  funnels.validate();
  gains.validate();
  conditions.validate();
  validate_state(initial_state);
}

long step_count(double duration, double dt) {
  return static_cast<long>(std::floor(duration / dt + 1e-9));
}

std::vector<ChannelViolation> validate_initial(const SimConfig& cfg) {
  const ReferenceSample ref = sample(cfg.scenario, 0.0);
  const ControlResult res =
      compute_control(0.0, cfg.initial_state, ref, cfg.funnels, cfg.gains,
                      cfg.conditions, XiPolicy::clamp);
  std::vector<ChannelViolation> out;
  for (std::size_t i = 0; i < kChannelCount; ++i) {
    const double xi = res.diagnostics.xi_all[i];
    if (!(std::fabs(xi) < 1.0)) {
      out.push_back({0.0, static_cast<Channel>(i), xi});
    }
  }
  return out;
}

namespace {

bool within_assumption(const VehicleState& s, double pi_bar) {
  return std::fabs(s.eta.phi) <= pi_bar && std::fabs(s.eta.theta) <= pi_bar;
}

}  // namespace

RunReport run(const SimConfig& cfg) {
  cfg.validate();

  if (auto bad = validate_initial(cfg); !bad.empty()) {
    std::vector<InitialComplianceError::Entry> entries;
    entries.reserve(bad.size());
    for (const auto& v : bad) entries.emplace_back(v.channel, v.xi);
    throw InitialComplianceError(std::move(entries));
  }

  const XiPolicy policy = cfg.violation_mode == ViolationMode::halt
                              ? XiPolicy::strict
                              : XiPolicy::clamp;
  const long n_steps = step_count(cfg.duration, cfg.dt);

  RunReport report;
  report.records.reserve(static_cast<std::size_t>(n_steps) + 1);

  // The closed loop integrated as one smooth ODE: the control law is
  // re-evaluated at every RK4 stage. A zero-order hold at the step rate
  // would cap the integrator at first-order accuracy in the control
  // coupling.
  auto rhs = [&](const StateVec& x, double tt) -> StateVec {
    const VehicleState s = unpack_state(x);
    const ControlResult rc = compute_control(
        tt, s, sample(cfg.scenario, tt), cfg.funnels, cfg.gains,
        cfg.conditions, policy);
    return dynamics_rhs(s, rc.command, cfg.disturbance, cfg.params, tt);
  };

  VehicleState state = cfg.initial_state;
  for (long i = 0; i <= n_steps; ++i) {
    const double t = static_cast<double>(i) * cfg.dt;
    try {
      const ReferenceSample ref = sample(cfg.scenario, t);
      const ControlResult rc = compute_control(
          t, state, ref, cfg.funnels, cfg.gains, cfg.conditions, policy);

      report.records.push_back({t, state, ref, rc.command, rc.diagnostics});
      for (std::size_t c = 0; c < kChannelCount; ++c) {
        const double xi = rc.diagnostics.xi_all[c];
        if (!(std::fabs(xi) < 1.0)) {
          report.violations.push_back({t, static_cast<Channel>(c), xi});
        }
      }
      if (!within_assumption(state, cfg.conditions.pi_bar)) {
        report.assumption1_ok = false;
      }

      if (i == n_steps) break;

      StateVec x = rk4_step(rhs, pack_state(state), t, cfg.dt);
      if (!x.allFinite()) {
        throw NumericError("integration diverged at t = " +
                           std::to_string(t + cfg.dt));
      }
      x(8) = wrap_angle(x(8));
      state = unpack_state(x);
    } catch (const NumericError& e) {
      if (policy == XiPolicy::strict) throw;
      report.early_stop = e.what();
      break;
    } catch (const SingularityError& e) {
      if (policy == XiPolicy::strict) throw;
      report.early_stop = e.what();
      break;
    }
  }

  report.metrics = metrics(report);
  return report;
}

Metrics metrics(const RunReport& report) {
  if (report.records.empty()) {
    throw std::invalid_argument("metrics: empty report");
  }
  Metrics m;
  const std::size_t n = report.records.size();
  const std::size_t steady_begin = n - n / 4;  // final quarter of the run
  for (std::size_t i = 0; i < n; ++i) {
    const auto& d = report.records[i].diagnostics;
    for (std::size_t c = 0; c < kChannelCount; ++c) {
      m.max_abs_xi[c] = std::max(m.max_abs_xi[c], std::fabs(d.xi_all[c]));
      m.max_abs_e[c] = std::max(m.max_abs_e[c], std::fabs(d.e_all[c]));
      if (i >= steady_begin) {
        m.steady_abs_e[c] =
            std::max(m.steady_abs_e[c], std::fabs(d.e_all[c]));
      }
    }
    for (std::size_t f = 0; f < 3; ++f) {
      if (!d.condition_flags[f]) ++m.condition_false_counts[f];
    }
  }
  return m;
}

}  // namespace funnelquad
