#ifndef FUNNELQUAD_TESTS_SUPPORT_HPP
#define FUNNELQUAD_TESTS_SUPPORT_HPP

#include "funnelquad/sim.hpp"

namespace funnelquad::testing {

// The funnel/gain configuration the bundled scenarios use.
inline FunnelSet reference_funnels() {
  FunnelSet f;
  f.pos = {PerformanceFunction{12.0, 0.2, 0.4},
           PerformanceFunction{12.0, 0.2, 0.4},
           PerformanceFunction{12.0, 0.2, 0.4}};
  f.vel = {PerformanceFunction{3.0, 0.5, 0.5},
           PerformanceFunction{3.0, 0.5, 0.5},
           PerformanceFunction{5.0, 0.2, 1.5}};
  f.tilt = {PerformanceFunction{0.5, 0.25, 0.5},
            PerformanceFunction{0.5, 0.25, 0.5}};
  f.yaw = PerformanceFunction{0.4, 0.05, 0.1};
  f.rate = {PerformanceFunction{0.3, 0.1, 0.5},
            PerformanceFunction{0.3, 0.1, 0.5},
            PerformanceFunction{0.3, 0.1, 0.5}};
  return f;
}

inline GainSet reference_gains() { return GainSet{}; }

inline SimConfig ascent_config() {
  SimConfig cfg;
  cfg.dt = 2e-4;
  cfg.duration = 20.0;
  cfg.scenario = LemniscateAscent{};
  cfg.funnels = reference_funnels();
  return cfg;
}

inline SimConfig hover_config(const Vec3& p = Vec3(0, 0, 1)) {
  SimConfig cfg;
  cfg.dt = 1e-3;
  cfg.duration = 1.0;
  cfg.scenario = Hover{p, 0.0};
  cfg.initial_state.p = p;
  cfg.funnels = reference_funnels();
  return cfg;
}

}  // namespace funnelquad::testing

#endif  // FUNNELQUAD_TESTS_SUPPORT_HPP
