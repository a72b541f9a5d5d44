#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "funnelquad/sim.hpp"
#include "support.hpp"

using namespace funnelquad;
using funnelquad::testing::ascent_config;
using funnelquad::testing::hover_config;
using funnelquad::testing::reference_funnels;

TEST_CASE("rk4 single step on exponential growth") {
  auto rhs = [](double x, double) { return x; };
  const double x1 = rk4_step(rhs, 1.0, 0.0, 0.1);
  // one classical step carries the series through the h^4 term
  CHECK(x1 == doctest::Approx(1.10517083333333).epsilon(1e-12));
  CHECK(std::fabs(x1 - std::exp(0.1)) < 1e-7);

  auto frozen = [](double, double) { return 0.0; };
  CHECK(rk4_step(frozen, 3.5, 0.0, 0.1) == 3.5);
}

TEST_CASE("rk4 local error drops fifth order") {
  auto rhs = [](double x, double) { return x; };
  const double h = 0.1;
  const double e_full = std::fabs(rk4_step(rhs, 1.0, 0.0, h) - std::exp(h));
  const double e_half =
      std::fabs(rk4_step(rhs, 1.0, 0.0, h / 2) - std::exp(h / 2));
  const double ratio = e_full / e_half;
  CHECK(ratio > 28.0);
  CHECK(ratio < 36.0);
}

TEST_CASE("step count tolerates representation error") {
  CHECK(step_count(20.0, 1e-3) == 20000);
  CHECK(step_count(10.0, 1e-3) == 10000);
  CHECK(step_count(20.0, 2e-4) == 100000);
  CHECK(step_count(1.0, 3e-4) == 3333);
  CHECK(step_count(0.0105, 1e-3) == 10);
}

TEST_CASE("config validation") {
  SimConfig cfg = hover_config();
  CHECK_NOTHROW(cfg.validate());

  SUBCASE("dt bounds") {
    cfg.dt = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.dt = 0.02;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.dt = 2.0;  // > duration
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }

  SUBCASE("owned sections validate too") {
    cfg.funnels.yaw.rho0 = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }
}

TEST_CASE("initial compliance") {
  SUBCASE("ascent start is compliant") {
    CHECK(validate_initial(ascent_config()).empty());
  }

  SUBCASE("a shrunk z funnel is caught with its xi") {
    SimConfig cfg = ascent_config();
    cfg.funnels.pos[2].rho0 = 0.5;
    cfg.funnels.pos[2].rho_inf = 0.2;
    const auto bad = validate_initial(cfg);
    REQUIRE(bad.size() == 1);
    CHECK(bad[0].channel == Channel::p_z);
    CHECK(bad[0].xi == doctest::Approx(-2.0).epsilon(1e-12));

    try {
      run(cfg);
      FAIL("expected InitialComplianceError");
    } catch (const InitialComplianceError& e) {
      REQUIRE(e.entries().size() == 1);
      CHECK(e.entries()[0].first == Channel::p_z);
      CHECK(std::string(e.what()).find("p_z") != std::string::npos);
    }
  }

  SUBCASE("hover exactly on the reference is compliant") {
    const SimConfig cfg = hover_config();
    CHECK(validate_initial(cfg).empty());
    const ControlResult rc =
        compute_control(0.0, cfg.initial_state, sample(cfg.scenario, 0.0),
                        cfg.funnels, cfg.gains, cfg.conditions);
    CHECK(rc.diagnostics.condition_flags[0] == false);  // zero thrust
  }
}

TEST_CASE("hover run from equilibrium reference") {
  SimConfig cfg = hover_config();
  const RunReport r = run(cfg);

  CHECK(r.records.size() ==
        static_cast<std::size_t>(step_count(cfg.duration, cfg.dt)) + 1);
  CHECK(r.violations.empty());
  CHECK(r.assumption1_ok);
  CHECK(r.early_stop.empty());
  for (const auto& rec : r.records) {
    CHECK(std::fabs(rec.command.f_z) < 20.0);
    CHECK(rec.command.tau.cwiseAbs().maxCoeff() < 50.0);
  }
  // the funnels pull the free-falling vehicle back to the hover point
  CHECK(r.metrics.max_abs_xi[channel_index(Channel::p_z)] < 1.0);
}

TEST_CASE("records are spaced dt apart with step-start commands") {
  SimConfig cfg = hover_config();
  cfg.duration = 0.25;
  const RunReport r = run(cfg);
  for (std::size_t i = 0; i < r.records.size(); ++i) {
    CHECK(r.records[i].t == static_cast<double>(i) * cfg.dt);
  }
  // the logged command equals a fresh evaluation at the logged state
  const auto& rec = r.records[137];
  const ControlResult again =
      compute_control(rec.t, rec.state, rec.reference, cfg.funnels,
                      cfg.gains, cfg.conditions);
  CHECK(again.command.f_z == rec.command.f_z);
  CHECK(again.command.tau == rec.command.tau);
}

TEST_CASE("identical configs reproduce bit-identical runs") {
  SimConfig cfg = ascent_config();
  cfg.duration = 0.5;
  const RunReport a = run(cfg);
  const RunReport b = run(cfg);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(pack_state(a.records[i].state) == pack_state(b.records[i].state));
    CHECK(a.records[i].command.f_z == b.records[i].command.f_z);
    CHECK(a.records[i].command.tau == b.records[i].command.tau);
    CHECK(std::memcmp(a.records[i].diagnostics.xi_all.data(),
                      b.records[i].diagnostics.xi_all.data(),
                      sizeof(double) * kChannelCount) == 0);
  }
}

TEST_CASE("violation monitoring in both modes") {
  // A hover configuration hit by a constant roll torque the rate funnel
  // cannot absorb; the breach lands within a tenth of a second.
  SimConfig cfg = hover_config();
  cfg.duration = 2.0;
  cfg.disturbance.kind = DisturbanceKind::constant;
  cfg.disturbance.torque_params = Vec3(5.0, 0.0, 0.0);

  SUBCASE("halt mode throws a tagged violation") {
    cfg.violation_mode = ViolationMode::halt;
    try {
      run(cfg);
      FAIL("expected FunnelViolation");
    } catch (const FunnelViolation& e) {
      CHECK(e.channel().has_value());
      CHECK(std::fabs(e.xi()) >= 1.0);
    }
  }

  SUBCASE("clamp mode records the first breach at the first bad step") {
    cfg.violation_mode = ViolationMode::clamp_and_continue;
    const RunReport r = run(cfg);
    REQUIRE_FALSE(r.violations.empty());

    const double t_first = r.violations.front().t;
    // all records strictly before the breach are inside their funnels
    for (const auto& rec : r.records) {
      if (rec.t >= t_first) break;
      for (double xi : rec.diagnostics.xi_all) {
        CHECK(std::fabs(xi) < 1.0);
      }
    }
    // and the breach step matches the recorded violation
    bool matched = false;
    for (const auto& rec : r.records) {
      if (rec.t == t_first) {
        const double xi =
            rec.diagnostics.xi_all[channel_index(r.violations.front().channel)];
        CHECK(std::fabs(xi) >= 1.0);
        matched = true;
      }
    }
    CHECK(matched);
  }
}

TEST_CASE("violation list is empty iff all logged xi stay inside") {
  SimConfig cfg = hover_config();
  cfg.duration = 1.0;
  cfg.violation_mode = ViolationMode::clamp_and_continue;
  const RunReport clean = run(cfg);
  CHECK(clean.violations.empty());
  double worst = 0.0;
  for (const auto& rec : clean.records) {
    for (double xi : rec.diagnostics.xi_all) {
      worst = std::max(worst, std::fabs(xi));
    }
  }
  CHECK(worst < 1.0);
}

TEST_CASE("metrics summarize a run") {
  SUBCASE("all-zero hover metrics") {
    SimConfig cfg = hover_config();
    cfg.duration = 0.5;
    // start exactly on the reference: every error is identically zero
    const RunReport r = run(cfg);
    bool any_nonzero = false;
    for (std::size_t c = 0; c < kChannelCount; ++c) {
      if (r.metrics.max_abs_xi[c] != 0.0 || r.metrics.max_abs_e[c] != 0.0) {
        any_nonzero = true;
      }
    }
    CHECK_FALSE(any_nonzero);
    // zero thrust keeps flag (a) false at every one of the logged steps
    CHECK(r.metrics.condition_false_counts[0] ==
          static_cast<long>(r.records.size()));
  }

  SUBCASE("empty report is rejected") {
    CHECK_THROWS_AS(metrics(RunReport{}), std::invalid_argument);
  }
}

TEST_CASE("assumption monitor flags large tilt without stopping") {
  SimConfig cfg = hover_config();
  cfg.duration = 0.02;
  cfg.conditions.pi_bar = 0.01;  // artificially tight
  cfg.initial_state.eta.phi = 0.02;
  cfg.initial_state.p = Vec3(0, 0, 1);
  const RunReport r = run(cfg);
  CHECK_FALSE(r.assumption1_ok);
  CHECK(r.records.size() == 21);
}
