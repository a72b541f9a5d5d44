// Batch front-end: load a scenario file, run the closed loop, write
// telemetry next to it. Exit codes: 0 clean run, 1 config problem,
// 2 funnel violation (initial or in-flight), 3 other runtime failure.

#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "funnelquad/scenario_config.hpp"
#include "funnelquad/telemetry.hpp"

namespace fs = std::filesystem;
using namespace funnelquad;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitViolation = 2;
constexpr int kExitRuntime = 3;

std::optional<DisturbanceKind> disturbance_from_name(const std::string& s) {
  if (s == "none") return DisturbanceKind::none;
  if (s == "constant") return DisturbanceKind::constant;
  if (s == "sinusoid") return DisturbanceKind::sinusoid;
  if (s == "linear_drag") return DisturbanceKind::linear_drag;
  return std::nullopt;
}

fs::path resolve_out_dir(const std::string& flag_value,
                         const OutputSpec& outputs) {
  if (!flag_value.empty()) return flag_value;
  if (!outputs.out_dir.empty()) return outputs.out_dir;
  if (const char* env = std::getenv("FUNNELQUAD_OUT")) {
    if (*env) return env;
  }
  return "out";
}

int run_scenario(const std::string& config_path, const std::string& out_flag,
                 double duration_override, double dt_override,
                 const std::string& disturbance_override, bool plots) {
  Scenario scenario;
  try {
    scenario = load_config(config_path);
    if (duration_override > 0.0) scenario.config.duration = duration_override;
    if (dt_override != 0.0) scenario.config.dt = dt_override;
    if (!disturbance_override.empty()) {
      const auto kind = disturbance_from_name(disturbance_override);
      if (!kind) {
        throw ConfigError("--disturbance",
                          "unknown kind '" + disturbance_override + "'");
      }
      scenario.config.disturbance.kind = *kind;
    }
    scenario.config.validate();
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  const fs::path out_dir = resolve_out_dir(out_flag, scenario.outputs);

  RunReport report;
  try {
    report = run(scenario.config);
  } catch (const InitialComplianceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitViolation;
  } catch (const FunnelViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }

  try {
    write_csv(report, out_dir / "telemetry.csv");
    write_metrics_json(report, out_dir / "metrics.json");
    if (plots) {
      for (const auto& name : kChannelNames) {
        write_funnel_svg(report, std::string(name),
                         out_dir / ("funnel_" + std::string(name) + ".svg"));
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }

  std::cout << "steps:      " << report.records.size() << "\n"
            << "violations: " << report.violations.size() << "\n"
            << "outputs:    " << (out_dir / "telemetry.csv").string() << ", "
            << (out_dir / "metrics.json").string()
            << (plots ? ", funnel_<channel>.svg" : "") << "\n";
  if (!report.early_stop.empty()) {
    std::cerr << "warning: run stopped early: " << report.early_stop << "\n";
  }
  if (!report.assumption1_ok) {
    std::cerr << "warning: tilt bound |phi|,|theta| <= pi_bar was exceeded\n";
  }
  return report.violations.empty() ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Funnel-constrained quadrotor trajectory-tracking simulator"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "Run a scenario file");
  std::string config_path;
  std::string out_dir;
  std::string disturbance_kind;
  double duration = 0.0;
  double dt = 0.0;
  bool plots = false;
  run_cmd->add_option("--config", config_path, "Scenario JSON file")
      ->required();
  run_cmd->add_option("--out-dir", out_dir,
                      "Output directory (default: config outputs.out_dir, "
                      "then $FUNNELQUAD_OUT, then ./out)");
  run_cmd->add_option("--duration", duration, "Override run length [s]");
  run_cmd->add_option("--dt", dt, "Override integration step [s]");
  run_cmd->add_option("--disturbance", disturbance_kind,
                      "Override disturbance kind "
                      "(none|constant|sinusoid|linear_drag)");
  run_cmd->add_flag("--plots", plots, "Emit funnel_<channel>.svg plots");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  return run_scenario(config_path, out_dir, duration, dt, disturbance_kind,
                      plots);
}
