#ifndef FUNNELQUAD_SCENARIO_CONFIG_HPP
#define FUNNELQUAD_SCENARIO_CONFIG_HPP

#include <filesystem>
#include <string>

#include "funnelquad/sim.hpp"

namespace funnelquad {

/// Optional output preferences carried by a scenario file.
struct OutputSpec {
  std::string out_dir;  // empty: caller decides
};

struct Scenario {
  SimConfig config;
  OutputSpec outputs;
};

/// Parse and validate a JSON scenario file. Unknown keys anywhere in the
/// document are rejected; all twelve funnel channels must be present.
/// Throws ConfigError with the offending field/key in the message.
Scenario load_config(const std::filesystem::path& path);

/// Parse from an in-memory JSON string (same validation as load_config).
Scenario parse_config(const std::string& text,
                      const std::string& origin = "<string>");

/// Serialize a scenario back to JSON; load_config(save) round-trips to an
/// equivalent configuration.
std::string dump_config(const Scenario& scenario);
void save_config(const Scenario& scenario,
                 const std::filesystem::path& path);

}  // namespace funnelquad

#endif  // FUNNELQUAD_SCENARIO_CONFIG_HPP
