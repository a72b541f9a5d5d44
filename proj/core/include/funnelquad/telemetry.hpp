#ifndef FUNNELQUAD_TELEMETRY_HPP
#define FUNNELQUAD_TELEMETRY_HPP

#include <filesystem>
#include <string>

#include "funnelquad/sim.hpp"

namespace funnelquad {

/// The fixed telemetry schema, one comma-separated name per column.
std::string csv_header();

/// Write one row per logged step in the csv_header() column order, values
/// in decimal notation with 9 significant digits. Deterministic: the same
/// report produces a byte-identical file.
void write_csv(const RunReport& report, const std::filesystem::path& path);

/// Self-contained SVG plot of one channel: the error trace e(t) between the
/// funnel boundaries +rho(t) and -rho(t), with axis labels and a title.
/// Throws std::invalid_argument for an unknown channel name or empty report.
void write_funnel_svg(const RunReport& report, const std::string& channel,
                      const std::filesystem::path& path);

/// Summary of a run (metrics, violations, monitor counters) as JSON.
std::string metrics_json(const RunReport& report);
void write_metrics_json(const RunReport& report,
                        const std::filesystem::path& path);

}  // namespace funnelquad

#endif  // FUNNELQUAD_TELEMETRY_HPP
