#include "funnelquad/telemetry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

namespace funnelquad {

namespace {

const char* const kStateColumns =
    "t,p_x,p_y,p_z,v_x,v_y,v_z,phi,theta,psi,"
    "omega_phi,omega_theta,omega_psi,"
    "pr_x,pr_y,pr_z,psi_r,vr_x,vr_y,vr_z,"
    "omegar_phi,omegar_theta,omegar_psi,phi_r,theta_r,"
    "F_z,tau_phi,tau_theta,tau_psi";

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void append_field(std::string& row, double v) {
  row += ',';
  row += fmt(v);
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() +
                             " for writing");
  }
  return out;
}

}  // namespace

std::string csv_header() {
  std::string h = kStateColumns;
  for (const char* prefix : {"e_", "rho_", "xi_"}) {
    for (const auto& name : kChannelNames) {
      h += ',';
      h += prefix;
      h += name;
    }
  }
  h += ",cond_a,cond_b,cond_c";
  return h;
}

void write_csv(const RunReport& report, const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << csv_header() << '\n';

  for (const auto& rec : report.records) {
    std::string row = fmt(rec.t);
    for (int i = 0; i < 3; ++i) append_field(row, rec.state.p(i));
    for (int i = 0; i < 3; ++i) append_field(row, rec.state.v(i));
    append_field(row, rec.state.eta.phi);
    append_field(row, rec.state.eta.theta);
    append_field(row, rec.state.eta.psi);
    for (int i = 0; i < 3; ++i) append_field(row, rec.state.omega(i));
    for (int i = 0; i < 3; ++i) append_field(row, rec.reference.p_r(i));
    append_field(row, rec.reference.psi_r);
    for (int i = 0; i < 3; ++i) append_field(row, rec.diagnostics.v_r(i));
    for (int i = 0; i < 3; ++i) append_field(row, rec.diagnostics.omega_r(i));

    // Reference angles recovered from the tilt reference; NaN when the
    // tilt left the invertible box (possible in clamp-mode blow-ups).
    double phi_r = std::numeric_limits<double>::quiet_NaN();
    double theta_r = phi_r;
    try {
      const TiltAngles a = tilt_to_angles(rec.diagnostics.tilt_r);
      phi_r = a.phi;
      theta_r = a.theta;
    } catch (const InversionError&) {
    }
    append_field(row, phi_r);
    append_field(row, theta_r);

    append_field(row, rec.command.f_z);
    for (int i = 0; i < 3; ++i) append_field(row, rec.command.tau(i));
    for (double v : rec.diagnostics.e_all) append_field(row, v);
    for (double v : rec.diagnostics.rho_all) append_field(row, v);
    for (double v : rec.diagnostics.xi_all) append_field(row, v);
    for (bool f : rec.diagnostics.condition_flags) {
      row += f ? ",1" : ",0";
    }
    out << row << '\n';
  }
}

namespace {

struct PlotSeries {
  std::vector<double> t, e, rho;
};

std::string polyline(const std::vector<double>& ts,
                     const std::vector<double>& ys, double t0, double t1,
                     double y0, double y1, double w, double h, double mx,
                     double my, const char* color) {
  std::ostringstream os;
  os << "  <polyline fill=\"none\" stroke=\"" << color
     << "\" stroke-width=\"1\" points=\"";
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double x = mx + (ts[i] - t0) / (t1 - t0) * w;
    const double y = my + h - (ys[i] - y0) / (y1 - y0) * h;
    os << fmt(x) << ',' << fmt(y) << ' ';
  }
  os << "\"/>\n";
  return os.str();
}

}  // namespace

void write_funnel_svg(const RunReport& report, const std::string& channel,
                      const std::filesystem::path& path) {
  const auto ch = channel_from_name(channel);
  if (!ch) {
    throw std::invalid_argument("unknown channel '" + channel + "'");
  }
  if (report.records.empty()) {
    throw std::invalid_argument("empty report");
  }
  const std::size_t idx = channel_index(*ch);

  // Stride the samples down to a plottable count, always keeping the last.
  const std::size_t n = report.records.size();
  const std::size_t stride = std::max<std::size_t>(1, n / 2000);
  PlotSeries s;
  for (std::size_t i = 0; i < n; i += stride) {
    const auto& rec = report.records[i];
    s.t.push_back(rec.t);
    s.e.push_back(rec.diagnostics.e_all[idx]);
    s.rho.push_back(rec.diagnostics.rho_all[idx]);
  }
  if ((n - 1) % stride != 0) {
    const auto& rec = report.records.back();
    s.t.push_back(rec.t);
    s.e.push_back(rec.diagnostics.e_all[idx]);
    s.rho.push_back(rec.diagnostics.rho_all[idx]);
  }

  const double t0 = s.t.front(), t1 = s.t.back();
  double y_max = 0.0;
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    y_max = std::max({y_max, std::fabs(s.e[i]), s.rho[i]});
  }
  y_max *= 1.05;
  const double y0 = -y_max, y1 = y_max;

  const double w = 640, h = 360, mx = 60, my = 30;
  std::vector<double> neg_rho(s.rho.size());
  std::transform(s.rho.begin(), s.rho.end(), neg_rho.begin(),
                 [](double r) { return -r; });

  std::ofstream out = open_out(path);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w + 2 * mx
      << "\" height=\"" << h + 2 * my + 30 << "\" viewBox=\"0 0 "
      << w + 2 * mx << ' ' << h + 2 * my + 30 << "\">\n"
      << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "  <text x=\"" << mx + w / 2 << "\" y=\"" << my - 10
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">channel "
      << channel << "</text>\n";

  // axes
  const double y_axis = my + h / 2.0;  // y = 0 line
  out << "  <line x1=\"" << mx << "\" y1=\"" << my + h << "\" x2=\""
      << mx + w << "\" y2=\"" << my + h << "\" stroke=\"black\"/>\n"
      << "  <line x1=\"" << mx << "\" y1=\"" << my << "\" x2=\"" << mx
      << "\" y2=\"" << my + h << "\" stroke=\"black\"/>\n"
      << "  <line x1=\"" << mx << "\" y1=\"" << y_axis << "\" x2=\""
      << mx + w << "\" y2=\"" << y_axis
      << "\" stroke=\"#cccccc\" stroke-dasharray=\"4 4\"/>\n"
      << "  <text x=\"" << mx + w / 2 << "\" y=\"" << my + h + 35
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">t [s]</text>\n"
      << "  <text x=\"15\" y=\"" << my + h / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\" transform=\"rotate(-90 15 "
      << my + h / 2 << ")\">" << channel << " error</text>\n"
      << "  <text x=\"" << mx << "\" y=\"" << my + h + 15
      << "\" font-family=\"sans-serif\" font-size=\"10\">" << fmt(t0)
      << "</text>\n"
      << "  <text x=\"" << mx + w << "\" y=\"" << my + h + 15
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
         "font-size=\"10\">"
      << fmt(t1) << "</text>\n"
      << "  <text x=\"" << mx - 5 << "\" y=\"" << my + 5
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
         "font-size=\"10\">"
      << fmt(y1) << "</text>\n"
      << "  <text x=\"" << mx - 5 << "\" y=\"" << my + h
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
         "font-size=\"10\">"
      << fmt(y0) << "</text>\n";

  out << polyline(s.t, s.rho, t0, t1, y0, y1, w, h, mx, my, "#d62728");
  out << polyline(s.t, neg_rho, t0, t1, y0, y1, w, h, mx, my, "#d62728");
  out << polyline(s.t, s.e, t0, t1, y0, y1, w, h, mx, my, "#1f77b4");
  out << "</svg>\n";
}

std::string metrics_json(const RunReport& report) {
  nlohmann::ordered_json j;
  j["steps"] = report.records.size();
  j["duration"] = report.records.empty() ? 0.0 : report.records.back().t;
  j["assumption1_ok"] = report.assumption1_ok;
  j["early_stop"] = report.early_stop;
  j["violation_count"] = report.violations.size();

  nlohmann::ordered_json viols = nlohmann::ordered_json::array();
  for (const auto& v : report.violations) {
    viols.push_back({{"t", v.t},
                     {"channel", std::string(channel_name(v.channel))},
                     {"xi", v.xi}});
  }
  j["violations"] = viols;

  nlohmann::ordered_json chans;
  for (std::size_t i = 0; i < kChannelCount; ++i) {
    const auto name = std::string(kChannelNames[i]);
    chans[name] = {{"max_abs_xi", report.metrics.max_abs_xi[i]},
                   {"max_abs_e", report.metrics.max_abs_e[i]},
                   {"steady_abs_e", report.metrics.steady_abs_e[i]}};
  }
  j["channels"] = chans;
  j["condition_false_counts"] = {
      {"a", report.metrics.condition_false_counts[0]},
      {"b", report.metrics.condition_false_counts[1]},
      {"c", report.metrics.condition_false_counts[2]}};
  return j.dump(2) + "\n";
}

void write_metrics_json(const RunReport& report,
                        const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << metrics_json(report);
}

}  // namespace funnelquad
