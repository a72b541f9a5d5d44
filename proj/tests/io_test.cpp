#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "funnelquad/scenario_config.hpp"
#include "funnelquad/telemetry.hpp"
#include "support.hpp"

using namespace funnelquad;
namespace fs = std::filesystem;

namespace {

fs::path preset(const char* name) {
  return fs::path(FUNNELQUAD_PRESET_DIR) / name;
}

fs::path temp_file(const char* name) {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "funnelquad_io_test";
    fs::create_directories(d);
    return d;
  }();
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

TEST_CASE("bundled presets load with the published values") {
  const Scenario a = load_config(preset("ascent.json"));
  CHECK(std::holds_alternative<LemniscateAscent>(a.config.scenario));
  CHECK(a.config.duration == 20.0);
  CHECK(a.config.gains.k_p.isApprox(Vec3(1.25, 1.25, 12.5)));
  CHECK(a.config.gains.k_v_xy.isApprox(Vec2(1.0, 2.0)));
  CHECK(a.config.gains.k_v_z == 10.0);
  CHECK(a.config.funnels.pos[0].rho0 == 12.0);
  CHECK(a.config.funnels.pos[0].rho_inf == 0.2);
  CHECK(a.config.funnels.pos[0].l == 0.4);
  CHECK(a.config.funnels.rate[2].rho0 == 0.3);
  CHECK(a.config.violation_mode == ViolationMode::halt);

  const Scenario l = load_config(preset("landing.json"));
  REQUIRE(std::holds_alternative<Landing>(l.config.scenario));
  CHECK(std::get<Landing>(l.config.scenario).z_d == 5.0);
  CHECK(std::get<Landing>(l.config.scenario).t_d == 5.0);
  CHECK(l.config.duration == 10.0);
  CHECK(l.config.initial_state.p.z() == 5.0);
}

TEST_CASE("config round trip") {
  Scenario s = load_config(preset("landing.json"));
  s.outputs.out_dir = "some/dir";
  const Scenario back = parse_config(dump_config(s));

  CHECK(pack_state(back.config.initial_state) ==
        pack_state(s.config.initial_state));
  CHECK(back.config.dt == s.config.dt);
  CHECK(back.config.duration == s.config.duration);
  CHECK(back.config.params.m == s.config.params.m);
  CHECK(back.config.params.inertia_diag == s.config.params.inertia_diag);
  CHECK(back.config.conditions.f_z_min == s.config.conditions.f_z_min);
  CHECK(back.config.gains.k_omega == s.config.gains.k_omega);
  for (std::size_t i = 0; i < kChannelCount; ++i) {
    const auto c = static_cast<Channel>(i);
    CHECK(back.config.funnels.channel(c).rho0 ==
          s.config.funnels.channel(c).rho0);
    CHECK(back.config.funnels.channel(c).l == s.config.funnels.channel(c).l);
  }
  CHECK(back.outputs.out_dir == "some/dir");
  // and the dump is stable
  CHECK(dump_config(back) == dump_config(s));
}

TEST_CASE("config rejection diagnostics") {
  SUBCASE("unknown top-level key") {
    std::string text = slurp(preset("ascent.json"));
    text.insert(text.rfind('}'), ",\"extra_knob\": 1\n");
    try {
      parse_config(text);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("extra_knob") != std::string::npos);
    }
  }

  SUBCASE("missing funnel channel is named") {
    std::string text = slurp(preset("ascent.json"));
    const auto pos = text.find("\"omega_theta\"");
    REQUIRE(pos != std::string::npos);
    // rename the channel key: now omega_theta is missing (and the impostor
    // key is unknown)
    text.replace(pos, 13, "\"omega_thetb\"");
    try {
      parse_config(text);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("omega_theta") != std::string::npos);
    }
  }

  SUBCASE("negative dt") {
    std::string text = slurp(preset("ascent.json"));
    const auto pos = text.find("\"dt\": 0.0002");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 12, "\"dt\": -0.001");
    CHECK_THROWS_AS(parse_config(text), ConfigError);
  }

  SUBCASE("malformed json names the origin") {
    try {
      parse_config("{ not json", "broken.json");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("broken.json") != std::string::npos);
    }
  }

  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_config("/nonexistent/nope.json"), ConfigError);
  }
}

TEST_CASE("csv schema") {
  const std::string header = csv_header();
  const auto cols = split(header, ',');
  CHECK(cols.size() == 68);
  CHECK(cols.front() == "t");
  CHECK(cols.back() == "cond_c");

  // pinned verbatim: downstream tooling parses by name
  CHECK(header ==
        "t,p_x,p_y,p_z,v_x,v_y,v_z,phi,theta,psi,"
        "omega_phi,omega_theta,omega_psi,"
        "pr_x,pr_y,pr_z,psi_r,vr_x,vr_y,vr_z,"
        "omegar_phi,omegar_theta,omegar_psi,phi_r,theta_r,"
        "F_z,tau_phi,tau_theta,tau_psi,"
        "e_p_x,e_p_y,e_p_z,e_v_x,e_v_y,e_v_z,e_phitheta_1,e_phitheta_2,"
        "e_psi,e_omega_phi,e_omega_theta,e_omega_psi,"
        "rho_p_x,rho_p_y,rho_p_z,rho_v_x,rho_v_y,rho_v_z,rho_phitheta_1,"
        "rho_phitheta_2,rho_psi,rho_omega_phi,rho_omega_theta,rho_omega_psi,"
        "xi_p_x,xi_p_y,xi_p_z,xi_v_x,xi_v_y,xi_v_z,xi_phitheta_1,"
        "xi_phitheta_2,xi_psi,xi_omega_phi,xi_omega_theta,xi_omega_psi,"
        "cond_a,cond_b,cond_c");
}

TEST_CASE("csv content") {
  SimConfig cfg = funnelquad::testing::hover_config();
  cfg.duration = 0.1;
  const RunReport r = run(cfg);

  const fs::path path = temp_file("telemetry.csv");
  write_csv(r, path);
  const std::string text = slurp(path);
  auto lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();

  REQUIRE(lines.size() == r.records.size() + 1);
  CHECK(lines.size() ==
        static_cast<std::size_t>(step_count(cfg.duration, cfg.dt)) + 2);
  CHECK(lines[0] == csv_header());
  for (std::size_t i = 1; i < lines.size(); ++i) {
    CHECK(split(lines[i], ',').size() == 68);
  }

  // values carry 9 significant digits
  const auto row = split(lines[3], ',');
  CHECK(row[0] == "0.002");
  const double rho_pz = std::stod(row[43]);
  CHECK(rho_pz ==
        doctest::Approx(PerformanceFunction{12.0, 0.2, 0.4}.value(0.002))
            .epsilon(1e-8));

  // byte-identical on rewrite
  const fs::path again = temp_file("telemetry2.csv");
  write_csv(r, again);
  CHECK(slurp(again) == text);
}

TEST_CASE("funnel svg") {
  SimConfig cfg = funnelquad::testing::hover_config();
  cfg.duration = 0.2;
  const RunReport r = run(cfg);

  const fs::path path = temp_file("funnel_p_z.svg");
  write_funnel_svg(r, "p_z", path);
  const std::string text = slurp(path);

  CHECK(text.rfind("<?xml", 0) == 0);
  CHECK(text.find("<svg") != std::string::npos);
  CHECK(text.find("</svg>") != std::string::npos);
  CHECK(text.find("p_z") != std::string::npos);

  // three polylines: +rho, -rho, e
  std::size_t count = 0;
  for (std::size_t pos = text.find("<polyline"); pos != std::string::npos;
       pos = text.find("<polyline", pos + 1)) {
    ++count;
  }
  CHECK(count == 3);

  // parse the y-coordinates back out; the error trace must sit between the
  // funnel boundaries at every plotted sample
  std::vector<std::vector<double>> ys;
  for (std::size_t pos = text.find("points=\""); pos != std::string::npos;
       pos = text.find("points=\"", pos + 1)) {
    const std::size_t end = text.find('"', pos + 8);
    std::istringstream pts(text.substr(pos + 8, end - pos - 8));
    std::vector<double> y;
    std::string pair;
    while (pts >> pair) {
      y.push_back(std::stod(pair.substr(pair.find(',') + 1)));
    }
    ys.push_back(std::move(y));
  }
  REQUIRE(ys.size() == 3);
  REQUIRE(ys[0].size() == ys[2].size());
  for (std::size_t i = 0; i < ys[0].size(); ++i) {
    // svg y grows downward: +rho plots lowest-y, -rho highest-y
    CHECK(ys[2][i] >= ys[0][i] - 1e-9);
    CHECK(ys[2][i] <= ys[1][i] + 1e-9);
  }

  CHECK_THROWS_AS(write_funnel_svg(r, "p_q", temp_file("bad.svg")),
                  std::invalid_argument);
  CHECK_THROWS_AS(write_funnel_svg(RunReport{}, "p_z", temp_file("bad.svg")),
                  std::invalid_argument);
}

TEST_CASE("metrics json") {
  SimConfig cfg = funnelquad::testing::hover_config();
  cfg.duration = 0.1;
  const RunReport r = run(cfg);
  const std::string j = metrics_json(r);
  CHECK(j.find("\"violation_count\": 0") != std::string::npos);
  CHECK(j.find("\"assumption1_ok\": true") != std::string::npos);
  CHECK(j.find("\"p_z\"") != std::string::npos);
  CHECK(j.find("max_abs_xi") != std::string::npos);
}
