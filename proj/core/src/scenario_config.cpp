#include "funnelquad/scenario_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace funnelquad {

namespace {

using json = nlohmann::ordered_json;

// Tracks which keys of one JSON object were consumed so leftovers can be
// rejected by name.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path)
      : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) {
      throw ConfigError(path_, "expected an object");
    }
  }

  const json& require(const std::string& key) {
    const auto it = j_.find(key);
    if (it == j_.end()) {
      throw ConfigError(member(key), "missing required key");
    }
    seen_.insert(key);
    return *it;
  }

  const json* optional(const std::string& key) {
    const auto it = j_.find(key);
    if (it == j_.end()) return nullptr;
    seen_.insert(key);
    return &*it;
  }

  void reject_unknown() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.contains(key)) {
        throw ConfigError(member(key), "unknown key");
      }
    }
  }

  std::string member(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

double as_double(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<double>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

template <int N>
Eigen::Matrix<double, N, 1> as_vec(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != N) {
    throw ConfigError(path,
                      "expected an array of " + std::to_string(N) +
                          " numbers");
  }
  Eigen::Matrix<double, N, 1> v;
  for (int i = 0; i < N; ++i) {
    v(i) = as_double(j[static_cast<std::size_t>(i)],
                     path + "[" + std::to_string(i) + "]");
  }
  return v;
}

PerformanceFunction parse_funnel(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  PerformanceFunction pf{as_double(r.require("rho0"), r.member("rho0")),
                         as_double(r.require("rho_inf"), r.member("rho_inf")),
                         as_double(r.require("l"), r.member("l"))};
  r.reject_unknown();
  return pf;
}

TrajectoryKind parse_scenario(const json& j) {
  ObjectReader r(j, "scenario");
  const std::string kind = as_string(r.require("kind"), "scenario.kind");
  TrajectoryKind out;
  if (kind == "lemniscate_ascent") {
    out = LemniscateAscent{};
  } else if (kind == "landing") {
    Landing l;
    if (const json* v = r.optional("z_d")) {
      l.z_d = as_double(*v, "scenario.z_d");
    }
    if (const json* v = r.optional("t_d")) {
      l.t_d = as_double(*v, "scenario.t_d");
    }
    if (!(l.z_d > 0.0)) throw ConfigError("scenario.z_d", "must be > 0");
    if (!(l.t_d > 0.0)) throw ConfigError("scenario.t_d", "must be > 0");
    out = l;
  } else if (kind == "hover") {
    Hover h;
    h.p = as_vec<3>(r.require("p"), "scenario.p");
    if (const json* v = r.optional("psi")) {
      h.psi = as_double(*v, "scenario.psi");
    }
    out = h;
  } else {
    throw ConfigError("scenario.kind",
                      "unknown kind '" + kind +
                          "' (expected lemniscate_ascent, landing or hover)");
  }
  r.reject_unknown();
  return out;
}

VehicleState parse_state(const json& j) {
  ObjectReader r(j, "initial_state");
  VehicleState s;
  s.p = as_vec<3>(r.require("p"), "initial_state.p");
  s.v = as_vec<3>(r.require("v"), "initial_state.v");
  const Vec3 eta = as_vec<3>(r.require("eta"), "initial_state.eta");
  s.eta = EulerAngles{eta(0), eta(1), eta(2)};
  s.omega = as_vec<3>(r.require("omega"), "initial_state.omega");
  r.reject_unknown();
  return s;
}

QuadParams parse_params(const json& j) {
  ObjectReader r(j, "params");
  QuadParams p;
  p.m = as_double(r.require("m"), "params.m");
  p.inertia_diag = as_vec<3>(r.require("inertia"), "params.inertia");
  if (const json* v = r.optional("g")) p.g = as_double(*v, "params.g");
  r.reject_unknown();
  return p;
}

DisturbanceSpec parse_disturbance(const json& j) {
  ObjectReader r(j, "disturbance");
  const std::string kind = as_string(r.require("kind"), "disturbance.kind");
  DisturbanceSpec d;
  if (kind == "none") {
    d.kind = DisturbanceKind::none;
  } else {
    if (kind == "constant") {
      d.kind = DisturbanceKind::constant;
    } else if (kind == "sinusoid") {
      d.kind = DisturbanceKind::sinusoid;
      d.frequency =
          as_double(r.require("frequency"), "disturbance.frequency");
    } else if (kind == "linear_drag") {
      d.kind = DisturbanceKind::linear_drag;
    } else {
      throw ConfigError("disturbance.kind", "unknown kind '" + kind + "'");
    }
    d.force_params = as_vec<3>(r.require("force"), "disturbance.force");
    d.torque_params = as_vec<3>(r.require("torque"), "disturbance.torque");
  }
  r.reject_unknown();
  return d;
}

FunnelSet parse_funnels(const json& j) {
  ObjectReader r(j, "funnels");
  FunnelSet f;
  for (std::size_t i = 0; i < kChannelCount; ++i) {
    const auto c = static_cast<Channel>(i);
    const std::string key{channel_name(c)};
    f.channel(c) = parse_funnel(r.require(key), "funnels." + key);
  }
  r.reject_unknown();
  return f;
}

GainSet parse_gains(const json& j) {
  ObjectReader r(j, "gains");
  GainSet g;
  g.k_p = as_vec<3>(r.require("k_p"), "gains.k_p");
  g.k_v_xy = as_vec<2>(r.require("k_v_xy"), "gains.k_v_xy");
  g.k_v_z = as_double(r.require("k_v_z"), "gains.k_v_z");
  g.k_phitheta = as_vec<2>(r.require("k_phitheta"), "gains.k_phitheta");
  g.k_psi = as_double(r.require("k_psi"), "gains.k_psi");
  g.k_omega = as_vec<3>(r.require("k_omega"), "gains.k_omega");
  r.reject_unknown();
  return g;
}

TheoremConditions parse_conditions(const json& j) {
  ObjectReader r(j, "conditions");
  TheoremConditions c;
  if (const json* v = r.optional("pi_bar")) {
    c.pi_bar = as_double(*v, "conditions.pi_bar");
  }
  if (const json* v = r.optional("F_z_min")) {
    c.f_z_min = as_double(*v, "conditions.F_z_min");
  }
  r.reject_unknown();
  return c;
}

json dump_vec(const Eigen::Ref<const Eigen::VectorXd>& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json dump_funnel(const PerformanceFunction& pf) {
  return {{"rho0", pf.rho0}, {"rho_inf", pf.rho_inf}, {"l", pf.l}};
}

}  // namespace

Scenario parse_config(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin, e.what());
  }

  ObjectReader r(j, "");
  Scenario s;
  SimConfig& cfg = s.config;

  cfg.scenario = parse_scenario(r.require("scenario"));
  cfg.duration = as_double(r.require("duration"), "duration");
  cfg.dt = as_double(r.require("dt"), "dt");
  cfg.initial_state = parse_state(r.require("initial_state"));
  cfg.params = parse_params(r.require("params"));
  cfg.disturbance = parse_disturbance(r.require("disturbance"));
  cfg.funnels = parse_funnels(r.require("funnels"));
  cfg.gains = parse_gains(r.require("gains"));
  if (const json* v = r.optional("conditions")) {
    cfg.conditions = parse_conditions(*v);
  }
  if (const json* v = r.optional("violation_mode")) {
    const std::string mode = as_string(*v, "violation_mode");
    if (mode == "halt") {
      cfg.violation_mode = ViolationMode::halt;
    } else if (mode == "clamp_and_continue") {
      cfg.violation_mode = ViolationMode::clamp_and_continue;
    } else {
      throw ConfigError("violation_mode",
                        "expected 'halt' or 'clamp_and_continue'");
    }
  }
  if (const json* v = r.optional("outputs")) {
    ObjectReader ro(*v, "outputs");
    if (const json* d = ro.optional("out_dir")) {
      s.outputs.out_dir = as_string(*d, "outputs.out_dir");
    }
    ro.reject_unknown();
  }
  r.reject_unknown();

  cfg.validate();
  return s;
}

Scenario load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(path.string(), "cannot open scenario file");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

std::string dump_config(const Scenario& scenario) {
  const SimConfig& cfg = scenario.config;
  json j;

  json sc;
  if (std::holds_alternative<LemniscateAscent>(cfg.scenario)) {
    sc = {{"kind", "lemniscate_ascent"}};
  } else if (const auto* l = std::get_if<Landing>(&cfg.scenario)) {
    sc = {{"kind", "landing"}, {"z_d", l->z_d}, {"t_d", l->t_d}};
  } else {
    const auto& h = std::get<Hover>(cfg.scenario);
    sc = {{"kind", "hover"}, {"p", dump_vec(h.p)}, {"psi", h.psi}};
  }
  j["scenario"] = sc;
  j["duration"] = cfg.duration;
  j["dt"] = cfg.dt;
  j["initial_state"] = {
      {"p", dump_vec(cfg.initial_state.p)},
      {"v", dump_vec(cfg.initial_state.v)},
      {"eta", json::array({cfg.initial_state.eta.phi,
                           cfg.initial_state.eta.theta,
                           cfg.initial_state.eta.psi})},
      {"omega", dump_vec(cfg.initial_state.omega)},
  };
  j["params"] = {{"m", cfg.params.m},
                 {"inertia", dump_vec(cfg.params.inertia_diag)},
                 {"g", cfg.params.g}};

  json d;
  switch (cfg.disturbance.kind) {
    case DisturbanceKind::none:
      d = {{"kind", "none"}};
      break;
    case DisturbanceKind::constant:
      d = {{"kind", "constant"}};
      break;
    case DisturbanceKind::sinusoid:
      d = {{"kind", "sinusoid"},
           {"frequency", cfg.disturbance.frequency}};
      break;
    case DisturbanceKind::linear_drag:
      d = {{"kind", "linear_drag"}};
      break;
  }
  if (cfg.disturbance.kind != DisturbanceKind::none) {
    d["force"] = dump_vec(cfg.disturbance.force_params);
    d["torque"] = dump_vec(cfg.disturbance.torque_params);
  }
  j["disturbance"] = d;

  json fs;
  for (std::size_t i = 0; i < kChannelCount; ++i) {
    const auto c = static_cast<Channel>(i);
    fs[std::string(channel_name(c))] = dump_funnel(cfg.funnels.channel(c));
  }
  j["funnels"] = fs;

  j["gains"] = {{"k_p", dump_vec(cfg.gains.k_p)},
                {"k_v_xy", dump_vec(cfg.gains.k_v_xy)},
                {"k_v_z", cfg.gains.k_v_z},
                {"k_phitheta", dump_vec(cfg.gains.k_phitheta)},
                {"k_psi", cfg.gains.k_psi},
                {"k_omega", dump_vec(cfg.gains.k_omega)}};
  j["conditions"] = {{"pi_bar", cfg.conditions.pi_bar},
                     {"F_z_min", cfg.conditions.f_z_min}};
  j["violation_mode"] = cfg.violation_mode == ViolationMode::halt
                            ? "halt"
                            : "clamp_and_continue";
  if (!scenario.outputs.out_dir.empty()) {
    j["outputs"] = {{"out_dir", scenario.outputs.out_dir}};
  }
  return j.dump(2) + "\n";
}

void save_config(const Scenario& scenario,
                 const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError(path.string(), "cannot open file for writing");
  out << dump_config(scenario);
}

}  // namespace funnelquad
