#include "nek/config.hpp"

#include <cmath>
#include <fstream>

#include "json.hpp"
#include "nek/error.hpp"

namespace nek {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError(path + ": " + msg);
}

double get_number(const json& j, const std::string& path, const char* key, double fallback,
                  bool required = false) {
  if (!j.contains(key)) {
    if (required) fail(path + "." + key, "missing required field");
    return fallback;
  }
  if (!j[key].is_number()) fail(path + "." + key, "must be a number");
  return j[key].get<double>();
}

std::string get_string(const json& j, const std::string& path, const char* key,
                       const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_string()) fail(path + "." + key, "must be a string");
  return j[key].get<std::string>();
}

std::vector<double> get_array(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) fail(path + "." + key, "must be an array");
  std::vector<double> out;
  for (const auto& v : j[key]) {
    if (!v.is_number()) fail(path + "." + key, "entries must be numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

Vec3 ExperimentConfig::window_center() const {
  const double st = std::sin(center_theta), ct = std::cos(center_theta);
  return radius * Vec3{st * std::cos(center_phi), st * std::sin(center_phi), ct};
}

GreenProvider ExperimentConfig::make_green_provider(const DomainModel& d) const {
  if (green_provider_kind == "ball") return ball_green_provider(d);
  return user_green_provider(d, green_provider_path);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }

  ExperimentConfig cfg;

  if (root.contains("domain")) {
    cfg.radius = get_number(root["domain"], "domain", "radius", 1.0);
    if (!(cfg.radius > 0.0)) fail("domain.radius", "must be > 0");
  }

  if (root.contains("potential")) {
    const json& p = root["potential"];
    cfg.potential_kind = get_string(p, "potential", "kind", "zero");
    if (cfg.potential_kind == "zero") {
      cfg.potential = PotentialField::zero();
    } else if (cfg.potential_kind == "constant") {
      cfg.potential = PotentialField::constant_value(get_number(p, "potential", "c", 0.0, true));
    } else if (cfg.potential_kind == "linear_axis") {
      const double beta = get_number(p, "potential", "beta", 0.0, true);
      Vec3 axis{0.0, 0.0, 1.0};
      if (p.contains("axis")) {
        const auto ax = get_array(p, "potential", "axis");
        if (ax.size() != 3) fail("potential.axis", "must have 3 components");
        axis = Vec3{ax[0], ax[1], ax[2]};
        if (norm(axis) == 0.0) fail("potential.axis", "must be nonzero");
      }
      cfg.potential = PotentialField::linear_axis(beta, axis);
    } else if (cfg.potential_kind == "tabulated") {
      const std::string file = get_string(p, "potential", "file", "");
      if (file.empty()) fail("potential.file", "missing required field");
      cfg.potential = PotentialField::tabulated(load_potential_grid(file));
    } else {
      fail("potential.kind", "unknown kind '" + cfg.potential_kind + "'");
    }
  }

  if (!root.contains("window")) fail("window", "missing required section");
  {
    const json& w = root["window"];
    if (w.contains("center")) {
      cfg.center_theta = get_number(w["center"], "window.center", "theta", 0.0);
      cfg.center_phi = get_number(w["center"], "window.center", "phi", 0.0);
      if (cfg.center_theta < 0.0 || cfg.center_theta > M_PI)
        fail("window.center.theta", "must be in [0, pi]");
    }
    cfg.eps_list = get_array(w, "window", "eps");
    if (cfg.eps_list.empty()) fail("window.eps", "must be non-empty");
    for (std::size_t i = 0; i < cfg.eps_list.size(); ++i) {
      if (!(cfg.eps_list[i] > 0.0))
        fail("window.eps[" + std::to_string(i) + "]", "must be positive");
      if (i > 0 && !(cfg.eps_list[i] < cfg.eps_list[i - 1]))
        fail("window.eps[" + std::to_string(i) + "]", "list must be strictly descending");
    }
    if (w.contains("a")) {
      cfg.a_list = get_array(w, "window", "a");
    } else {
      cfg.a_list = {1.0};
    }
    for (std::size_t i = 0; i < cfg.a_list.size(); ++i)
      if (!(cfg.a_list[i] > 0.0 && cfg.a_list[i] <= 1.0))
        fail("window.a[" + std::to_string(i) + "]", "must be in (0, 1]");
  }

  if (root.contains("mc")) {
    const json& m = root["mc"];
    cfg.mc_dt = get_number(m, "mc", "dt", cfg.mc_dt);
    if (!(cfg.mc_dt > 0.0)) fail("mc.dt", "must be > 0");
    const double np = get_number(m, "mc", "n_paths", static_cast<double>(cfg.mc_n_paths));
    if (!(np >= 1.0)) fail("mc.n_paths", "must be >= 1");
    cfg.mc_n_paths = static_cast<std::int64_t>(np);
    cfg.mc_seed = static_cast<std::uint64_t>(get_number(m, "mc", "seed", 12345.0));
    cfg.mc_start = get_string(m, "mc", "start", cfg.mc_start);
    if (cfg.mc_start != "uniform" && cfg.mc_start != "center" && cfg.mc_start != "point")
      fail("mc.start", "must be one of uniform|center|point");
    if (m.contains("start_point")) {
      const auto sp = get_array(m, "mc", "start_point");
      if (sp.size() != 3) fail("mc.start_point", "must have 3 components");
      cfg.mc_start_point = Vec3{sp[0], sp[1], sp[2]};
    }
    cfg.mc_max_time = get_number(m, "mc", "max_time", 0.0);
    if (cfg.mc_max_time < 0.0) fail("mc.max_time", "must be >= 0 (0 = auto)");
    cfg.mc_reflection = get_string(m, "mc", "reflection", cfg.mc_reflection);
    if (cfg.mc_reflection != "normal_projection" && cfg.mc_reflection != "specular")
      fail("mc.reflection", "must be normal_projection|specular");
    const double lev = get_number(m, "mc", "refine_levels", cfg.mc_refine_levels);
    if (!(lev >= 1.0 && lev <= 6.0)) fail("mc.refine_levels", "must be in [1, 6]");
    cfg.mc_refine_levels = static_cast<int>(lev);
  }

  if (root.contains("kernel")) {
    const json& k = root["kernel"];
    cfg.kernel_direction_angle = get_number(k, "kernel", "direction_angle", 0.0);
    if (k.contains("distances")) {
      cfg.kernel_distances = get_array(k, "kernel", "distances");
      for (std::size_t i = 0; i < cfg.kernel_distances.size(); ++i)
        if (!(cfg.kernel_distances[i] > 0.0))
          fail("kernel.distances[" + std::to_string(i) + "]", "must be positive");
    }
  }

  if (root.contains("green_provider")) {
    const json& g = root["green_provider"];
    cfg.green_provider_kind = get_string(g, "green_provider", "kind", "ball");
    if (cfg.green_provider_kind != "ball" && cfg.green_provider_kind != "file")
      fail("green_provider.kind", "must be ball|file");
    if (cfg.green_provider_kind == "file") {
      cfg.green_provider_path = get_string(g, "green_provider", "path", "");
      if (cfg.green_provider_path.empty()) fail("green_provider.path", "missing required field");
    }
  }

  if (root.contains("outputs")) {
    const json& o = root["outputs"];
    cfg.out_dir = get_string(o, "outputs", "directory", cfg.out_dir);
    if (o.contains("formats")) {
      cfg.emit_csv = false;
      cfg.emit_jsonl = false;
      if (!o["formats"].is_array()) fail("outputs.formats", "must be an array");
      for (const auto& f : o["formats"]) {
        if (!f.is_string()) fail("outputs.formats", "entries must be strings");
        const std::string s = f.get<std::string>();
        if (s == "csv") {
          cfg.emit_csv = true;
        } else if (s == "jsonl") {
          cfg.emit_jsonl = true;
        } else {
          fail("outputs.formats", "unknown format '" + s + "' (csv|jsonl)");
        }
      }
      if (!cfg.emit_csv) fail("outputs.formats", "csv cannot be disabled (tables are the output)");
    }
  }

  return cfg;
}

}  // namespace nek
