#include "minkflow_app/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace minkflow::app {

namespace {

using nlohmann::json;

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError(where + " must be a number");
  return v.get<double>();
}

long integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ConfigError(where + " must be an integer");
  return v.get<long>();
}

std::vector<Harmonic> harmonics(const json& section, const std::string& where) {
  only_keys(section, where, {"harmonics"});
  if (!section.contains("harmonics") || !section["harmonics"].is_array()) {
    throw ConfigError(where + ".harmonics must be an array of [order, cos, sin] triples");
  }
  std::vector<Harmonic> out;
  for (const auto& h : section["harmonics"]) {
    if (!h.is_array() || h.size() < 2 || h.size() > 3) {
      throw ConfigError(where + ".harmonics entries must be [order, cos] or [order, cos, sin]");
    }
    Harmonic term;
    term.order = static_cast<int>(integer(h[0], where + " harmonic order"));
    term.cos_coef = number(h[1], where + " cosine coefficient");
    term.sin_coef = h.size() == 3 ? number(h[2], where + " sine coefficient") : 0.0;
    out.push_back(term);
  }
  if (out.empty()) throw ConfigError(where + ".harmonics is empty");
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  only_keys(doc, "config",
            {"unit_ball", "initial_curvature", "grid", "base", "solver", "certify", "output_dir"});

  RunConfig cfg;
  if (doc.contains("unit_ball")) cfg.ball_harmonics = harmonics(doc["unit_ball"], "unit_ball");
  if (doc.contains("initial_curvature")) {
    cfg.curvature_harmonics = harmonics(doc["initial_curvature"], "initial_curvature");
  }
  if (doc.contains("grid")) cfg.grid = static_cast<int>(integer(doc["grid"], "grid"));
  if (doc.contains("base")) {
    const auto& b = doc["base"];
    if (!b.is_array() || b.size() != 2) throw ConfigError("base must be [x, y]");
    cfg.base = {number(b[0], "base x"), number(b[1], "base y")};
  }
  if (doc.contains("output_dir")) {
    if (!doc["output_dir"].is_string()) throw ConfigError("output_dir must be a string");
    cfg.output_dir = doc["output_dir"].get<std::string>();
  }
  if (doc.contains("solver")) {
    const auto& s = doc["solver"];
    only_keys(s, "solver",
              {"sigma", "area_fraction", "max_time", "max_steps", "snapshot_every", "tol_close", "tol_pos",
               "max_retries"});
    auto& sc = cfg.solver;
    if (s.contains("sigma")) sc.sigma = number(s["sigma"], "solver.sigma");
    if (s.contains("area_fraction")) sc.area_fraction = number(s["area_fraction"], "solver.area_fraction");
    if (s.contains("max_time")) sc.max_time = number(s["max_time"], "solver.max_time");
    if (s.contains("max_steps")) sc.max_steps = integer(s["max_steps"], "solver.max_steps");
    if (s.contains("snapshot_every")) {
      sc.snapshot_every = static_cast<int>(integer(s["snapshot_every"], "solver.snapshot_every"));
    }
    if (s.contains("tol_close")) sc.tol_close = number(s["tol_close"], "solver.tol_close");
    if (s.contains("tol_pos")) sc.tol_pos = number(s["tol_pos"], "solver.tol_pos");
    if (s.contains("max_retries")) {
      sc.max_retries = static_cast<int>(integer(s["max_retries"], "solver.max_retries"));
    }
  }
  if (doc.contains("certify")) {
    only_keys(doc["certify"], "certify", {"tol"});
    if (doc["certify"].contains("tol")) cfg.certify_tol = number(doc["certify"]["tol"], "certify.tol");
  }
  try {
    cfg.solver.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("solver: ") + e.what());
  }
  if (!(cfg.certify_tol >= 0.0)) throw ConfigError("certify.tol must be nonnegative");
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace minkflow::app
