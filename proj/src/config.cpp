#include "tmspin/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tmspin::config {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::string& path,
                const std::set<std::string>& allowed) {
  if (!j.is_object()) throw std::runtime_error("config: " + path + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw std::runtime_error("config: unknown key '" + path + "." + it.key() + "'");
}

double get_num(const json& j, const std::string& path, const char* key,
               std::optional<double> fallback = std::nullopt) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    throw std::runtime_error("config: missing required key '" + path + "." + key + "'");
  }
  if (!j[key].is_number())
    throw std::runtime_error("config: '" + path + "." + key + "' must be a number");
  return j[key].get<double>();
}

int get_int(const json& j, const std::string& path, const char* key, int fallback) {
  const double v = get_num(j, path, key, static_cast<double>(fallback));
  if (std::abs(v - std::round(v)) > 1e-9)
    throw std::runtime_error("config: '" + path + "." + key + "' must be an integer");
  return static_cast<int>(std::lround(v));
}

Eigen::Vector3d get_vec3(const json& j, const std::string& path, const char* key,
                         const Eigen::Vector3d& fallback) {
  if (!j.contains(key)) return fallback;
  const auto& a = j[key];
  if (!a.is_array() || a.size() != 3 || !a[0].is_number() || !a[1].is_number() ||
      !a[2].is_number())
    throw std::runtime_error("config: '" + path + "." + key +
                             "' must be an array of 3 numbers");
  return {a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
}

spectra::Axis parse_axis(const std::string& s, const std::string& path) {
  if (s == "x") return spectra::Axis::x;
  if (s == "y") return spectra::Axis::y;
  if (s == "z") return spectra::Axis::z;
  throw std::runtime_error("config: " + path + " axis must be x, y or z");
}

spectra::DriveTag parse_drive(const std::string& s, const std::string& path) {
  if (s == "Bpar") return spectra::DriveTag::b_par;
  if (s == "Bperp") return spectra::DriveTag::b_perp;
  if (s == "Ez") return spectra::DriveTag::e_z;
  throw std::runtime_error("config: " + path + " drive must be Bpar, Bperp or Ez");
}

} // namespace

RunConfig parse(const std::string& json_text, std::vector<std::string>* warnings) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("config: JSON parse error: ") + e.what());
  }
  check_keys(j, "", {"model", "field", "targets", "sweep", "transitions", "matrixmap",
                     "fit", "effective", "wavefunction"});
  RunConfig cfg;

  if (!j.contains("model")) throw std::runtime_error("config: missing 'model' section");
  {
    const auto& m = j["model"];
    check_keys(m, "model",
               {"delta_eV", "eta", "delta_a1_meV", "k", "lambda_meV", "a_hf_MHz",
                "g_e", "g_n", "nuclear_spin", "include_hf"});
    auto& p = cfg.model;
    p.delta_eV = get_num(m, "model", "delta_eV", 1.0);
    p.eta = get_num(m, "model", "eta");
    p.delta_a1_meV = get_num(m, "model", "delta_a1_meV", 10.0);
    p.k = get_num(m, "model", "k");
    p.lambda_meV = get_num(m, "model", "lambda_meV");
    p.a_hf_Hz = get_num(m, "model", "a_hf_MHz", 0.0) * 1e6;
    p.g_e = get_num(m, "model", "g_e", constants::g_e_free);
    p.g_n = get_num(m, "model", "g_n"); // required: no sensible default exists
    p.nuclear_spin = get_num(m, "model", "nuclear_spin", 0.0);
    if (m.contains("include_hf")) {
      if (!m["include_hf"].is_boolean())
        throw std::runtime_error("config: 'model.include_hf' must be a boolean");
      p.include_hf = m["include_hf"].get<bool>();
    }
    p.validate();
  }

  {
    const json f = j.value("field", json::object());
    check_keys(f, "field", {"b_static_mT", "b_drive_uT", "delta_eta"});
    cfg.field.b_static = 1e-3 * get_vec3(f, "field", "b_static_mT", {0, 0, 0});
    cfg.field.b_drive = 1e-6 * get_vec3(f, "field", "b_drive_uT", {0, 0, 0});
    cfg.field.delta_eta = get_num(f, "field", "delta_eta", 0.0);
    if (cfg.field.delta_eta != 0.0 &&
        std::abs(cfg.field.delta_eta) > 0.5 * std::abs(cfg.model.eta) && warnings)
      warnings->push_back("field.delta_eta exceeds half of |model.eta|; the linear "
                          "drive picture may not hold");
  }

  if (j.contains("targets")) {
    const auto& t = j["targets"];
    check_keys(t, "targets",
               {"delta_gs_GHz", "delta_gs_tol_GHz", "g_par", "g_par_tol",
                "g_perp_max", "b0_mT"});
    fitting::ExperimentalTargets tg;
    tg.delta_gs_Hz = get_num(t, "targets", "delta_gs_GHz") * 1e9;
    tg.delta_gs_tol_Hz = get_num(t, "targets", "delta_gs_tol_GHz") * 1e9;
    tg.g_par = get_num(t, "targets", "g_par");
    tg.g_par_tol = get_num(t, "targets", "g_par_tol");
    tg.g_perp_max = get_num(t, "targets", "g_perp_max");
    tg.b0_T = get_num(t, "targets", "b0_mT", 100.0) * 1e-3;
    tg.validate();
    cfg.targets = tg;
  }

  {
    const json s = j.value("sweep", json::object());
    check_keys(s, "sweep", {"axis", "b_min_mT", "b_max_mT", "n_points", "ground_only"});
    if (s.contains("axis")) cfg.sweep.axis = parse_axis(s["axis"].get<std::string>(), "sweep");
    cfg.sweep.b_min_mT = get_num(s, "sweep", "b_min_mT", 0.0);
    cfg.sweep.b_max_mT = get_num(s, "sweep", "b_max_mT", 100.0);
    cfg.sweep.n_points = get_int(s, "sweep", "n_points", 101);
    if (s.contains("ground_only")) cfg.sweep.ground_only = s["ground_only"].get<bool>();
  }

  {
    const json t = j.value("transitions", json::object());
    check_keys(t, "transitions",
               {"drive", "b_min_mT", "b_max_mT", "n_points", "n_levels", "rabi_floor_Hz"});
    if (t.contains("drive"))
      cfg.transitions.drive = parse_drive(t["drive"].get<std::string>(), "transitions");
    cfg.transitions.b_min_mT = get_num(t, "transitions", "b_min_mT", 0.0);
    cfg.transitions.b_max_mT = get_num(t, "transitions", "b_max_mT", 100.0);
    cfg.transitions.n_points = get_int(t, "transitions", "n_points", 51);
    cfg.transitions.n_levels = get_int(t, "transitions", "n_levels", 12);
    cfg.transitions.rabi_floor_Hz = get_num(t, "transitions", "rabi_floor_Hz", 1.0);
  }

  {
    const json m = j.value("matrixmap", json::object());
    check_keys(m, "matrixmap", {"b0_mT", "n_states"});
    cfg.matrixmap.b0_mT = get_num(m, "matrixmap", "b0_mT", 20.0);
    cfg.matrixmap.n_states = get_int(m, "matrixmap", "n_states", 24);
  }

  {
    const json f = j.value("fit", json::object());
    check_keys(f, "fit",
               {"k_values", "eta_min", "eta_max", "eta_steps", "lambda_min_meV",
                "lambda_max_meV", "lambda_steps"});
    if (f.contains("k_values")) {
      cfg.fit.k_values.clear();
      for (const auto& v : f["k_values"]) cfg.fit.k_values.push_back(v.get<double>());
    }
    auto& g = cfg.fit.grid;
    g.eta_min = get_num(f, "fit", "eta_min", g.eta_min);
    g.eta_max = get_num(f, "fit", "eta_max", g.eta_max);
    g.eta_steps = get_int(f, "fit", "eta_steps", g.eta_steps);
    g.lambda_min_meV = get_num(f, "fit", "lambda_min_meV", g.lambda_min_meV);
    g.lambda_max_meV = get_num(f, "fit", "lambda_max_meV", g.lambda_max_meV);
    g.lambda_steps = get_int(f, "fit", "lambda_steps", g.lambda_steps);
  }

  {
    const json e = j.value("effective", json::object());
    check_keys(e, "effective", {"doublet", "b_max_mT", "n_points"});
    cfg.effective.doublet = get_int(e, "effective", "doublet", 0);
    cfg.effective.b_max_mT = get_num(e, "effective", "b_max_mT", 100.0);
    cfg.effective.n_points = get_int(e, "effective", "n_points", 51);
  }

  {
    const json w = j.value("wavefunction", json::object());
    check_keys(w, "wavefunction", {"n_theta", "n_phi"});
    cfg.wavefunction.n_theta = get_int(w, "wavefunction", "n_theta", 60);
    cfg.wavefunction.n_phi = get_int(w, "wavefunction", "n_phi", 120);
  }

  return cfg;
}

RunConfig load(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), warnings);
}

std::string dump(const RunConfig& cfg) {
  json j;
  j["model"] = {{"delta_eV", cfg.model.delta_eV},
                {"eta", cfg.model.eta},
                {"delta_a1_meV", cfg.model.delta_a1_meV},
                {"k", cfg.model.k},
                {"lambda_meV", cfg.model.lambda_meV},
                {"a_hf_MHz", cfg.model.a_hf_Hz / 1e6},
                {"g_e", cfg.model.g_e},
                {"g_n", cfg.model.g_n},
                {"nuclear_spin", cfg.model.nuclear_spin},
                {"include_hf", cfg.model.include_hf}};
  auto vec = [](const Eigen::Vector3d& v, double scale) {
    return json::array({v.x() * scale, v.y() * scale, v.z() * scale});
  };
  j["field"] = {{"b_static_mT", vec(cfg.field.b_static, 1e3)},
                {"b_drive_uT", vec(cfg.field.b_drive, 1e6)},
                {"delta_eta", cfg.field.delta_eta}};
  if (cfg.targets) {
    j["targets"] = {{"delta_gs_GHz", cfg.targets->delta_gs_Hz / 1e9},
                    {"delta_gs_tol_GHz", cfg.targets->delta_gs_tol_Hz / 1e9},
                    {"g_par", cfg.targets->g_par},
                    {"g_par_tol", cfg.targets->g_par_tol},
                    {"g_perp_max", cfg.targets->g_perp_max},
                    {"b0_mT", cfg.targets->b0_T * 1e3}};
  }
  const char* axis_names[] = {"x", "y", "z"};
  j["sweep"] = {{"axis", axis_names[static_cast<int>(cfg.sweep.axis)]},
                {"b_min_mT", cfg.sweep.b_min_mT},
                {"b_max_mT", cfg.sweep.b_max_mT},
                {"n_points", cfg.sweep.n_points},
                {"ground_only", cfg.sweep.ground_only}};
  j["transitions"] = {{"drive", spectra::drive_name(cfg.transitions.drive)},
                      {"b_min_mT", cfg.transitions.b_min_mT},
                      {"b_max_mT", cfg.transitions.b_max_mT},
                      {"n_points", cfg.transitions.n_points},
                      {"n_levels", cfg.transitions.n_levels},
                      {"rabi_floor_Hz", cfg.transitions.rabi_floor_Hz}};
  j["matrixmap"] = {{"b0_mT", cfg.matrixmap.b0_mT},
                    {"n_states", cfg.matrixmap.n_states}};
  j["fit"] = {{"k_values", cfg.fit.k_values},
              {"eta_min", cfg.fit.grid.eta_min},
              {"eta_max", cfg.fit.grid.eta_max},
              {"eta_steps", cfg.fit.grid.eta_steps},
              {"lambda_min_meV", cfg.fit.grid.lambda_min_meV},
              {"lambda_max_meV", cfg.fit.grid.lambda_max_meV},
              {"lambda_steps", cfg.fit.grid.lambda_steps}};
  j["effective"] = {{"doublet", cfg.effective.doublet},
                    {"b_max_mT", cfg.effective.b_max_mT},
                    {"n_points", cfg.effective.n_points}};
  j["wavefunction"] = {{"n_theta", cfg.wavefunction.n_theta},
                       {"n_phi", cfg.wavefunction.n_phi}};
  return j.dump(2) + "\n";
}

} // namespace tmspin::config
