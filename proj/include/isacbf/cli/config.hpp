#pragma once

// Flat `key = value` run configuration. Every key is listed once in
// config_keys(); parsing, serialization and command-line overrides all go
// through that table so they cannot drift apart.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "isacbf/experiments.hpp"
#include "isacbf/scene_channel.hpp"

namespace isacbf::cli {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "config line " + std::to_string(line) + ": " + what : "config: " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

enum class Methods { kZf, kJoint, kBoth };

struct RunConfig {
  std::string experiment = "detect-distance";
  Methods methods = Methods::kBoth;

  // Link budget, engineering units.
  double total_power_dbm = 30.0;
  double carrier_ghz = 2.4;
  double temperature_k = 270.0;
  double bandwidth_mhz = 10.0;
  double noise_figure_db = 7.0;
  double eta = 0.16;
  double tag_sensitivity_dbm = -25.5;
  double reader_sensitivity_dbm = -94.0;
  std::vector<double> gamma_u_db{0.0};
  std::optional<double> gamma_t_db;  // overrides the sensitivity mapping
  std::optional<double> gamma_r_db;

  // Array.
  std::vector<int> n_antennas{4};
  int n_rx_antennas = 0;  // 0 means equal to n_antennas
  double antenna_spacing_wl = 0.5;

  // Scene.
  double user_x_m = 5.0 / std::sqrt(2.0);
  double user_y_m = 5.0 / std::sqrt(2.0);
  double tag_distance_m = 6.0;
  double tag_direction_deg = 90.0;

  // Angle grid and distance search.
  double angle_start_deg = 0.0;
  double angle_stop_deg = 180.0;
  double angle_step_deg = 5.0;
  double distance_low_m = 0.1;
  double distance_high_m = 0.0;  // 0 means twice the no-user bound
  double bisect_tol_m = 0.01;
  int prescan_points = 64;

  // Coverage.
  int n_users = 400;
  double user_x_min_m = 0.0;
  double user_x_max_m = 20.0;
  double user_y_min_m = -20.0;
  double user_y_max_m = 20.0;
  std::uint64_t seed = 1;

  // Beam pattern, solver and output.
  double pattern_step_deg = 0.5;
  ObjectiveMode joint_objective = ObjectiveMode::kSumOfNorms;
  double solver_tol = 1e-8;
  bool feasibility_shortcuts = true;
  bool dump_program = false;
  int threads = 1;
  std::string output_dir = "out";

  LinkBudget budget(double gamma_u) const {
    LinkBudget b;
    b.total_power_dbm = total_power_dbm;
    b.temperature_k = temperature_k;
    b.bandwidth_hz = bandwidth_mhz * 1e6;
    b.noise_figure_db = noise_figure_db;
    b.eta = eta;
    b.tag_sensitivity_dbm = tag_sensitivity_dbm;
    b.reader_sensitivity_dbm = reader_sensitivity_dbm;
    b.gamma_user_db = gamma_u;
    return b;
  }

  SystemParams params(double gamma_u) const {
    SystemParams p = budget(gamma_u).to_params();
    if (gamma_t_db) p.gamma_tag = db_to_linear(*gamma_t_db);
    if (gamma_r_db) p.gamma_reader = db_to_linear(*gamma_r_db);
    p.validate();
    return p;
  }

  ArrayConfig array(int n) const {
    ArrayConfig a;
    a.n_tx = n;
    a.n_rx = n_rx_antennas > 0 ? n_rx_antennas : n;
    a.spacing = antenna_spacing_wl;
    a.carrier_freq = carrier_ghz * 1e9;
    a.validate();
    return a;
  }

  std::vector<MethodKind> method_list() const {
    switch (methods) {
      case Methods::kZf: return {MethodKind::kZeroForcing};
      case Methods::kJoint: return {MethodKind::kJointSocp};
      case Methods::kBoth: break;
    }
    return {MethodKind::kZeroForcing, MethodKind::kJointSocp};
  }

  std::vector<double> angles_deg() const { return degree_grid(angle_start_deg, angle_stop_deg, angle_step_deg); }

  ConicSettings solver() const {
    ConicSettings s;
    s.feastol = s.abstol = s.reltol = solver_tol;
    return s;
  }
};

inline const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"detect-distance", "coverage", "power-sweep", "beam-pattern",
                                              "solve-one"};
  return names;
}

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline double to_double(const std::string& v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, out);
  if (r.ec != std::errc() || r.ptr != end || !std::isfinite(out)) throw std::invalid_argument("not a number: '" + v + "'");
  return out;
}

template <typename Int>
Int to_int(const std::string& v) {
  Int out = 0;
  const auto* end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, out);
  if (r.ec != std::errc() || r.ptr != end) throw std::invalid_argument("not an integer: '" + v + "'");
  return out;
}

inline bool to_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("not a boolean: '" + v + "'");
}

inline std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

// Shortest text that parses back to the same double.
inline std::string fmt(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

template <typename T>
std::string join(const std::vector<T>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    if constexpr (std::is_floating_point_v<T>) out += fmt(xs[i]);
    else out += std::to_string(xs[i]);
  }
  return out;
}

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace detail

struct ConfigKey {
  std::string name;
  std::string help;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

inline const std::vector<ConfigKey>& config_keys() {
  using namespace detail;
  auto real = [](const char* name, const char* help, double RunConfig::*field,
                 std::function<bool(double)> ok = {}, const char* rule = "") {
    return ConfigKey{name, help,
                     [=](RunConfig& c, const std::string& v) {
                       const double x = to_double(v);
                       if (ok) require(ok(x), std::string(name) + " must be " + rule);
                       c.*field = x;
                     },
                     [=](const RunConfig& c) { return fmt(c.*field); }};
  };
  auto count = [](const char* name, const char* help, int RunConfig::*field, int min) {
    return ConfigKey{name, help,
                     [=](RunConfig& c, const std::string& v) {
                       const int x = to_int<int>(v);
                       require(x >= min, std::string(name) + " must be >= " + std::to_string(min));
                       c.*field = x;
                     },
                     [=](const RunConfig& c) { return std::to_string(c.*field); }};
  };
  auto optional_db = [](const char* name, const char* help, std::optional<double> RunConfig::*field) {
    return ConfigKey{name, help,
                     [=](RunConfig& c, const std::string& v) {
                       if (v.empty() || v == "auto") c.*field = std::nullopt;
                       else c.*field = to_double(v);
                     },
                     [=](const RunConfig& c) { return (c.*field) ? fmt(*(c.*field)) : std::string("auto"); }};
  };
  auto positive = [](double x) { return x > 0.0; };

  static const std::vector<ConfigKey> keys{
      {"experiment", "detect-distance | coverage | power-sweep | beam-pattern | solve-one",
       [](RunConfig& c, const std::string& v) {
         const auto& names = experiment_names();
         require(std::find(names.begin(), names.end(), v) != names.end(), "unknown experiment '" + v + "'");
         c.experiment = v;
       },
       [](const RunConfig& c) { return c.experiment; }},
      {"methods", "zf | joint | both (zf+joint)",
       [](RunConfig& c, const std::string& v) {
         if (v == "zf") c.methods = Methods::kZf;
         else if (v == "joint") c.methods = Methods::kJoint;
         else if (v == "both" || v == "zf+joint" || v == "joint+zf") c.methods = Methods::kBoth;
         else throw std::invalid_argument("unknown methods '" + v + "'");
       },
       [](const RunConfig& c) {
         return std::string(c.methods == Methods::kZf ? "zf" : c.methods == Methods::kJoint ? "joint" : "both");
       }},
      real("total_power_dbm", "total transmit power P [dBm]", &RunConfig::total_power_dbm),
      real("carrier_ghz", "carrier frequency [GHz]", &RunConfig::carrier_ghz, positive, "> 0"),
      real("temperature_k", "noise temperature [K]", &RunConfig::temperature_k, positive, "> 0"),
      real("bandwidth_mhz", "noise bandwidth [MHz]", &RunConfig::bandwidth_mhz, positive, "> 0"),
      real("noise_figure_db", "receiver noise figure [dB]", &RunConfig::noise_figure_db),
      real("eta", "backscatter efficiency in (0, 1]", &RunConfig::eta,
           [](double x) { return x > 0.0 && x <= 1.0; }, "in (0, 1]"),
      real("tag_sensitivity_dbm", "tag sensitivity [dBm]", &RunConfig::tag_sensitivity_dbm),
      real("reader_sensitivity_dbm", "reader sensitivity [dBm]", &RunConfig::reader_sensitivity_dbm),
      {"gamma_u_db", "user SINR threshold(s) [dB], comma separated",
       [](RunConfig& c, const std::string& v) {
         std::vector<double> xs;
         for (const auto& s : split_list(v)) xs.push_back(to_double(s));
         c.gamma_u_db = xs;
       },
       [](const RunConfig& c) { return join(c.gamma_u_db); }},
      optional_db("gamma_t_db", "tag SINR threshold [dB]; auto derives it from the sensitivity",
                  &RunConfig::gamma_t_db),
      optional_db("gamma_r_db", "reader SINR threshold [dB]; auto derives it from the sensitivity",
                  &RunConfig::gamma_r_db),
      {"n_antennas", "transmit antenna count(s), comma separated",
       [](RunConfig& c, const std::string& v) {
         std::vector<int> xs;
         for (const auto& s : split_list(v)) {
           xs.push_back(to_int<int>(s));
           require(xs.back() >= 1, "n_antennas must be >= 1");
         }
         c.n_antennas = xs;
       },
       [](const RunConfig& c) { return join(c.n_antennas); }},
      count("n_rx_antennas", "receive antenna count; 0 follows n_antennas", &RunConfig::n_rx_antennas, 0),
      real("antenna_spacing_wl", "element spacing [wavelengths]", &RunConfig::antenna_spacing_wl, positive, "> 0"),
      real("user_x_m", "user x [m]", &RunConfig::user_x_m),
      real("user_y_m", "user y [m]", &RunConfig::user_y_m),
      real("tag_distance_m", "tag range for power-sweep, beam-pattern and solve-one [m]",
           &RunConfig::tag_distance_m, positive, "> 0"),
      real("tag_direction_deg", "tag direction for beam-pattern and solve-one [deg]",
           &RunConfig::tag_direction_deg),
      real("angle_start_deg", "first tag direction [deg]", &RunConfig::angle_start_deg),
      real("angle_stop_deg", "last tag direction [deg]", &RunConfig::angle_stop_deg),
      real("angle_step_deg", "tag direction step [deg]", &RunConfig::angle_step_deg, positive, "> 0"),
      real("distance_low_m", "bisection lower bracket [m]", &RunConfig::distance_low_m, positive, "> 0"),
      real("distance_high_m", "bisection upper bracket [m]; 0 uses twice the no-user bound",
           &RunConfig::distance_high_m, [](double x) { return x >= 0.0; }, ">= 0"),
      real("bisect_tol_m", "bisection tolerance [m]", &RunConfig::bisect_tol_m, positive, "> 0"),
      count("prescan_points", "coarse monotonicity scan points", &RunConfig::prescan_points, 2),
      count("n_users", "sampled user positions", &RunConfig::n_users, 1),
      real("user_x_min_m", "user sampling box [m]", &RunConfig::user_x_min_m),
      real("user_x_max_m", "user sampling box [m]", &RunConfig::user_x_max_m),
      real("user_y_min_m", "user sampling box [m]", &RunConfig::user_y_min_m),
      real("user_y_max_m", "user sampling box [m]", &RunConfig::user_y_max_m),
      {"seed", "user sampling seed (mt19937_64)",
       [](RunConfig& c, const std::string& v) { c.seed = to_int<std::uint64_t>(v); },
       [](const RunConfig& c) { return std::to_string(c.seed); }},
      real("pattern_step_deg", "beam pattern grid step [deg]", &RunConfig::pattern_step_deg, positive, "> 0"),
      {"joint_objective", "sum-of-norms | total-power (beam-pattern, solve-one)",
       [](RunConfig& c, const std::string& v) {
         if (v == "sum-of-norms") c.joint_objective = ObjectiveMode::kSumOfNorms;
         else if (v == "total-power") c.joint_objective = ObjectiveMode::kTotalPower;
         else throw std::invalid_argument("unknown joint_objective '" + v + "'");
       },
       [](const RunConfig& c) { return std::string(to_string(c.joint_objective)); }},
      real("solver_tol", "conic solver tolerance", &RunConfig::solver_tol, positive, "> 0"),
      {"feasibility_shortcuts", "settle points by exact bounds before solving cones (true/false)",
       [](RunConfig& c, const std::string& v) { c.feasibility_shortcuts = to_bool(v); },
       [](const RunConfig& c) { return std::string(c.feasibility_shortcuts ? "true" : "false"); }},
      {"dump_program", "solve-one: also write the assembled cone program (true/false)",
       [](RunConfig& c, const std::string& v) { c.dump_program = to_bool(v); },
       [](const RunConfig& c) { return std::string(c.dump_program ? "true" : "false"); }},
      count("threads", "worker threads; results do not depend on it", &RunConfig::threads, 1),
      {"output_dir", "directory for CSV and metadata files",
       [](RunConfig& c, const std::string& v) {
         require(!v.empty(), "output_dir must not be empty");
         c.output_dir = v;
       },
       [](const RunConfig& c) { return c.output_dir; }},
  };
  return keys;
}

inline const ConfigKey* find_key(std::string_view name) {
  for (const auto& k : config_keys())
    if (k.name == name) return &k;
  return nullptr;
}

// Applies one assignment; line is only used for error messages.
inline void set_value(RunConfig& c, const std::string& key, const std::string& value, int line = 0) {
  const ConfigKey* k = find_key(key);
  if (!k) throw ConfigError(line, "unknown key '" + key + "'");
  try {
    k->set(c, value);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(line, key + ": " + e.what());
  } catch (const std::out_of_range& e) {
    throw ConfigError(line, key + ": value out of range");
  }
}

// Checks that involve more than one key.
inline void validate(const RunConfig& c) {
  auto fail = [](const std::string& m) { throw ConfigError(0, m); };
  if (c.angle_start_deg > c.angle_stop_deg) fail("angle_start_deg must not exceed angle_stop_deg");
  if (c.distance_high_m > 0.0 && c.distance_high_m <= c.distance_low_m)
    fail("distance_high_m must exceed distance_low_m");
  if (!(c.user_x_min_m < c.user_x_max_m) || !(c.user_y_min_m < c.user_y_max_m)) fail("empty user sampling box");
  if (std::hypot(c.user_x_m, c.user_y_m) <= 0.0) fail("user must not sit at the access point");
  if (c.experiment != "detect-distance" && (c.n_antennas.size() != 1 || c.gamma_u_db.size() != 1))
    fail(c.experiment + " takes a single n_antennas and gamma_u_db value");
  try {
    for (double g : c.gamma_u_db) c.params(g);
    for (int n : c.n_antennas) c.array(n);
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
}

inline RunConfig parse_config(std::string_view text, RunConfig base = {}) {
  std::map<std::string, int> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = detail::trim(std::string_view(raw).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "expected 'key = value'");
    const std::string key = detail::trim(std::string_view(body).substr(0, eq));
    const std::string value = detail::trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) throw ConfigError(line, "missing key");
    if (auto it = seen.find(key); it != seen.end())
      throw ConfigError(line, "duplicate key '" + key + "' (first set on line " + std::to_string(it->second) + ")");
    seen[key] = line;
    set_value(base, key, value, line);
  }
  validate(base);
  return base;
}

// Every key, one per line, in table order. Parsing the result reproduces c.
inline std::string serialize(const RunConfig& c) {
  std::string out;
  for (const auto& k : config_keys()) out += k.name + " = " + k.get(c) + "\n";
  return out;
}

}  // namespace isacbf::cli
