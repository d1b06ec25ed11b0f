#pragma once

// Runs one configured experiment and writes its CSVs plus a metadata sidecar.
// The sidecar is a valid config: its active lines are the full resolved
// configuration and everything derived is written as comments.

#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "isacbf/cli/config.hpp"
#include "isacbf/csv_output.hpp"
#include "isacbf/experiments.hpp"

#ifndef ISACBF_VERSION
#define ISACBF_VERSION "unknown"
#endif

namespace isacbf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

struct RunResult {
  int exit_code = kExitOk;
  int numerical_failures = 0;
  std::vector<std::filesystem::path> files;
};

namespace detail {

using Derived = std::vector<std::pair<std::string, std::string>>;

class Output {
 public:
  explicit Output(const std::filesystem::path& dir, RunResult& result) : dir_(dir), result_(result) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir_.string() + ": " + ec.message());
  }

  void write(const std::string& name, const std::string& content) {
    const auto path = dir_ / name;
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    os << content;
    os.close();
    if (!os) throw std::runtime_error("write failed: " + path.string());
    result_.files.push_back(path);
  }

 private:
  std::filesystem::path dir_;
  RunResult& result_;
};

inline void add_params(Derived& d, const RunConfig& c) {
  for (double g : c.gamma_u_db) {
    const SystemParams p = c.params(g);
    const std::string tag = c.gamma_u_db.size() > 1 ? "[gamma_u_db=" + csv::num(g) + "]" : "";
    d.emplace_back("total_power_w" + tag, csv::num(p.total_power));
    d.emplace_back("eta" + tag, csv::num(p.eta));
    d.emplace_back("sigma2_tag_w" + tag, csv::num(p.sigma2_tag));
    d.emplace_back("sigma2_reader_w" + tag, csv::num(p.sigma2_reader));
    d.emplace_back("sigma2_user_w" + tag, csv::num(p.sigma2_user));
    d.emplace_back("gamma_user" + tag, csv::num(p.gamma_user));
    d.emplace_back("gamma_tag" + tag, csv::num(p.gamma_tag));
    d.emplace_back("gamma_reader" + tag, csv::num(p.gamma_reader));
  }
  const SystemParams p0 = c.params(c.gamma_u_db.front());
  for (int n : c.n_antennas)
    d.emplace_back("upper_bound_m[n_antennas=" + std::to_string(n) + "]",
                   csv::num(upper_bound_distance(p0, c.array(n))));
}

inline std::string metadata(const RunConfig& c, const Derived& derived) {
  std::string out = "# isacbf run metadata; re-parses as a config for the same run\n";
  out += "# tool_version = isacbf " ISACBF_VERSION "\n";
  out += serialize(c);
  for (const auto& [k, v] : derived) out += "# " + k + " = " + v + "\n";
  return out;
}

inline FeasibilityOptions feasibility_options(const RunConfig& c) {
  FeasibilityOptions o;
  o.shortcuts = c.feasibility_shortcuts;
  o.solver = c.solver();
  return o;
}

inline DistanceSearch distance_search(const RunConfig& c) {
  DistanceSearch s;
  s.low = c.distance_low_m;
  s.high = c.distance_high_m;
  s.tol = c.bisect_tol_m;
  s.prescan_points = c.prescan_points;
  return s;
}

inline std::vector<double> to_radians(const std::vector<double>& deg) {
  std::vector<double> out;
  out.reserve(deg.size());
  for (double d : deg) out.push_back(deg_to_rad(d));
  return out;
}

inline Position user_position(const RunConfig& c) { return {c.user_x_m, c.user_y_m}; }

inline std::string complex_list(const CVector& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += csv::num(v[i].real()) + (v[i].imag() < 0 ? "-" : "+") + csv::num(std::abs(v[i].imag())) + "j";
  }
  return out;
}

inline std::string db_or_floor(double lin) { return lin > 0.0 ? csv::num(linear_to_db(lin)) : "-inf"; }

inline std::string format_design(const DesignResult& r, const SystemParams& p) {
  std::ostringstream os;
  os << "method = " << to_string(r.method) << "\n";
  os << "status = " << r.status << "\n";
  if (!r.beams) return os.str();
  os << "p_t_w = " << csv::num(r.p_t) << "\n";
  os << "p_u_w = " << csv::num(r.p_u) << "\n";
  os << "power_w = " << csv::num(r.report.power_tx) << "\n";
  os << "objective_norms = " << csv::num(r.beams->f_t.norm() + r.beams->f_u.norm()) << "\n";
  os << "sinr_tag_db = " << db_or_floor(r.report.sinr_tag) << " (threshold " << db_or_floor(p.gamma_tag) << ")\n";
  os << "sinr_reader_db = " << db_or_floor(r.report.sinr_reader) << " (threshold " << db_or_floor(p.gamma_reader)
     << ")\n";
  os << "sinr_user_db = " << db_or_floor(r.report.sinr_user) << " (threshold " << db_or_floor(p.gamma_user)
     << ")\n";
  os << "f_t = " << complex_list(r.beams->f_t) << "\n";
  os << "f_u = " << complex_list(r.beams->f_u) << "\n";
  return os.str();
}

inline void run_detection(const RunConfig& c, Output& out, Derived& d, RunResult& res) {
  const auto deg = c.angles_deg();
  const auto rad = to_radians(deg);
  const auto user = user_position(c);
  std::vector<csv::DetectionRow> rows;
  int ill = 0;
  for (MethodKind m : c.method_list())
    for (int n : c.n_antennas)
      for (double g : c.gamma_u_db) {
        const auto r = detection_sweep(rad, user, m, c.params(g), c.array(n), distance_search(c),
                                       feasibility_options(c), c.threads);
        for (std::size_t i = 0; i < r.size(); ++i) {
          rows.push_back({m, n, g, deg[i], r[i]});
          res.numerical_failures += r[i].numerical_failures;
          ill += r[i].ill_conditioned;
        }
      }
  std::ostringstream os;
  csv::write_detection(os, rows);
  out.write("detection.csv", os.str());
  d.emplace_back("angles", std::to_string(deg.size()));
  d.emplace_back("ill_conditioned_points", std::to_string(ill));
  d.emplace_back("files", "detection.csv");
}

inline void run_coverage(const RunConfig& c, Output& out, Derived& d, RunResult& res) {
  CoverageSpec spec;
  spec.n_users = c.n_users;
  spec.x_min = c.user_x_min_m;
  spec.x_max = c.user_x_max_m;
  spec.y_min = c.user_y_min_m;
  spec.y_max = c.user_y_max_m;
  spec.seed = c.seed;
  spec.tag_directions = to_radians(c.angles_deg());
  std::string files;
  for (MethodKind m : c.method_list()) {
    const auto cov = coverage_cdf(spec, m, c.params(c.gamma_u_db.front()), c.array(c.n_antennas.front()),
                                  distance_search(c), feasibility_options(c), c.threads);
    res.numerical_failures += cov.numerical_failures;
    double mean = 0.0;
    for (const auto& u : cov.users) mean += u.ratio;
    mean /= static_cast<double>(cov.users.size());
    const std::string name = std::string("coverage_") + to_string(m) + ".csv";
    std::ostringstream os;
    csv::write_coverage(os, cov);
    out.write(name, os.str());
    d.emplace_back(std::string("mean_coverage[") + to_string(m) + "]", csv::num(mean));
    files += (files.empty() ? "" : ", ") + name;
  }
  d.emplace_back("rng", "mt19937_64, top 53 bits to [0,1)");
  d.emplace_back("files", files);
}

inline void run_power(const RunConfig& c, Output& out, Derived& d, RunResult& res) {
  const auto deg = c.angles_deg();
  const auto rad = to_radians(deg);
  std::ostringstream os;
  bool header = true;
  for (MethodKind m : c.method_list()) {
    const auto pts = power_sweep(rad, c.tag_distance_m, user_position(c), m, c.params(c.gamma_u_db.front()),
                                 c.array(c.n_antennas.front()), c.solver(), c.threads);
    for (const auto& p : pts) res.numerical_failures += p.status == "numerical_failure";
    csv::write_power(os, m, deg, pts, header);
    header = false;
  }
  out.write("power.csv", os.str());
  d.emplace_back("angles", std::to_string(deg.size()));
  d.emplace_back("files", "power.csv");
}

inline DesignResult design_configured(const RunConfig& c, MethodKind m, const ChannelSet& ch) {
  return design_scene(ch, m, c.params(c.gamma_u_db.front()), c.joint_objective, c.solver());
}

inline ChannelSet configured_channels(const RunConfig& c) {
  const Scene scene{c.array(c.n_antennas.front()), position_at(deg_to_rad(c.tag_direction_deg), c.tag_distance_m),
                    user_position(c)};
  if (distance(scene.tag_pos, scene.user_pos) < 1e-9)
    throw ConfigError(0, "tag and user positions coincide");
  return make_channels(scene);
}

inline void run_pattern(const RunConfig& c, Output& out, Derived& d, RunResult& res) {
  const ChannelSet ch = configured_channels(c);
  const ArrayConfig array = c.array(c.n_antennas.front());
  const auto deg = degree_grid(0.0, 180.0, c.pattern_step_deg);
  const auto rad = to_radians(deg);
  std::string files;
  for (MethodKind m : c.method_list()) {
    const DesignResult r = design_configured(c, m, ch);
    res.numerical_failures += r.status == "numerical_failure";
    const std::string name = std::string("pattern_") + to_string(m) + ".csv";
    std::ostringstream os;
    if (r.beams) {
      csv::write_pattern(os, deg, beam_pattern(r.beams->f_t, rad, array), beam_pattern(r.beams->f_u, rad, array));
    } else {
      os << csv::kPatternHeader << '\n';
    }
    out.write(name, os.str());
    d.emplace_back(std::string("status[") + to_string(m) + "]", r.status);
    files += (files.empty() ? "" : ", ") + name;
  }
  d.emplace_back("files", files);
}

inline void run_solve_one(const RunConfig& c, Output& out, Derived& d, RunResult& res, std::ostream* echo) {
  const ChannelSet ch = configured_channels(c);
  const SystemParams p = c.params(c.gamma_u_db.front());
  std::string text;
  std::string files = "solve_one.txt";
  for (MethodKind m : c.method_list()) {
    const DesignResult r = design_configured(c, m, ch);
    res.numerical_failures += r.status == "numerical_failure";
    text += format_design(r, p) + "\n";
    if (c.dump_program && m == MethodKind::kJointSocp) {
      JointOptions opt;
      opt.objective_mode = c.joint_objective;
      out.write("program.txt", dump(assemble_joint(ch, Combiner(ch.h_t_rx), p, opt)));
      files += ", program.txt";
    }
  }
  out.write("solve_one.txt", text);
  if (echo) *echo << text;
  d.emplace_back("files", files);
}

}  // namespace detail

// Throws ConfigError for configuration problems and std::runtime_error for
// I/O failures. Numerical failures are reported through the exit code after
// all partial results have been written.
inline RunResult run(const RunConfig& c, std::ostream* echo = nullptr) {
  validate(c);
  RunResult res;
  detail::Output out(c.output_dir, res);
  detail::Derived derived;
  detail::add_params(derived, c);
  std::string stem;
  if (c.experiment == "detect-distance") {
    detail::run_detection(c, out, derived, res);
    stem = "detection";
  } else if (c.experiment == "coverage") {
    detail::run_coverage(c, out, derived, res);
    stem = "coverage";
  } else if (c.experiment == "power-sweep") {
    detail::run_power(c, out, derived, res);
    stem = "power";
  } else if (c.experiment == "beam-pattern") {
    detail::run_pattern(c, out, derived, res);
    stem = "pattern";
  } else if (c.experiment == "solve-one") {
    detail::run_solve_one(c, out, derived, res, echo);
    stem = "solve_one";
  } else {
    throw ConfigError(0, "unknown experiment '" + c.experiment + "'");
  }
  derived.emplace_back("numerical_failures", std::to_string(res.numerical_failures));
  out.write(stem + ".meta", detail::metadata(c, derived));
  res.exit_code = res.numerical_failures > 0 ? kExitNumerical : kExitOk;
  return res;
}

}  // namespace isacbf::cli
