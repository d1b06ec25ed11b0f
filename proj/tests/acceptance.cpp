// Acceptance run: one PASS/FAIL line per headline criterion, followed by the
// numbers behind it. Exit status is 0 only if every line passes.
//
//   acceptance [output_dir]

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <thread>

#include "isacbf/cli/config.hpp"
#include "isacbf/cli/run.hpp"
#include "test_support.hpp"
#include "zf_grid_oracle.hpp"

using namespace isacbf;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
  std::printf("%s  %-20s %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  failures += !ok;
}

std::string f(double v, int prec = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, v);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

cli::RunResult run_to(cli::RunConfig c, const fs::path& dir, int threads) {
  c.output_dir = dir.string();
  c.threads = threads;
  return cli::run(c);
}

// method, n, gamma_u_db -> distance per angle, ascending angle.
using DetectionTable = std::map<std::tuple<std::string, int, double>, std::map<double, double>>;

DetectionTable load_detection(const fs::path& p) {
  DetectionTable t;
  for (const auto& r : read_csv(p))
    t[{r[0], std::stoi(r[1]), std::stod(r[2])}][std::stod(r[3])] = std::stod(r[4]);
  return t;
}

double tag_only_bound(const SystemParams& p, int n) {
  const double lambda = 299792458.0 / 2.4e9;
  return lambda / (4 * std::numbers::pi) * std::sqrt(n * p.total_power / dbm_to_watt(-25.5));
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path root = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "isacbf_acceptance";
  fs::remove_all(root);
  const int hw = std::max(1u, std::thread::hardware_concurrency());
  const int par = std::max(4, hw);
  const SystemParams p0 = test::default_params(0.0);

  // Detection sweeps over the full angle grid.
  cli::RunConfig det;
  det.experiment = "detect-distance";
  det.n_antennas = {2, 4, 8};
  det.gamma_u_db = {0.0, 10.0};
  const auto det_run = run_to(det, root / "detect_par", par);
  const DetectionTable dt = load_detection(root / "detect_par" / "detection.csv");

  {
    const auto& z = dt.at({"zf", 4, 0.0});
    const auto& j = dt.at({"joint", 4, 0.0});
    double worst = 1e300;
    int strict = 0;
    for (const auto& [a, dz] : z) {
      worst = std::min(worst, j.at(a) - dz);
      strict += j.at(a) > dz + 0.02;
    }
    const bool ok = worst >= -0.02 && strict >= 0.25 * static_cast<double>(z.size());
    report(ok, "dominance", "min(d_joint - d_zf) = " + f(worst) + " m, strictly better at " + std::to_string(strict) +
                                "/" + std::to_string(z.size()) + " angles (need >= 25%)");
  }
  {
    const auto& z = dt.at({"zf", 4, 10.0});
    const auto& j = dt.at({"joint", 4, 10.0});
    double diff = 0.0, mz = 0.0;
    for (const auto& [a, dz] : z) {
      diff += std::abs(j.at(a) - dz);
      mz += dz;
    }
    const double rel = diff / mz;
    report(rel <= 0.05, "high_sinr_parity", "mean|d_joint - d_zf| / mean d_zf = " + f(rel) + " at 10 dB (limit 0.05)");
  }
  {
    bool ok = true;
    std::string detail;
    for (const char* m : {"zf", "joint"}) {
      const double d2 = dt.at({m, 2, 0.0}).at(90.0);
      const double d4 = dt.at({m, 4, 0.0}).at(90.0);
      const double d8 = dt.at({m, 8, 0.0}).at(90.0);
      ok = ok && d8 > d4 && d4 > d2;
      detail += std::string(m) + " " + f(d2) + "/" + f(d4) + "/" + f(d8) + " m; ";
    }
    const double u4 = upper_bound_distance(p0, test::array_n(4));
    const double u8 = upper_bound_distance(p0, test::array_n(8));
    const bool tag_limited = std::abs(u4 - tag_only_bound(p0, 4)) < 1e-6 && std::abs(u8 - tag_only_bound(p0, 8)) < 1e-6;
    const double ratio = u8 / u4;
    ok = ok && tag_limited && std::abs(ratio / std::sqrt(2.0) - 1.0) <= 0.02;
    report(ok, "antenna_scaling",
           detail + "bound ratio N8/N4 = " + f(ratio, 6) + (tag_limited ? " (tag-limited)" : " (not tag-limited)"));
  }
  {
    bool ok = true;
    std::string detail;
    for (const char* m : {"zf", "joint"}) {
      const auto& t = dt.at({m, 4, 0.0});
      double mx = 0.0;
      for (const auto& [a, d] : t) mx = std::max(mx, d);
      ok = ok && t.at(135.0) <= 0.8 * mx;
      detail += std::string(m) + " d(135) = " + f(t.at(135.0)) + " m vs max " + f(mx) + " m; ";
    }
    report(ok, "interference_dip", detail);
  }
  {
    const DetectionResult r =
        detection_distance(std::numbers::pi / 2, std::nullopt, MethodKind::kJointSocp, p0, test::array_n(4));
    const double cf = tag_only_bound(p0, 4);
    report(std::abs(r.distance - cf) <= 0.05 && r.status == DetectionStatus::kOk, "upper_bound_value",
           "no-user distance " + f(r.distance, 6) + " m, closed form " + f(cf, 6) + " m (tol 0.05)");
  }
  {
    test::SceneGenerator gen(2024);
    int done = 0, bad = 0, feasible = 0;
    double worst_cells = 0.0;
    while (done < 100) {
      const auto s = gen.next();
      if (gram_condition(s.channels.h_t, s.channels.h_u) > kZfMaxCondition) continue;
      ++done;
      const PowerGains g = power_gains(s.channels, zf_directions(s.channels.h_t, s.channels.h_u));
      const PowerAllocation lp = power_allocation(g, s.params);
      const test::GridResult grid = test::grid_search(g, s.params, 2000);
      const double h = s.params.total_power / 1999;
      const double cell = test::rounding_slack(g, s.params, h);
      feasible += lp.feasible;
      if (grid.found) {
        const double gap = grid.best - lp.total();
        bad += !lp.feasible || gap < -1e-12 || gap > cell;
        if (lp.feasible) worst_cells = std::max(worst_cells, gap / cell);
      } else if (lp.feasible) {
        bad += lp.total() < s.params.total_power - cell;
      }
    }
    report(bad == 0, "lp_oracle",
           std::to_string(done) + " scenes (" + std::to_string(feasible) + " feasible), " + std::to_string(bad) +
               " outside one grid cell, worst gap " + f(worst_cells, 3) + " cells");
  }
  {
    test::SceneGenerator gen(99);
    int optimal = 0, violations = 0, over = 0, worse = 0, compared = 0;
    double worst_v = 0.0;
    for (int k = 0; k < 200; ++k) {
      const auto s = gen.next();
      const DesignResult j = design_scene(s.channels, MethodKind::kJointSocp, s.params);
      if (j.status != "optimal") continue;
      ++optimal;
      const double v = worst_violation(evaluate(s.channels, *j.beams, s.params), s.params);
      worst_v = std::max(worst_v, v);
      violations += v > 1e-6;
      over += j.report.power_tx > s.params.total_power * (1 + 1e-6);
      const DesignResult z = design_scene(s.channels, MethodKind::kZeroForcing, s.params);
      if (z.beams) {
        ++compared;
        const double oz = z.beams->f_t.norm() + z.beams->f_u.norm();
        worse += j.beams->f_t.norm() + j.beams->f_u.norm() > oz * (1 + 1e-6);
      }
    }
    report(optimal > 0 && violations == 0 && over == 0 && worse == 0, "socp_audit",
           std::to_string(optimal) + " optimal of 200, worst relative violation " + f(worst_v, 3) + ", " +
               std::to_string(over) + " over budget, " + std::to_string(worse) + "/" + std::to_string(compared) +
               " worse than zf");
  }
  const fs::path pat_dir = root / "pattern_par";
  {
    test::SceneGenerator gen(7);
    int checked = 0, bad = 0;
    double worst = 0.0;
    for (int k = 0; k < 500; ++k) {
      const auto s = gen.next();
      const auto& ch = s.channels;
      if (gram_condition(ch.h_t, ch.h_u) > kZfMaxCondition) continue;
      const ZfDirections d = zf_directions(ch.h_t, ch.h_u);
      const double a = std::abs(ch.h_u.dot(d.f_bar_t)) / ch.h_u.norm();
      const double b = std::abs(ch.h_t.dot(d.f_bar_u)) / ch.h_t.norm();
      worst = std::max({worst, a, b});
      bad += a > 1e-9 || b > 1e-9;
      ++checked;
    }
    cli::RunConfig pc;
    pc.experiment = "beam-pattern";
    pc.n_antennas = {8};
    run_to(pc, pat_dir, par);
    std::map<std::string, std::map<double, double>> pat;
    for (const auto& r : read_csv(pat_dir / "pattern_zf.csv")) pat[r[0]][std::stod(r[1])] = std::stod(r[2]);
    auto peak = [](const std::map<double, double>& m) {
      double x = -1e300;
      for (const auto& [a, v] : m) x = std::max(x, v);
      return x;
    };
    const double dt_ = peak(pat["sensing"]) - pat["sensing"].at(135.0);
    const double du = peak(pat["communication"]) - pat["communication"].at(90.0);
    report(bad == 0 && checked > 0 && dt_ >= 60.0 && du >= 60.0, "zf_nulls",
           std::to_string(checked) + " scenes, worst normalized leakage " + f(worst, 3) +
               "; N=8 pattern depth sensing@user " + f(dt_) + " dB, communication@tag " + f(du) + " dB");
  }
  const fs::path pow_dir = root / "power_par";
  cli::RunConfig pw;
  pw.experiment = "power-sweep";
  pw.angle_start_deg = 90.0;
  pw.angle_stop_deg = 135.0;
  {
    run_to(pw, pow_dir, par);
    bool ok = true;
    std::string detail;
    std::map<std::string, std::vector<std::pair<double, std::string>>> series;
    for (const auto& r : read_csv(pow_dir / "power.csv")) series[r[0]].emplace_back(std::stod(r[1]), r[2]);
    for (const char* m : {"zf", "joint"}) {
      double prev = 0.0;
      std::string drops;
      detail += std::string(m) + ":";
      for (const auto& [a, cell] : series[m]) {
        if (cell.empty()) {
          detail += " " + f(a, 3) + "=inf";
          break;
        }
        const double v = std::stod(cell);
        detail += " " + f(a, 3) + "=" + f(v, 3);
        if (v < prev) {
          ok = false;
          drops += " " + f(a, 3);
        }
        prev = v;
      }
      if (!drops.empty()) detail += " (drops at" + drops + ")";
      detail += "; ";
    }
    report(ok, "power_sweep_trend", detail);
  }
  const fs::path cov_dir = root / "coverage_par";
  {
    cli::RunConfig cc;
    cc.experiment = "coverage";
    const auto r = run_to(cc, cov_dir, par);
    std::map<std::string, double> mean;
    bool ok = r.numerical_failures == 0;
    for (const char* m : {"zf", "joint"}) {
      const auto rows = read_csv(cov_dir / (std::string("coverage_") + m + ".csv"));
      ok = ok && rows.size() == 400;
      double prev = 0.0, sum = 0.0;
      for (const auto& row : rows) {
        const double v = std::stod(row[2]);
        ok = ok && v >= 0.0 && v <= 1.0 && v >= prev;
        prev = v;
        sum += v;
      }
      mean[m] = sum / static_cast<double>(rows.size());
    }
    ok = ok && mean["joint"] >= mean["zf"];
    report(ok, "coverage_ordering",
           "mean ratio joint " + f(mean["joint"], 5) + " vs zf " + f(mean["zf"], 5) + " over 400 users, " +
               std::to_string(r.numerical_failures) + " numerical failures");
  }
  {
    // Repeat each experiment sequentially and once more in parallel; every CSV
    // must match the parallel run above byte for byte.
    cli::RunConfig pc;
    pc.experiment = "beam-pattern";
    pc.n_antennas = {8};
    cli::RunConfig cc;
    cc.experiment = "coverage";
    cc.n_users = 60;
    run_to(cc, root / "coverage_small_par", par);
    struct Case {
      cli::RunConfig c;
      fs::path ref;
      std::vector<std::string> files;
    };
    const std::vector<Case> cases{{det, root / "detect_par", {"detection.csv"}},
                                  {pw, pow_dir, {"power.csv"}},
                                  {pc, pat_dir, {"pattern_zf.csv", "pattern_joint.csv"}},
                                  {cc, root / "coverage_small_par", {"coverage_zf.csv", "coverage_joint.csv"}}};
    int compared = 0, mismatched = 0;
    std::string which;
    for (std::size_t i = 0; i < cases.size(); ++i) {
      const fs::path seq = root / ("repeat_seq_" + std::to_string(i));
      const fs::path again = root / ("repeat_par_" + std::to_string(i));
      run_to(cases[i].c, seq, 1);
      run_to(cases[i].c, again, par);
      for (const auto& name : cases[i].files) {
        const std::string ref = slurp(cases[i].ref / name);
        for (const fs::path& d : {seq, again}) {
          ++compared;
          if (ref.empty() || slurp(d / name) != ref) {
            ++mismatched;
            which += " " + (d / name).string();
          }
        }
      }
    }
    report(mismatched == 0, "determinism",
           std::to_string(compared) + " CSV comparisons (sequential and " + std::to_string(par) +
               "-thread reruns), " + std::to_string(mismatched) + " mismatched" + which);
  }

  std::printf("%d criteria failed; outputs in %s; detection numerical failures %d\n", failures,
              root.string().c_str(), det_run.numerical_failures);
  return failures == 0 ? 0 : 1;
}
