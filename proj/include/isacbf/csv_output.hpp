#pragma once

// CSV writers for the experiment outputs. Headers are fixed; numbers are
// written in shortest round-trip form so reruns are byte-identical.

#include <charconv>
#include <ostream>
#include <string>
#include <vector>

#include "isacbf/experiments.hpp"

namespace isacbf::csv {

inline constexpr const char* kDetectionHeader = "method,n_antennas,gamma_u_db,angle_deg,distance_m,status";
inline constexpr const char* kCoverageHeader = "user_x,user_y,coverage_ratio";
inline constexpr const char* kPowerHeader = "method,angle_deg,power_w,status";
inline constexpr const char* kPatternHeader = "beam,angle_deg,gain_db";

inline std::string num(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

struct DetectionRow {
  MethodKind method;
  int n_antennas;
  double gamma_u_db;
  double angle_deg;
  DetectionResult result;
};

inline void write_detection(std::ostream& os, const std::vector<DetectionRow>& rows) {
  os << kDetectionHeader << '\n';
  for (const auto& r : rows)
    os << to_string(r.method) << ',' << r.n_antennas << ',' << num(r.gamma_u_db) << ',' << num(r.angle_deg) << ','
       << num(r.result.distance) << ',' << to_string(r.result.status) << '\n';
}

inline void write_coverage(std::ostream& os, const CoverageResult& cov) {
  os << kCoverageHeader << '\n';
  for (const auto& u : cov.users) os << num(u.user.x) << ',' << num(u.user.y) << ',' << num(u.ratio) << '\n';
}

// Infeasible angles get an empty power cell; the status says why.
inline void write_power(std::ostream& os, MethodKind method, const std::vector<double>& angles_deg,
                        const std::vector<PowerPoint>& points, bool header = true) {
  if (header) os << kPowerHeader << '\n';
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    os << to_string(method) << ',' << num(angles_deg[i]) << ',' << (p.power ? num(*p.power) : "") << ',' << p.status
       << '\n';
  }
}

inline void write_pattern(std::ostream& os, const std::vector<double>& angles_deg, const std::vector<double>& sensing,
                          const std::vector<double>& communication) {
  os << kPatternHeader << '\n';
  for (std::size_t i = 0; i < angles_deg.size(); ++i) os << "sensing," << num(angles_deg[i]) << ',' << num(sensing[i]) << '\n';
  for (std::size_t i = 0; i < angles_deg.size(); ++i)
    os << "communication," << num(angles_deg[i]) << ',' << num(communication[i]) << '\n';
}

}  // namespace isacbf::csv
