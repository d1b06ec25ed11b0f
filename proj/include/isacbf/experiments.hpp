#pragma once

// Detection-distance, coverage, power and beam-pattern experiments.
//
// Experiment angles are direction angles in the horizontal plane measured
// from the -y end of the array axis: 0 deg and 180 deg are the two endfire
// directions and 90 deg is boresight (+x). A target at direction phi and
// range r sits at (r sin phi, -r cos phi), so the user at (5/sqrt2, 5/sqrt2)
// is at 135 deg.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "isacbf/parallel.hpp"
#include "isacbf/scene_channel.hpp"
#include "isacbf/sinr_model.hpp"
#include "isacbf/socp_beamforming.hpp"
#include "isacbf/zf_beamforming.hpp"

namespace isacbf {

enum class MethodKind { kZeroForcing, kJointSocp };

inline const char* to_string(MethodKind m) { return m == MethodKind::kZeroForcing ? "zf" : "joint"; }

inline double deg_to_rad(double d) { return d * std::numbers::pi / 180.0; }
inline double rad_to_deg(double r) { return r * 180.0 / std::numbers::pi; }

inline Position position_at(double direction, double range) {
  return {range * std::sin(direction), -range * std::cos(direction)};
}

inline double direction_of(const Position& p) { return std::atan2(p.x, -p.y); }

// Evenly spaced degrees start, start+step, ..., up to stop inclusive.
inline std::vector<double> degree_grid(double start, double stop, double step) {
  std::vector<double> out;
  const long n = std::lround(std::floor((stop - start) / step + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(start + step * static_cast<double>(i));
  return out;
}

enum class FeasibilityFlag { kOk, kIllConditioned, kInvalidScene, kNumericalFailure };

struct Feasibility {
  bool feasible = false;
  FeasibilityFlag flag = FeasibilityFlag::kOk;
};

struct FeasibilityOptions {
  // Resolve a point without a cone program when an exact argument settles it:
  // the no-user bound failing implies infeasible, and a feasible zero-forcing
  // design is a feasible point of the joint problem.
  bool shortcuts = true;
  ConicSettings solver{};
};

// Full-power matched-filter sensing beam with no communication beam: the best
// any design can do for the tag and reader links at this range.
inline bool no_user_feasible(const ArrayConfig& array, double range, const SystemParams& p) {
  const CVector h_t = los_channel(array, position_at(std::numbers::pi / 2, range));
  CVector h_rx = h_t;
  if (array.n_rx != array.n_tx) {
    ArrayConfig rx = array;
    rx.n_tx = rx.n_rx;
    h_rx = los_channel(rx, position_at(std::numbers::pi / 2, range));
  }
  BeamPair beams{std::sqrt(p.total_power) * h_t.normalized(), CVector::Zero(h_t.size())};
  const Combiner w(h_rx);
  return sinr_tag(beams, h_t, p.sigma2_tag) >= p.gamma_tag &&
         sinr_reader(beams, h_t, h_rx, w, p.eta, p.sigma2_tag, p.sigma2_reader) >= p.gamma_reader;
}

inline Feasibility feasible_zf(const ChannelSet& ch, const SystemParams& p) {
  try {
    return {design_zf(ch, p).allocation.feasible, FeasibilityFlag::kOk};
  } catch (const IllConditioned&) {
    return {false, FeasibilityFlag::kIllConditioned};
  }
}

// Minimum total power of the joint design, compared against the budget.
// The uncapped program is solved first; with nearly collinear channels its
// optimum can be orders of magnitude above the budget and the iteration
// breaks down, in which case the capped program settles the question through
// its infeasibility certificate.
struct JointPower {
  FeasibilityFlag flag = FeasibilityFlag::kOk;
  std::optional<double> power;  // set iff a design within the budget exists
  bool used_cap = false;
};

inline JointPower joint_min_power(const ChannelSet& ch, const SystemParams& p, const ConicSettings& solver = {}) {
  JointOptions opt;
  opt.objective_mode = ObjectiveMode::kTotalPower;
  opt.power_cap = false;
  opt.solver = solver;
  JointPower out;
  JointSolution sol = solve_joint(ch, p, opt);
  if (sol.status == JointStatus::kNumericalFailure) {
    opt.power_cap = true;
    out.used_cap = true;
    sol = solve_joint(ch, p, opt);
  }
  switch (sol.status) {
    case JointStatus::kOptimal:
      if (sol.power <= p.total_power * (1.0 + kJointSlack)) out.power = sol.power;
      break;
    case JointStatus::kInfeasible: break;
    case JointStatus::kNumericalFailure: out.flag = FeasibilityFlag::kNumericalFailure; break;
  }
  return out;
}

inline Feasibility feasible_joint(const ChannelSet& ch, const SystemParams& p, const ConicSettings& solver = {}) {
  const JointPower jp = joint_min_power(ch, p, solver);
  return {jp.power.has_value(), jp.flag};
}

// Without a user only the tag and reader links remain.
inline Feasibility feasible_at(const ArrayConfig& array, const Position& tag, const std::optional<Position>& user,
                               MethodKind method, const SystemParams& p, const FeasibilityOptions& opt = {}) {
  if (!(tag.range() > 0.0)) return {false, FeasibilityFlag::kInvalidScene};
  if (!user) return {no_user_feasible(array, tag.range(), p), FeasibilityFlag::kOk};
  if (distance(tag, *user) < 1e-9) return {false, FeasibilityFlag::kInvalidScene};

  if (opt.shortcuts && !no_user_feasible(array, tag.range(), p)) return {false, FeasibilityFlag::kOk};
  const ChannelSet ch = make_channels(Scene{array, tag, *user});
  if (method == MethodKind::kZeroForcing) return feasible_zf(ch, p);
  if (opt.shortcuts) {
    const Feasibility zf = feasible_zf(ch, p);
    if (zf.feasible) return zf;
  }
  return feasible_joint(ch, p, opt.solver);
}

// Largest range at which the full-power matched-filter beam meets both the
// tag and reader thresholds. Independent of direction under line of sight.
inline double upper_bound_distance(const SystemParams& p, const ArrayConfig& array, double rel_tol = 1e-12) {
  double lo = 1e-3;
  if (!no_user_feasible(array, lo, p)) return 0.0;
  double hi = 1.0;
  while (no_user_feasible(array, hi, p)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) return hi;
  }
  while (hi - lo > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    (no_user_feasible(array, mid, p) ? lo : hi) = mid;
  }
  return lo;
}

struct DistanceSearch {
  double low = 0.1;     // m
  double high = 0.0;    // m; <= 0 selects twice the no-user upper bound
  double tol = 0.01;    // m
  int prescan_points = 64;
};

enum class DetectionStatus { kOk, kInfeasibleAtContact, kNonMonotone, kFeasibleAtHigh, kNumericalFailure };

inline const char* to_string(DetectionStatus s) {
  switch (s) {
    case DetectionStatus::kOk: return "ok";
    case DetectionStatus::kInfeasibleAtContact: return "infeasible_at_contact";
    case DetectionStatus::kNonMonotone: return "non_monotone";
    case DetectionStatus::kFeasibleAtHigh: return "feasible_at_high";
    case DetectionStatus::kNumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

struct DetectionResult {
  double distance = 0.0;
  DetectionStatus status = DetectionStatus::kOk;
  int ill_conditioned = 0;
  int numerical_failures = 0;
  int invalid_scenes = 0;
};

// Largest feasible tag range along one direction, to within search.tol.
// A coarse prescan checks that feasibility switches off once; bisection then
// refines the last feasible/infeasible pair. A non-monotone prescan refines
// after the farthest feasible grid point instead and is flagged.
inline DetectionResult detection_distance(double direction, const std::optional<Position>& user, MethodKind method,
                                          const SystemParams& p, const ArrayConfig& array,
                                          const DistanceSearch& search = {}, const FeasibilityOptions& opt = {}) {
  DetectionResult res;
  const double high = search.high > 0.0 ? search.high : 2.0 * upper_bound_distance(p, array);
  auto check = [&](double d) {
    const Feasibility f = feasible_at(array, position_at(direction, d), user, method, p, opt);
    switch (f.flag) {
      case FeasibilityFlag::kIllConditioned: ++res.ill_conditioned; break;
      case FeasibilityFlag::kNumericalFailure: ++res.numerical_failures; break;
      case FeasibilityFlag::kInvalidScene: ++res.invalid_scenes; break;
      case FeasibilityFlag::kOk: break;
    }
    return f.feasible;
  };
  auto finish = [&](DetectionResult r) {
    if (r.numerical_failures > 0) r.status = DetectionStatus::kNumericalFailure;
    return r;
  };

  const int k = std::max(search.prescan_points, 2);
  if (!(high > search.low)) {
    res.status = DetectionStatus::kInfeasibleAtContact;
    return finish(res);
  }
  std::vector<double> grid(k);
  std::vector<char> ok(k);
  for (int i = 0; i < k; ++i) {
    grid[i] = search.low + (high - search.low) * i / (k - 1);
    ok[i] = check(grid[i]);
  }
  if (!ok[0]) {
    res.distance = 0.0;
    res.status = DetectionStatus::kInfeasibleAtContact;
    return finish(res);
  }
  int last = k - 1;
  while (!ok[last]) --last;
  const int first_bad = static_cast<int>(std::find(ok.begin(), ok.end(), 0) - ok.begin());
  if (last == k - 1) {
    res.distance = high;
    res.status = DetectionStatus::kFeasibleAtHigh;
    return finish(res);
  }
  res.status = first_bad == last + 1 ? DetectionStatus::kOk : DetectionStatus::kNonMonotone;
  double a = grid[last];
  double b = grid[last + 1];
  while (b - a > search.tol) {
    const double mid = 0.5 * (a + b);
    (check(mid) ? a : b) = mid;
  }
  res.distance = a;
  return finish(res);
}

inline std::vector<DetectionResult> detection_sweep(const std::vector<double>& directions,
                                                    const std::optional<Position>& user, MethodKind method,
                                                    const SystemParams& p, const ArrayConfig& array,
                                                    const DistanceSearch& search = {},
                                                    const FeasibilityOptions& opt = {}, int threads = 1) {
  std::vector<DetectionResult> out(directions.size());
  parallel_for(directions.size(), threads, [&](std::size_t i) {
    out[i] = detection_distance(directions[i], user, method, p, array, search, opt);
  });
  return out;
}

// Portable uniform sampling on top of mt19937_64: the top 53 bits of each
// draw become a double in [0, 1).
class UniformSampler {
 public:
  explicit UniformSampler(std::uint64_t seed) : gen_(seed) {}
  double next(double lo, double hi) {
    const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::mt19937_64 gen_;
};

struct CoverageSpec {
  int n_users = 400;
  double x_min = 0.0;
  double x_max = 20.0;
  double y_min = -20.0;
  double y_max = 20.0;
  std::uint64_t seed = 1;
  std::vector<double> tag_directions;  // radians
};

inline std::vector<Position> sample_users(const CoverageSpec& spec) {
  UniformSampler rng(spec.seed);
  std::vector<Position> users;
  users.reserve(spec.n_users);
  while (static_cast<int>(users.size()) < spec.n_users) {
    Position u;
    u.x = rng.next(spec.x_min, spec.x_max);
    u.y = rng.next(spec.y_min, spec.y_max);
    if (u.range() > 0.0) users.push_back(u);
  }
  return users;
}

struct UserCoverage {
  Position user;
  double ratio = 0.0;
  int numerical_failures = 0;
};

struct CoverageResult {
  double upper_bound = 0.0;
  std::vector<UserCoverage> users;  // ascending by ratio
  int numerical_failures = 0;
};

// Per sampled user: mean over tag directions of detection distance over the
// no-user bound, clamped to [0, 1].
inline CoverageResult coverage_cdf(const CoverageSpec& spec, MethodKind method, const SystemParams& p,
                                   const ArrayConfig& array, const DistanceSearch& search = {},
                                   const FeasibilityOptions& opt = {}, int threads = 1) {
  CoverageResult out;
  out.upper_bound = upper_bound_distance(p, array);
  const auto users = sample_users(spec);
  out.users.resize(users.size());
  DistanceSearch s = search;
  if (s.high <= 0.0) s.high = 2.0 * out.upper_bound;
  parallel_for(users.size(), threads, [&](std::size_t i) {
    UserCoverage uc;
    uc.user = users[i];
    double sum = 0.0;
    for (double dir : spec.tag_directions) {
      const DetectionResult r = detection_distance(dir, users[i], method, p, array, s, opt);
      uc.numerical_failures += r.numerical_failures;
      sum += out.upper_bound > 0.0 ? std::clamp(r.distance / out.upper_bound, 0.0, 1.0) : 0.0;
    }
    uc.ratio = spec.tag_directions.empty() ? 0.0 : sum / static_cast<double>(spec.tag_directions.size());
    out.users[i] = uc;
  });
  std::stable_sort(out.users.begin(), out.users.end(),
                   [](const UserCoverage& a, const UserCoverage& b) { return a.ratio < b.ratio; });
  for (const auto& u : out.users) out.numerical_failures += u.numerical_failures;
  return out;
}

struct PowerPoint {
  double direction = 0.0;
  std::optional<double> power;  // empty when no design meets the budget
  std::string status;
};

// Minimum total power of one method for a single scene, or empty.
inline PowerPoint min_power(const ChannelSet& ch, MethodKind method, const SystemParams& p,
                            const ConicSettings& solver = {}) {
  PowerPoint pt;
  if (method == MethodKind::kZeroForcing) {
    try {
      const ZfDesign d = design_zf(ch, p);
      pt.status = d.allocation.feasible ? "ok" : "infeasible";
      if (d.allocation.feasible) pt.power = d.allocation.total();
    } catch (const IllConditioned&) {
      pt.status = "ill_conditioned";
    }
    return pt;
  }
  const JointPower jp = joint_min_power(ch, p, solver);
  pt.power = jp.power;
  if (jp.flag == FeasibilityFlag::kNumericalFailure) pt.status = "numerical_failure";
  else pt.status = jp.power ? "ok" : "infeasible";
  return pt;
}

inline std::vector<PowerPoint> power_sweep(const std::vector<double>& directions, double tag_distance,
                                           const Position& user, MethodKind method, const SystemParams& p,
                                           const ArrayConfig& array, const ConicSettings& solver = {},
                                           int threads = 1) {
  std::vector<PowerPoint> out(directions.size());
  parallel_for(directions.size(), threads, [&](std::size_t i) {
    const Position tag = position_at(directions[i], tag_distance);
    PowerPoint pt;
    if (distance(tag, user) < 1e-9) {
      pt.status = "invalid_scene";
    } else {
      pt = min_power(make_channels(Scene{array, tag, user}), method, p, solver);
    }
    pt.direction = directions[i];
    out[i] = pt;
  });
  return out;
}

inline constexpr double kPatternFloorDb = -200.0;

// Array factor 10 log10 |a(phi)^H f|^2 per direction, path loss excluded.
inline std::vector<double> beam_pattern(const CVector& f, const std::vector<double>& directions,
                                        const ArrayConfig& array) {
  std::vector<double> out;
  out.reserve(directions.size());
  for (double dir : directions) {
    const CVector a = steering_vector_n(static_cast<int>(f.size()), array.spacing, dir - std::numbers::pi / 2);
    const double g = std::norm(a.dot(f));
    out.push_back(g > 0.0 ? std::max(kPatternFloorDb, 10.0 * std::log10(g)) : kPatternFloorDb);
  }
  return out;
}

// A solved scene: status, beams, link SINRs and powers for one method.
struct DesignResult {
  MethodKind method = MethodKind::kZeroForcing;
  std::string status;
  std::optional<BeamPair> beams;
  SinrReport report;
  double p_t = 0.0;
  double p_u = 0.0;
};

inline DesignResult design_scene(const ChannelSet& ch, MethodKind method, const SystemParams& p,
                                 ObjectiveMode mode = ObjectiveMode::kSumOfNorms, const ConicSettings& solver = {}) {
  DesignResult r;
  r.method = method;
  if (method == MethodKind::kZeroForcing) {
    try {
      const ZfDesign d = design_zf(ch, p);
      if (!d.allocation.feasible) {
        r.status = "infeasible";
        return r;
      }
      r.status = "optimal";
      r.beams = d.beams();
    } catch (const IllConditioned&) {
      r.status = "ill_conditioned";
      return r;
    }
  } else {
    JointOptions opt;
    opt.objective_mode = mode;
    opt.solver = solver;
    const JointSolution sol = solve_joint(ch, p, opt);
    r.status = to_string(sol.status);
    if (sol.status != JointStatus::kOptimal) return r;
    r.beams = sol.beams;
  }
  r.report = evaluate(ch, *r.beams, p);
  r.p_t = r.beams->f_t.squaredNorm();
  r.p_u = r.beams->f_u.squaredNorm();
  return r;
}

}  // namespace isacbf
