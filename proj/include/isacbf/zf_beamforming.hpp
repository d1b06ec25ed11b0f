#pragma once

// Zero-forcing beam directions and the two-variable power allocation LP.

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "isacbf/scene_channel.hpp"
#include "isacbf/sinr_model.hpp"

namespace isacbf {

inline constexpr double kZfMaxCondition = 1e12;

class IllConditioned : public std::runtime_error {
 public:
  explicit IllConditioned(double condition)
      : std::runtime_error("zero-forcing: channel Gram matrix is ill-conditioned (cond ~ " +
                           std::to_string(condition) + ")"),
        condition_(condition) {}

  double condition() const { return condition_; }

 private:
  double condition_;
};

struct ZfDirections {
  CVector f_bar_t;  // unit norm, nulls h_u
  CVector f_bar_u;  // unit norm, nulls h_t
};

// Condition number of the 2x2 Gram matrix [h_t h_u]^H [h_t h_u].
inline double gram_condition(const CVector& h_t, const CVector& h_u) {
  const double a = h_t.squaredNorm();
  const double d = h_u.squaredNorm();
  const double b2 = std::norm(h_t.dot(h_u));
  const double half_tr = 0.5 * (a + d);
  const double disc = std::sqrt(std::max(0.0, 0.25 * (a - d) * (a - d) + b2));
  const double lmax = half_tr + disc;
  // det / lmax is the accurate way to get the small eigenvalue.
  const double lmin = (a * d - b2) / lmax;
  if (!(lmin > 0.0)) return std::numeric_limits<double>::infinity();
  return lmax / lmin;
}

namespace detail {

// Component of v orthogonal to the unit vector u, with one reorthogonalization
// pass so the null holds to working precision.
inline CVector project_out(const CVector& v, const CVector& u) {
  CVector r = v - u * u.dot(v);
  r -= u * u.dot(r);
  return r;
}

}  // namespace detail

// Normalized columns of H (H^H H)^{-1}, H = [h_t, h_u]. Column k of the
// pseudo-inverse is a positive multiple of the other channel's orthogonal
// complement projection applied to h_k, which is what is computed here.
inline ZfDirections zf_directions(const CVector& h_t, const CVector& h_u) {
  if (h_t.size() != h_u.size()) throw std::invalid_argument("zf_directions: channel length mismatch");
  const double cond = gram_condition(h_t, h_u);
  if (!(cond <= kZfMaxCondition)) throw IllConditioned(cond);
  const CVector u_t = h_t.normalized();
  const CVector u_u = h_u.normalized();
  return {detail::project_out(h_t, u_u).normalized(), detail::project_out(h_u, u_t).normalized()};
}

struct PowerGains {
  double tag_sensing = 0.0;   // |h_t^H fbar_t|^2
  double tag_comm = 0.0;      // |h_t^H fbar_u|^2
  double user_comm = 0.0;     // |h_u^H fbar_u|^2
  double user_sensing = 0.0;  // |h_u^H fbar_t|^2
  double tag_user = 0.0;      // |h_tu|^2
  double combiner = 0.0;      // |w^H h_t|^2 on the receive side
};

inline PowerGains power_gains(const ChannelSet& ch, const ZfDirections& dirs) {
  PowerGains g;
  g.tag_sensing = gain(ch.h_t, dirs.f_bar_t);
  g.tag_comm = gain(ch.h_t, dirs.f_bar_u);
  g.user_comm = gain(ch.h_u, dirs.f_bar_u);
  g.user_sensing = gain(ch.h_u, dirs.f_bar_t);
  g.tag_user = std::norm(ch.h_tu);
  g.combiner = ch.h_t_rx.squaredNorm();
  return g;
}

struct PowerAllocation {
  double p_t = 0.0;
  double p_u = 0.0;
  bool feasible = false;

  double total() const { return p_t + p_u; }
};

// a_t * P_t + a_u * P_u >= b
struct HalfPlane {
  double a_t;
  double a_u;
  double b;

  double slack(double p_t, double p_u) const { return a_t * p_t + a_u * p_u - b; }
  double scale(double p_t, double p_u) const {
    return std::abs(a_t * p_t) + std::abs(a_u * p_u) + std::abs(b);
  }
};

// The three SINR constraints cross-multiplied into half-planes, in the order
// tag, reader, user.
inline std::array<HalfPlane, 3> sinr_half_planes(const PowerGains& g, const SystemParams& p) {
  const double c = p.eta * g.combiner;
  const double bs = p.eta * g.tag_user;
  return {{
      {g.tag_sensing, -p.gamma_tag * g.tag_comm, p.gamma_tag * p.sigma2_tag},
      {c * g.tag_sensing, -p.gamma_reader * c * g.tag_comm,
       p.gamma_reader * (c * p.sigma2_tag + p.sigma2_reader)},
      {-p.gamma_user * (g.user_sensing + bs * g.tag_sensing), g.user_comm - p.gamma_user * bs * g.tag_comm,
       p.gamma_user * (bs * p.sigma2_tag + p.sigma2_user)},
  }};
}

// Minimizes P_t + P_u over the polygon cut out by the SINR half-planes, the
// power cap and the nonnegative quadrant. The optimum of a bounded two-variable
// LP sits on a vertex, so every pairwise boundary intersection is tried.
// Equal-objective vertices resolve toward larger P_u.
inline PowerAllocation power_allocation(const PowerGains& g, const SystemParams& p) {
  const auto sinr = sinr_half_planes(g, p);
  const std::array<HalfPlane, 6> planes{sinr[0], sinr[1], sinr[2], HalfPlane{-1.0, -1.0, -p.total_power},
                                        HalfPlane{1.0, 0.0, 0.0}, HalfPlane{0.0, 1.0, 0.0}};
  constexpr double kFeasTol = 1e-12;
  constexpr double kTieTol = 1e-12;

  PowerAllocation best;
  for (std::size_t i = 0; i < planes.size(); ++i) {
    for (std::size_t j = i + 1; j < planes.size(); ++j) {
      const HalfPlane& a = planes[i];
      const HalfPlane& b = planes[j];
      const double det = a.a_t * b.a_u - a.a_u * b.a_t;
      if (std::abs(det) <= 1e-14 * (std::abs(a.a_t * b.a_u) + std::abs(a.a_u * b.a_t))) continue;
      const double pt = (a.b * b.a_u - a.a_u * b.b) / det;
      const double pu = (a.a_t * b.b - a.b * b.a_t) / det;
      if (!std::isfinite(pt) || !std::isfinite(pu)) continue;
      bool ok = true;
      for (const auto& h : planes) {
        if (h.slack(pt, pu) < -kFeasTol * h.scale(pt, pu)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      const double pt_c = std::max(pt, 0.0);
      const double pu_c = std::max(pu, 0.0);
      const double sum = pt_c + pu_c;
      if (!best.feasible || sum < best.total() - kTieTol * sum ||
          (sum <= best.total() + kTieTol * sum && pu_c > best.p_u)) {
        best = {pt_c, pu_c, true};
      }
    }
  }
  return best;
}

struct ZfDesign {
  ZfDirections directions;
  PowerAllocation allocation;

  BeamPair beams() const {
    return {std::sqrt(allocation.p_t) * directions.f_bar_t, std::sqrt(allocation.p_u) * directions.f_bar_u};
  }
};

// Throws IllConditioned when the two channels are (nearly) collinear.
inline ZfDesign design_zf(const ChannelSet& ch, const SystemParams& params) {
  ZfDesign d;
  d.directions = zf_directions(ch.h_t, ch.h_u);
  d.allocation = power_allocation(power_gains(ch, d.directions), params);
  return d;
}

}  // namespace isacbf
