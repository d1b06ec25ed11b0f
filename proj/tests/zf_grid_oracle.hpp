#pragma once

// Brute-force check of the zero-forcing power allocation: scan a square grid
// of (p_t, p_u) and keep the cheapest point meeting all three SINRs.

#include <limits>

#include "isacbf/zf_beamforming.hpp"

namespace isacbf::test {

// SINRs of the ZF design written out in ratio form from the scalar gains,
// independently of the half-plane construction.
struct RatioSinrs {
  const PowerGains& g;
  const SystemParams& p;

  bool feasible(double pt, double pu) const {
    const double tag = pt * g.tag_sensing / (pu * g.tag_comm + p.sigma2_tag);
    const double c = p.eta * g.combiner;
    const double reader = c * pt * g.tag_sensing / (c * pu * g.tag_comm + c * p.sigma2_tag + p.sigma2_reader);
    const double user = pu * g.user_comm / (pt * g.user_sensing +
                                            p.eta * g.tag_user * (pt * g.tag_sensing + pu * g.tag_comm + p.sigma2_tag) +
                                            p.sigma2_user);
    return tag >= p.gamma_tag && reader >= p.gamma_reader && user >= p.gamma_user;
  }
};

struct GridResult {
  bool found = false;
  double best = std::numeric_limits<double>::infinity();
};

inline GridResult grid_search(const PowerGains& g, const SystemParams& p, int k) {
  const RatioSinrs f{g, p};
  const double h = p.total_power / (k - 1);
  GridResult r;
  for (int i = 0; i < k; ++i) {
    const double pt = i * h;
    for (int j = 0; j < k; ++j) {
      const double pu = j * h;
      if (pt + pu > p.total_power) break;
      if (pt + pu >= r.best) break;
      if (f.feasible(pt, pu)) {
        r.found = true;
        r.best = pt + pu;
        break;  // larger pu only raises the objective on this row
      }
    }
  }
  return r;
}

// Objective slack of rounding the LP vertex up onto the grid: with the ZF
// nulls the user constraint reads pu >= b + c pt.
inline double rounding_slack(const PowerGains& g, const SystemParams& p, double h) {
  const double c = p.gamma_user * (g.user_sensing + p.eta * g.tag_user * g.tag_sensing) / g.user_comm;
  return (2.0 + c) * h;
}


}  // namespace isacbf::test
