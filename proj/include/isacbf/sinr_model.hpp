#pragma once

// Link SINRs at the tag, at the reader (after backscatter) and at the user,
// in expectation form over unit-energy symbols.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "isacbf/scene_channel.hpp"

namespace isacbf {

struct BeamPair {
  CVector f_t;  // sensing
  CVector f_u;  // communication

  double power() const { return f_t.squaredNorm() + f_u.squaredNorm(); }
};

// Receive combiner w = h / ||h||.
class Combiner {
 public:
  explicit Combiner(const CVector& h_rx) {
    const double n = h_rx.norm();
    if (!(n > 0.0)) throw std::domain_error("combiner: zero channel");
    w_ = h_rx / n;
  }

  const CVector& w() const { return w_; }
  // |w^H h|^2 for the receive-side tag channel.
  double gain(const CVector& h_rx) const { return std::norm(w_.dot(h_rx)); }

 private:
  CVector w_;
};

inline Combiner combiner(const CVector& h_t) { return Combiner(h_t); }

struct SinrReport {
  double sinr_tag = 0.0;
  double sinr_reader = 0.0;
  double sinr_user = 0.0;
  double power_tx = 0.0;
};

// Eigen's dot() conjugates its first argument, so h.dot(f) == h^H f.
inline double gain(const CVector& h, const CVector& f) { return std::norm(h.dot(f)); }

inline double sinr_tag(const BeamPair& beams, const CVector& h_t, double sigma2_tag) {
  return gain(h_t, beams.f_t) / (gain(h_t, beams.f_u) + sigma2_tag);
}

inline double sinr_reader(const BeamPair& beams, const CVector& h_t, const CVector& h_t_rx,
                          const Combiner& w, double eta, double sigma2_tag, double sigma2_reader) {
  const double c = eta * w.gain(h_t_rx);
  return c * gain(h_t, beams.f_t) / (c * gain(h_t, beams.f_u) + c * sigma2_tag + sigma2_reader);
}

inline double sinr_reader(const BeamPair& beams, const CVector& h_t, const Combiner& w, double eta,
                          double sigma2_tag, double sigma2_reader) {
  return sinr_reader(beams, h_t, h_t, w, eta, sigma2_tag, sigma2_reader);
}

inline double sinr_user(const BeamPair& beams, const CVector& h_u, const CVector& h_t, cdouble h_tu,
                        double eta, double sigma2_tag, double sigma2_user) {
  const double backscatter =
      eta * std::norm(h_tu) * (gain(h_t, beams.f_t) + gain(h_t, beams.f_u) + sigma2_tag);
  return gain(h_u, beams.f_u) / (gain(h_u, beams.f_t) + backscatter + sigma2_user);
}

inline SinrReport evaluate(const ChannelSet& ch, const BeamPair& beams, const SystemParams& params) {
  if (beams.f_t.size() != ch.h_t.size() || beams.f_u.size() != ch.h_t.size())
    throw std::invalid_argument("evaluate: beam length does not match the transmit array");
  const Combiner w(ch.h_t_rx);
  SinrReport r;
  r.sinr_tag = sinr_tag(beams, ch.h_t, params.sigma2_tag);
  r.sinr_reader = sinr_reader(beams, ch.h_t, ch.h_t_rx, w, params.eta, params.sigma2_tag, params.sigma2_reader);
  r.sinr_user = sinr_user(beams, ch.h_u, ch.h_t, ch.h_tu, params.eta, params.sigma2_tag, params.sigma2_user);
  r.power_tx = beams.power();
  return r;
}

// Largest relative shortfall against the three thresholds; <= 0 when all hold.
inline double worst_violation(const SinrReport& r, const SystemParams& p) {
  double v = 1.0 - r.sinr_tag / p.gamma_tag;
  v = std::max(v, 1.0 - r.sinr_reader / p.gamma_reader);
  v = std::max(v, 1.0 - r.sinr_user / p.gamma_user);
  return v;
}

}  // namespace isacbf
