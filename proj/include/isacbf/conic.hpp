#pragma once

// Second-order cone programs and a dense primal-dual interior-point solver.
//
//   minimize    c^T x
//   subject to  head_k(x) >= || tail_k(x) ||    for every cone k
//
// where head_k is an affine functional and tail_k an affine map. The solver
// runs a homogeneous self-dual embedding with Nesterov-Todd scaling and a
// Mehrotra predictor-corrector, so infeasible programs end with a
// certificate instead of an iteration-limit failure. Everything is dense:
// the programs built here have a few dozen variables.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace isacbf {

using Eigen::MatrixXd;
using Eigen::RowVectorXd;
using Eigen::VectorXd;

struct SecondOrderCone {
  RowVectorXd head;
  double head_offset = 0.0;
  MatrixXd tail;  // may have zero rows (plain linear inequality)
  VectorXd tail_offset;
  std::string label;

  int dim() const { return 1 + static_cast<int>(tail.rows()); }
  double head_value(const VectorXd& x) const { return head.dot(x) + head_offset; }
  VectorXd tail_value(const VectorXd& x) const { return tail * x + tail_offset; }
  // head(x) - ||tail(x)||; nonnegative iff the cone constraint holds.
  double margin(const VectorXd& x) const { return head_value(x) - tail_value(x).norm(); }
};

struct ConicProgram {
  int n_vars = 0;
  VectorXd objective;
  std::vector<SecondOrderCone> cones;
  std::vector<std::string> var_names;

  int n_rows() const {
    int m = 0;
    for (const auto& k : cones) m += k.dim();
    return m;
  }

  void validate() const {
    if (n_vars < 1) throw std::invalid_argument("conic program needs at least one variable");
    if (objective.size() != n_vars) throw std::invalid_argument("objective length != n_vars");
    if (!var_names.empty() && static_cast<int>(var_names.size()) != n_vars)
      throw std::invalid_argument("var_names length != n_vars");
    for (const auto& k : cones) {
      if (k.head.size() != n_vars || k.tail.cols() != n_vars)
        throw std::invalid_argument("cone '" + k.label + "' column count != n_vars");
      if (k.tail_offset.size() != k.tail.rows())
        throw std::invalid_argument("cone '" + k.label + "' tail offset length mismatch");
      if (!k.head.allFinite() || !k.tail.allFinite() || !std::isfinite(k.head_offset) || !k.tail_offset.allFinite())
        throw std::invalid_argument("cone '" + k.label + "' has non-finite entries");
    }
  }
};

// Plain-text listing: one line per row with the offset first, then the
// coefficients. Cone boundaries are marked by "cone" header lines.
inline std::string dump(const ConicProgram& prog) {
  std::ostringstream os;
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  os << "n_vars " << prog.n_vars << "\n";
  os << "vars";
  for (int j = 0; j < prog.n_vars; ++j)
    os << ' ' << (prog.var_names.empty() ? "x" + std::to_string(j) : prog.var_names[j]);
  os << "\nobjective";
  for (int j = 0; j < prog.n_vars; ++j) os << ' ' << num(prog.objective[j]);
  os << "\ncones " << prog.cones.size() << "\n";
  for (std::size_t k = 0; k < prog.cones.size(); ++k) {
    const auto& c = prog.cones[k];
    os << "cone " << k << ' ' << (c.label.empty() ? "-" : c.label) << " dim " << c.dim() << "\n";
    os << "  head " << num(c.head_offset);
    for (int j = 0; j < prog.n_vars; ++j) os << ' ' << num(c.head[j]);
    os << "\n";
    for (int r = 0; r < c.tail.rows(); ++r) {
      os << "  tail " << num(c.tail_offset[r]);
      for (int j = 0; j < prog.n_vars; ++j) os << ' ' << num(c.tail(r, j));
      os << "\n";
    }
  }
  return os.str();
}

enum class ConicStatus { kOptimal, kInfeasible, kUnbounded, kNumericalFailure };

inline const char* to_string(ConicStatus s) {
  switch (s) {
    case ConicStatus::kOptimal: return "optimal";
    case ConicStatus::kInfeasible: return "infeasible";
    case ConicStatus::kUnbounded: return "unbounded";
    case ConicStatus::kNumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

struct ConicSettings {
  double feastol = 1e-8;
  double abstol = 1e-8;
  double reltol = 1e-8;
  int max_iters = 100;
  // When the iteration stalls, the best iterate is still returned as optimal
  // (flagged) if it meets these looser tolerances.
  double feastol_inacc = 1e-4;
  double abstol_inacc = 5e-5;
  double reltol_inacc = 5e-5;
};

struct ConicSolution {
  ConicStatus status = ConicStatus::kNumericalFailure;
  VectorXd x;  // primal point (empty unless optimal)
  double objective = std::numeric_limits<double>::quiet_NaN();
  int iterations = 0;
  double pres = 0.0;
  double dres = 0.0;
  double gap = 0.0;
  bool reduced_accuracy = false;
};

namespace detail {

// Nesterov-Todd scaling of one cone: W = eta (2 v v^T - J), with
// J = diag(1, -1, ..., -1) and v^T J v = 1. W is symmetric and
// W z = W^{-1} s = lambda.
struct NtScaling {
  double eta = 1.0;
  VectorXd v;
};

// x^T J x computed as (x0 - |x1|)(x0 + |x1|).
inline double jdet(const Eigen::Ref<const VectorXd>& v) {
  const double t = v.tail(v.size() - 1).norm();
  return (v[0] - t) * (v[0] + t);
}

inline NtScaling nt_scaling(const Eigen::Ref<const VectorXd>& s, const Eigen::Ref<const VectorXd>& z) {
  const double ds = jdet(s);
  const double dz = jdet(z);
  const VectorXd sb = s / std::sqrt(ds);
  VectorXd zb = z / std::sqrt(dz);
  const double gamma = std::sqrt(0.5 * (1.0 + sb.dot(zb)));
  zb.tail(zb.size() - 1) *= -1.0;  // J zbar
  // wbar is the J-normalized NT point; v = (wbar + e) / sqrt(2 (wbar_0 + 1)).
  VectorXd wbar = (sb + zb) / (2.0 * gamma);
  NtScaling w;
  w.eta = std::pow(ds / dz, 0.25);
  const double scale = std::sqrt(2.0 * (wbar[0] + 1.0));
  wbar[0] += 1.0;
  w.v = wbar / scale;
  return w;
}

inline void apply_j(Eigen::Ref<VectorXd> v) { v.tail(v.size() - 1) *= -1.0; }

inline VectorXd apply_w(const NtScaling& w, const Eigen::Ref<const VectorXd>& v) {
  VectorXd r = (2.0 * w.v.dot(v)) * w.v;
  r[0] -= v[0];
  r.tail(r.size() - 1) += v.tail(v.size() - 1);
  return w.eta * r;
}

// W^{-1} = (1/eta) (2 J v v^T J - J)
inline VectorXd apply_winv(const NtScaling& w, const Eigen::Ref<const VectorXd>& v) {
  VectorXd jw = w.v;
  apply_j(jw);
  VectorXd r = (2.0 * jw.dot(v)) * jw;
  r[0] -= v[0];
  r.tail(r.size() - 1) += v.tail(v.size() - 1);
  return r / w.eta;
}

// Jordan product u o v.
inline VectorXd jordan(const Eigen::Ref<const VectorXd>& u, const Eigen::Ref<const VectorXd>& v) {
  VectorXd r(u.size());
  r[0] = u.dot(v);
  r.tail(u.size() - 1) = u[0] * v.tail(v.size() - 1) + v[0] * u.tail(u.size() - 1);
  return r;
}

// Solves lambda o u = v for u.
inline VectorXd jordan_div(const Eigen::Ref<const VectorXd>& lambda, const Eigen::Ref<const VectorXd>& v) {
  const int n = static_cast<int>(lambda.size());
  const double l0 = lambda[0];
  const auto l1 = lambda.tail(n - 1);
  VectorXd u(n);
  u[0] = (l0 * v[0] - l1.dot(v.tail(n - 1))) / jdet(lambda);
  u.tail(n - 1) = (v.tail(n - 1) - u[0] * l1) / l0;
  return u;
}

// Largest step a with lambda + a d in the cone, for a scaled direction d.
// Returns +inf when the whole ray stays inside.
inline double max_step(const Eigen::Ref<const VectorXd>& lambda, const Eigen::Ref<const VectorXd>& d) {
  const int n = static_cast<int>(lambda.size());
  const double lnorm = std::sqrt(jdet(lambda));
  const VectorXd lbar = lambda / lnorm;
  const double ld = lbar[0] * d[0] - lbar.tail(n - 1).dot(d.tail(n - 1));
  const double factor = (ld + d[0]) / (lbar[0] + 1.0);
  const double rho0 = ld / lnorm;
  double rho_norm = 0.0;
  if (n > 1) rho_norm = ((d.tail(n - 1) - factor * lbar.tail(n - 1)) / lnorm).norm();
  const double v = rho_norm - rho0;
  return v > 0.0 ? 1.0 / v : std::numeric_limits<double>::infinity();
}

class InteriorPoint {
 public:
  InteriorPoint(const ConicProgram& prog, const ConicSettings& settings) : settings_(settings) {
    prog.validate();
    n_ = prog.n_vars;
    m_ = prog.n_rows();
    G_.setZero(m_, n_);
    h_.setZero(m_);
    int row = 0;
    for (const auto& k : prog.cones) {
      const int d = k.dim();
      // s = h - G x with s = [head(x); tail(x)].
      G_.row(row) = -k.head;
      h_[row] = k.head_offset;
      if (d > 1) {
        G_.block(row + 1, 0, d - 1, n_) = -k.tail;
        h_.segment(row + 1, d - 1) = k.tail_offset;
      }
      // Row equilibration: a positive multiple of a cone is the same cone.
      // Normalizing by the constant part keeps every cone's values near one
      // at the boundary, which is what the residual tests are measured in.
      double scale = h_.segment(row, d).norm();
      if (!(scale > 0.0)) scale = G_.block(row, 0, d, n_).rowwise().norm().maxCoeff();
      if (scale > 0.0) {
        G_.block(row, 0, d, n_) /= scale;
        h_.segment(row, d) /= scale;
      }
      offsets_.push_back(row);
      dims_.push_back(d);
      row += d;
    }
    const double cmax = prog.objective.cwiseAbs().maxCoeff();
    cscale_ = cmax > 0.0 ? cmax : 1.0;
    c_ = prog.objective / cscale_;
  }

  ConicSolution solve() {
    ConicSolution out;
    if (m_ == 0) {
      out.status = c_.isZero() ? ConicStatus::kOptimal : ConicStatus::kUnbounded;
      if (out.status == ConicStatus::kOptimal) {
        out.x = VectorXd::Zero(n_);
        out.objective = 0.0;
      }
      return out;
    }
    initialize();
    const double hnorm = std::max(1.0, h_.norm());
    const double cnorm = std::max(1.0, c_.norm());
    const int ncones = static_cast<int>(dims_.size());

    for (int it = 0; it <= settings_.max_iters; ++it) {
      out.iterations = it;
      const VectorXd rx = G_.transpose() * z_ + c_ * tau_;
      const VectorXd rz = h_ * tau_ - G_ * x_ - s_;
      const double cx = c_.dot(x_);
      const double hz = h_.dot(z_);
      const double rt = -cx - hz - kappa_;

      const double pcost = cx / tau_;
      const double dcost = -hz / tau_;
      const double pres = rz.norm() / tau_ / hnorm;
      const double dres = rx.norm() / tau_ / cnorm;
      const double gap = s_.dot(z_) / (tau_ * tau_);
      double relgap = std::numeric_limits<double>::infinity();
      if (pcost < 0.0) relgap = gap / -pcost;
      else if (dcost > 0.0) relgap = gap / dcost;
      if (std::getenv("ISACBF_TRACE"))
        std::fprintf(stderr, "it %d pcost %.6e dcost %.6e pres %.2e dres %.2e gap %.2e tau %.2e kap %.2e\n", it,
                     pcost, dcost, pres, dres, gap, tau_, kappa_);
      out.pres = pres;
      out.dres = dres;
      out.gap = gap;
      const double merit = std::max({pres, dres, std::min(gap, relgap)});
      if (merit < best_merit_) {
        best_merit_ = merit;
        best_ = out;
        best_.x = x_ / tau_;
        best_.objective = pcost * cscale_;
        best_relgap_ = relgap;
      }

      if (pres < settings_.feastol && dres < settings_.feastol &&
          (gap < settings_.abstol || relgap < settings_.reltol)) {
        out.status = ConicStatus::kOptimal;
        out.x = x_ / tau_;
        out.objective = pcost * cscale_;
        return out;
      }
      if (hz < 0.0 && tau_ < kappa_) {
        const double res = (G_.transpose() * z_).norm() / -hz;
        if (res < settings_.feastol) {
          out.status = ConicStatus::kInfeasible;
          return out;
        }
      }
      if (cx < 0.0 && tau_ < kappa_) {
        const double res = (G_ * x_ + s_).norm() / -cx;
        if (res < settings_.feastol) {
          out.status = ConicStatus::kUnbounded;
          return out;
        }
      }
      if (it == settings_.max_iters) break;

      // Scaling and factorization for this iterate.
      VectorXd lambda(m_);
      scalings_.resize(ncones);
      for (int k = 0; k < ncones; ++k) {
        const auto sk = s_.segment(offsets_[k], dims_[k]);
        const auto zk = z_.segment(offsets_[k], dims_[k]);
        if (!(jdet(sk) > 0.0 && jdet(zk) > 0.0 && sk[0] > 0.0 && zk[0] > 0.0)) return failure(out);
        scalings_[k] = nt_scaling(sk, zk);
        lambda.segment(offsets_[k], dims_[k]) = apply_w(scalings_[k], zk);
      }
      if (!factor()) return failure(out);
      const double mu = (s_.dot(z_) + tau_ * kappa_) / (ncones + 1);

      VectorXd dx2, dz2;
      solve_kkt(-c_, h_, dx2, dz2);
      const double denom = kappa_ / tau_ - c_.dot(dx2) - h_.dot(dz2);

      // Predictor (sigma = 0) then corrector.
      Direction aff = direction(rx, rz, rt, lambda, cone_product(lambda, lambda), tau_ * kappa_, 0.0, dx2, dz2, denom);
      const double a_aff = step_length(lambda, aff);
      const double sigma = std::clamp(std::pow(1.0 - std::min(a_aff, 1.0), 3.0), 0.0, 1.0);

      VectorXd ds_target = cone_product(lambda, lambda);
      {
        const VectorXd sa = scaled_s(aff.ds);
        const VectorXd za = scaled_z(aff.dz);
        ds_target += cone_product(sa, za);
        for (int k = 0; k < ncones; ++k) ds_target[offsets_[k]] -= sigma * mu;
      }
      const double dk_target = tau_ * kappa_ + aff.dtau * aff.dkappa - sigma * mu;
      Direction dir = direction(rx, rz, rt, lambda, ds_target, dk_target, sigma, dx2, dz2, denom);
      const double alpha = std::min(0.99 * step_length(lambda, dir), 1.0);
      if (!(alpha > 1e-12)) return failure(out);

      x_ += alpha * dir.dx;
      s_ += alpha * dir.ds;
      z_ += alpha * dir.dz;
      tau_ += alpha * dir.dtau;
      kappa_ += alpha * dir.dkappa;
      if (!(tau_ > 0.0 && kappa_ > 0.0) || !x_.allFinite() || !z_.allFinite()) return failure(out);
    }
    return failure(out);
  }

 private:
  struct Direction {
    VectorXd dx, ds, dz;
    double dtau = 0.0;
    double dkappa = 0.0;
  };

  ConicSolution& failure(ConicSolution& out) {
    if (std::getenv("ISACBF_TRACE")) std::fprintf(stderr, "failure\n");
    if (best_.x.size() == n_ && best_.pres < settings_.feastol_inacc && best_.dres < settings_.feastol_inacc &&
        (best_.gap < settings_.abstol_inacc || best_relgap_ < settings_.reltol_inacc)) {
      const int iters = out.iterations;
      out = best_;
      out.iterations = iters;
      out.status = ConicStatus::kOptimal;
      out.reduced_accuracy = true;
      return out;
    }
    out.status = ConicStatus::kNumericalFailure;
    out.x.resize(0);
    return out;
  }

  // Shift r into the interior of the product cone along its identity.
  void shift_into_cone(VectorXd& r) const {
    double alpha = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      const auto rk = r.segment(offsets_[k], dims_[k]);
      alpha = std::max(alpha, rk.tail(dims_[k] - 1).norm() - rk[0]);
    }
    if (alpha >= -1e-8) {
      for (std::size_t k = 0; k < dims_.size(); ++k) r[offsets_[k]] += 1.0 + alpha;
    }
  }

  void initialize() {
    MatrixXd gtg = G_.transpose() * G_;
    gtg.diagonal().array() += 1e-10 * std::max(1.0, gtg.diagonal().maxCoeff());
    const Eigen::LDLT<MatrixXd> ldlt(gtg);
    x_ = ldlt.solve(G_.transpose() * h_);
    s_ = h_ - G_ * x_;
    shift_into_cone(s_);
    z_ = G_ * ldlt.solve(-c_);
    shift_into_cone(z_);
    tau_ = 1.0;
    kappa_ = 1.0;
  }

  VectorXd cone_product(const VectorXd& u, const VectorXd& v) const {
    VectorXd r(m_);
    for (std::size_t k = 0; k < dims_.size(); ++k)
      r.segment(offsets_[k], dims_[k]) = jordan(u.segment(offsets_[k], dims_[k]), v.segment(offsets_[k], dims_[k]));
    return r;
  }

  // out = W^{-1} in, cone by cone.
  void scale_s(const VectorXd& in, VectorXd& out) const {
    out.resize(m_);
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      const int o = offsets_[k];
      const int d = dims_[k];
      const NtScaling& w = scalings_[k];
      const auto v = in.segment(o, d);
      auto r = out.segment(o, d);
      const double a = 2.0 * (w.v[0] * v[0] - w.v.tail(d - 1).dot(v.tail(d - 1)));
      r[0] = (a * w.v[0] - v[0]) / w.eta;
      r.tail(d - 1) = (v.tail(d - 1) - a * w.v.tail(d - 1)) / w.eta;
    }
  }

  // out = W in, cone by cone.
  void scale_z(const VectorXd& in, VectorXd& out) const {
    out.resize(m_);
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      const int o = offsets_[k];
      const int d = dims_[k];
      const NtScaling& w = scalings_[k];
      const auto v = in.segment(o, d);
      auto r = out.segment(o, d);
      const double a = 2.0 * w.v.dot(v);
      r[0] = w.eta * (a * w.v[0] - v[0]);
      r.tail(d - 1) = w.eta * (a * w.v.tail(d - 1) + v.tail(d - 1));
    }
  }

  VectorXd scaled_s(const VectorXd& ds) const {
    VectorXd r;
    scale_s(ds, r);
    return r;
  }

  VectorXd scaled_z(const VectorXd& dz) const {
    VectorXd r;
    scale_z(dz, r);
    return r;
  }

  VectorXd apply_winv2(const VectorXd& v) const {
    VectorXd t, r;
    scale_s(v, t);
    scale_s(t, r);
    return r;
  }

  VectorXd apply_w2(const VectorXd& v) const {
    VectorXd t, r;
    scale_z(v, t);
    scale_z(t, r);
    return r;
  }

  bool factor() {
    v_.resize(m_, n_);
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      const int o = offsets_[k];
      const int d = dims_[k];
      const NtScaling& w = scalings_[k];
      // W^{-1} G_k = (2 Jv (Jv)^T G_k - J G_k) / eta
      VectorXd jv = w.v;
      apply_j(jv);
      const RowVectorXd proj = jv.transpose() * G_.middleRows(o, d);
      auto vk = v_.middleRows(o, d);
      vk.noalias() = 2.0 * jv * proj;
      vk.row(0) -= G_.row(o);
      vk.bottomRows(d - 1) += G_.middleRows(o + 1, d - 1);
      vk /= w.eta;
    }
    normal_.setZero(n_, n_);
    normal_.selfadjointView<Eigen::Lower>().rankUpdate(v_.transpose());
    const double reg = 1e-14 * std::max(1.0, normal_.diagonal().maxCoeff());
    normal_.diagonal().array() += reg;
    chol_.compute(normal_);
    return chol_.info() == Eigen::Success;
  }

  // [0 G^T; G -W^2] [dx; dz] = [bx; bz]. The normal equations lose accuracy
  // as the scaling degenerates near the optimum, so refinement repeats while
  // the residual keeps shrinking.
  void solve_kkt(const VectorXd& bx, const VectorXd& bz, VectorXd& dx, VectorXd& dz) const {
    dx = chol_.solve(bx + G_.transpose() * apply_winv2(bz));
    dz = apply_winv2(G_ * dx - bz);
    double prev = std::numeric_limits<double>::infinity();
    for (int pass = 0; pass < kMaxRefinement; ++pass) {
      const VectorXd ex = bx - G_.transpose() * dz;
      const VectorXd ez = bz - (G_ * dx - apply_w2(dz));
      const double err = std::sqrt(ex.squaredNorm() + ez.squaredNorm());
      if (!(err < 0.5 * prev)) break;
      prev = err;
      const VectorXd cx = chol_.solve(ex + G_.transpose() * apply_winv2(ez));
      dx += cx;
      dz += apply_winv2(G_ * cx - ez);
    }
  }

  Direction direction(const VectorXd& rx, const VectorXd& rz, double rt, const VectorXd& lambda,
                      const VectorXd& ds_target, double dk_target, double sigma, const VectorXd& dx2,
                      const VectorXd& dz2, double denom) const {
    const double keep = 1.0 - sigma;
    VectorXd v(m_);
    for (std::size_t k = 0; k < dims_.size(); ++k)
      v.segment(offsets_[k], dims_[k]) =
          jordan_div(lambda.segment(offsets_[k], dims_[k]), ds_target.segment(offsets_[k], dims_[k]));
    const VectorXd wv = scaled_z(v);
    VectorXd dx1, dz1;
    solve_kkt(-keep * rx, keep * rz + wv, dx1, dz1);
    Direction d;
    d.dtau = (-keep * rt + c_.dot(dx1) + h_.dot(dz1) - dk_target / tau_) / denom;
    d.dx = dx1 + d.dtau * dx2;
    d.dz = dz1 + d.dtau * dz2;
    d.ds = -wv - apply_w2(d.dz);
    d.dkappa = (-dk_target - kappa_ * d.dtau) / tau_;
    return d;
  }

  double step_length(const VectorXd& lambda, const Direction& d) const {
    double a = std::numeric_limits<double>::infinity();
    const VectorXd sh = scaled_s(d.ds);
    const VectorXd zh = scaled_z(d.dz);
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      const auto lk = lambda.segment(offsets_[k], dims_[k]);
      a = std::min(a, max_step(lk, sh.segment(offsets_[k], dims_[k])));
      a = std::min(a, max_step(lk, zh.segment(offsets_[k], dims_[k])));
    }
    if (d.dtau < 0.0) a = std::min(a, -tau_ / d.dtau);
    if (d.dkappa < 0.0) a = std::min(a, -kappa_ / d.dkappa);
    return a;
  }

  static constexpr int kMaxRefinement = 4;

  ConicSettings settings_;
  int n_ = 0;
  int m_ = 0;
  MatrixXd G_;
  VectorXd h_;
  VectorXd c_;
  double cscale_ = 1.0;
  std::vector<int> offsets_;
  std::vector<int> dims_;

  VectorXd x_, s_, z_;
  double tau_ = 1.0;
  double kappa_ = 1.0;
  std::vector<NtScaling> scalings_;
  ConicSolution best_;
  double best_merit_ = std::numeric_limits<double>::infinity();
  double best_relgap_ = std::numeric_limits<double>::infinity();
  MatrixXd v_;
  MatrixXd normal_;
  Eigen::LLT<MatrixXd, Eigen::Lower> chol_;
};

}  // namespace detail

// Solves the program to the given tolerances. Each call owns its own
// workspace, so concurrent calls on different programs are independent.
inline ConicSolution solve_conic(const ConicProgram& prog, const ConicSettings& settings = {}) {
  detail::InteriorPoint ipm(prog, settings);
  return ipm.solve();
}

}  // namespace isacbf
