#pragma once

// Joint sensing/communication beam design as a real second-order cone
// program.
//
// Each SINR constraint is rotated so the desired-signal term h^H f is real
// and nonnegative (a global phase on either beam changes no SINR), after
// which its square root is a cone: sqrt(1/gamma) Re{h^H f} >= ||interference,
// noise||. Complex quantities are embedded with the fixed variable layout
//
//   x = [Re f_t; Im f_t; Re f_u; Im f_u; epigraph scalars]

#include <cmath>
#include <string>
#include <vector>

#include "isacbf/conic.hpp"
#include "isacbf/scene_channel.hpp"
#include "isacbf/sinr_model.hpp"

namespace isacbf {

enum class ObjectiveMode {
  kSumOfNorms,  // ||f_t|| + ||f_u||
  kTotalPower,  // ||[f_t; f_u]||, i.e. total power after squaring
};

inline const char* to_string(ObjectiveMode m) {
  return m == ObjectiveMode::kSumOfNorms ? "sum-of-norms" : "total-power";
}

// Rows giving Re{h^H f} and Im{h^H f} for x = [Re f; Im f].
struct EmbeddedRows {
  RowVectorXd re;
  RowVectorXd im;
};

inline EmbeddedRows real_embed(const CVector& h) {
  const Eigen::Index n = h.size();
  EmbeddedRows r{RowVectorXd(2 * n), RowVectorXd(2 * n)};
  r.re << h.real().transpose(), h.imag().transpose();
  r.im << -h.imag().transpose(), h.real().transpose();
  return r;
}

struct JointOptions {
  ObjectiveMode objective_mode = ObjectiveMode::kSumOfNorms;
  // Without the cap the program returns the unconstrained minimum, which the
  // feasibility oracle compares against the budget.
  bool power_cap = true;
  ConicSettings solver{};
};

struct JointLayout {
  int n = 0;  // antennas
  int ft_re() const { return 0; }
  int ft_im() const { return n; }
  int fu_re() const { return 2 * n; }
  int fu_im() const { return 3 * n; }
  int beam_vars() const { return 4 * n; }
};

namespace detail {

class ConeBuilder {
 public:
  ConeBuilder(int n_vars, std::string label) {
    cone_.head = RowVectorXd::Zero(n_vars);
    cone_.tail.resize(0, n_vars);
    cone_.label = std::move(label);
    n_vars_ = n_vars;
  }

  void head(int block, const RowVectorXd& coeffs, double scale) {
    cone_.head.segment(block, coeffs.size()) += scale * coeffs;
  }
  void head_offset(double c) { cone_.head_offset = c; }

  // Appends Re and Im rows of a * (h^H f_block).
  void tail_complex(int block, const CVector& h, cdouble a) {
    const auto rows = real_embed(std::conj(a) * h);
    append_row(block, rows.re);
    append_row(block, rows.im);
  }
  void tail_constant(double c) { append_row(0, RowVectorXd::Zero(0), c); }
  void tail_identity(int block, int count) {
    for (int i = 0; i < count; ++i) {
      RowVectorXd e = RowVectorXd::Zero(1);
      e[0] = 1.0;
      append_row(block + i, e);
    }
  }

  SecondOrderCone build() && { return std::move(cone_); }

 private:
  void append_row(int block, const RowVectorXd& coeffs, double offset = 0.0) {
    const Eigen::Index r = cone_.tail.rows();
    cone_.tail.conservativeResize(r + 1, n_vars_);
    cone_.tail.row(r).setZero();
    if (coeffs.size() > 0) cone_.tail.row(r).segment(block, coeffs.size()) = coeffs;
    cone_.tail_offset.conservativeResize(r + 1);
    cone_.tail_offset[r] = offset;
  }

  SecondOrderCone cone_;
  int n_vars_ = 0;
};

}  // namespace detail

inline ConicProgram assemble_joint(const ChannelSet& ch, const Combiner& w, const SystemParams& p,
                                   const JointOptions& opt = {}) {
  p.validate();
  const int n = static_cast<int>(ch.h_t.size());
  if (ch.h_u.size() != n) throw std::invalid_argument("assemble_joint: channel length mismatch");
  const JointLayout L{n};
  const int n_epi = opt.objective_mode == ObjectiveMode::kSumOfNorms ? 2 : 1;
  const int nv = L.beam_vars() + n_epi;

  ConicProgram prog;
  prog.n_vars = nv;
  prog.objective = VectorXd::Zero(nv);
  for (int i = 0; i < n; ++i) {
    prog.var_names.push_back("re_ft" + std::to_string(i));
  }
  for (int i = 0; i < n; ++i) prog.var_names.push_back("im_ft" + std::to_string(i));
  for (int i = 0; i < n; ++i) prog.var_names.push_back("re_fu" + std::to_string(i));
  for (int i = 0; i < n; ++i) prog.var_names.push_back("im_fu" + std::to_string(i));

  const double sqrt_eta = std::sqrt(p.eta);
  const double sigma_t = std::sqrt(p.sigma2_tag);
  const EmbeddedRows ht_rows = real_embed(ch.h_t);
  const EmbeddedRows hu_rows = real_embed(ch.h_u);

  // User: sqrt(1/gamma_u) Re{h_u^H f_u} >= ||[h_u^H f_t; sqrt(eta) h_tu h_t^H f_t;
  //        sqrt(eta) h_tu h_t^H f_u; sqrt(eta) |h_tu| sigma_t; sigma_u]||
  {
    detail::ConeBuilder b(nv, "sinr_user");
    b.head(L.fu_re(), hu_rows.re, 1.0 / std::sqrt(p.gamma_user));
    b.tail_complex(L.ft_re(), ch.h_u, 1.0);
    b.tail_complex(L.ft_re(), ch.h_t, sqrt_eta * ch.h_tu);
    b.tail_complex(L.fu_re(), ch.h_t, sqrt_eta * ch.h_tu);
    b.tail_constant(sqrt_eta * std::abs(ch.h_tu) * sigma_t);
    b.tail_constant(std::sqrt(p.sigma2_user));
    prog.cones.push_back(std::move(b).build());
  }
  // Tag: sqrt(1/gamma_t) Re{h_t^H f_t} >= ||[h_t^H f_u; sigma_t]||
  {
    detail::ConeBuilder b(nv, "sinr_tag");
    b.head(L.ft_re(), ht_rows.re, 1.0 / std::sqrt(p.gamma_tag));
    b.tail_complex(L.fu_re(), ch.h_t, 1.0);
    b.tail_constant(sigma_t);
    prog.cones.push_back(std::move(b).build());
  }
  // Reader: sqrt(eta/gamma_r) |w^H h_t| Re{h_t^H f_t} >=
  //         ||[sqrt(eta) w^H h_t h_t^H f_u; sqrt(eta) |w^H h_t| sigma_t; sigma_r]||
  {
    const cdouble wh = w.w().dot(ch.h_t_rx);
    detail::ConeBuilder b(nv, "sinr_reader");
    b.head(L.ft_re(), ht_rows.re, std::sqrt(p.eta / p.gamma_reader) * std::abs(wh));
    b.tail_complex(L.fu_re(), ch.h_t, sqrt_eta * wh);
    b.tail_constant(sqrt_eta * std::abs(wh) * sigma_t);
    b.tail_constant(std::sqrt(p.sigma2_reader));
    prog.cones.push_back(std::move(b).build());
  }
  if (opt.power_cap) {
    detail::ConeBuilder b(nv, "power_cap");
    b.head_offset(std::sqrt(p.total_power));
    b.tail_identity(0, L.beam_vars());
    prog.cones.push_back(std::move(b).build());
  }
  if (opt.objective_mode == ObjectiveMode::kSumOfNorms) {
    const int t1 = L.beam_vars();
    const int t2 = t1 + 1;
    prog.var_names.push_back("t_sense");
    prog.var_names.push_back("t_comm");
    RowVectorXd one = RowVectorXd::Ones(1);
    detail::ConeBuilder bt(nv, "norm_ft");
    bt.head(t1, one, 1.0);
    bt.tail_identity(L.ft_re(), 2 * n);
    prog.cones.push_back(std::move(bt).build());
    detail::ConeBuilder bu(nv, "norm_fu");
    bu.head(t2, one, 1.0);
    bu.tail_identity(L.fu_re(), 2 * n);
    prog.cones.push_back(std::move(bu).build());
    prog.objective[t1] = 1.0;
    prog.objective[t2] = 1.0;
  } else {
    const int t = L.beam_vars();
    prog.var_names.push_back("t_total");
    detail::ConeBuilder b(nv, "norm_total");
    b.head(t, RowVectorXd::Ones(1), 1.0);
    b.tail_identity(0, L.beam_vars());
    prog.cones.push_back(std::move(b).build());
    prog.objective[t] = 1.0;
  }
  return prog;
}

inline BeamPair beams_from_solution(const VectorXd& x, int n) {
  const JointLayout L{n};
  BeamPair b;
  b.f_t.resize(n);
  b.f_u.resize(n);
  for (int i = 0; i < n; ++i) {
    b.f_t[i] = cdouble(x[L.ft_re() + i], x[L.ft_im() + i]);
    b.f_u[i] = cdouble(x[L.fu_re() + i], x[L.fu_im() + i]);
  }
  return b;
}

enum class JointStatus { kOptimal, kInfeasible, kNumericalFailure };

inline const char* to_string(JointStatus s) {
  switch (s) {
    case JointStatus::kOptimal: return "optimal";
    case JointStatus::kInfeasible: return "infeasible";
    case JointStatus::kNumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

struct JointSolution {
  JointStatus status = JointStatus::kNumericalFailure;
  BeamPair beams;  // populated only when optimal
  double objective = 0.0;  // ||f_t|| + ||f_u||
  double power = 0.0;      // ||f_t||^2 + ||f_u||^2
  SinrReport report;
  int iterations = 0;
};

// Acceptance slack for re-evaluated SINRs and for the power budget.
inline constexpr double kJointSlack = 1e-6;

inline JointSolution solve_joint(const ChannelSet& ch, const Combiner& w, const SystemParams& p,
                                 const JointOptions& opt = {}) {
  const ConicProgram prog = assemble_joint(ch, w, p, opt);
  const ConicSolution sol = solve_conic(prog, opt.solver);
  JointSolution out;
  out.iterations = sol.iterations;
  if (sol.status == ConicStatus::kInfeasible) {
    out.status = JointStatus::kInfeasible;
    return out;
  }
  if (sol.status != ConicStatus::kOptimal) return out;

  BeamPair beams = beams_from_solution(sol.x, static_cast<int>(ch.h_t.size()));
  const SinrReport rep = evaluate(ch, beams, p);
  // Beams that fail the original constraints are never handed back.
  if (worst_violation(rep, p) > kJointSlack) return out;
  if (opt.power_cap && rep.power_tx > p.total_power * (1.0 + kJointSlack)) return out;

  out.status = JointStatus::kOptimal;
  out.objective = beams.f_t.norm() + beams.f_u.norm();
  out.power = rep.power_tx;
  out.report = rep;
  out.beams = std::move(beams);
  return out;
}

inline JointSolution solve_joint(const ChannelSet& ch, const SystemParams& p, const JointOptions& opt = {}) {
  return solve_joint(ch, Combiner(ch.h_t_rx), p, opt);
}

}  // namespace isacbf
