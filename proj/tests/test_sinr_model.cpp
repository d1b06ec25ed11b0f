#include <gtest/gtest.h>

#include <cmath>

#include "isacbf/sinr_model.hpp"
#include "test_support.hpp"

using namespace isacbf;

namespace {

BeamPair random_beams(test::SceneGenerator& g, int n) { return {g.complex_vector(n), g.complex_vector(n, 0.1)}; }

void expect_rel(double a, double b, double tol) { EXPECT_NEAR(a, b, tol * std::max(std::abs(a), std::abs(b))); }

}  // namespace

TEST(Combiner, Basics) {
  CVector h(2);
  h << 1.0, 0.0;
  EXPECT_EQ(combiner(h).w(), h);
  test::SceneGenerator g(3);
  for (int k = 0; k < 20; ++k) {
    const CVector ht = g.complex_vector(4);
    const Combiner w(ht);
    const cdouble whh = w.w().dot(ht);
    EXPECT_NEAR(whh.imag(), 0.0, 1e-14);
    EXPECT_NEAR(whh.real(), ht.norm(), 1e-14);
    EXPECT_NEAR(w.w().norm(), 1.0, 1e-12);
    const cdouble s = std::polar(5.0, 0.7);
    const Combiner ws(s * ht);
    EXPECT_NEAR((ws.w() - std::polar(1.0, 0.7) * w.w()).norm(), 0.0, 1e-13);
    EXPECT_NEAR(std::sqrt(ws.gain(s * ht)), 5.0 * std::sqrt(w.gain(ht)), 1e-12);
  }
  EXPECT_THROW(Combiner(CVector::Zero(3)), std::domain_error);
}

TEST(SinrTag, ClosedForms) {
  const ChannelSet ch = test::reference_channels();
  const double s2 = 1e-13;
  const double P = 1.0;
  BeamPair b{std::sqrt(P) * ch.h_t.normalized(), CVector::Zero(4)};
  expect_rel(sinr_tag(b, ch.h_t, s2), P * ch.h_t.squaredNorm() / s2, 1e-12);
  EXPECT_EQ(sinr_tag({CVector::Zero(4), b.f_t}, ch.h_t, s2), 0.0);
  // An f_u orthogonal to h_t adds no interference.
  CVector fu = ch.h_u - ch.h_t.normalized() * ch.h_t.normalized().dot(ch.h_u);
  BeamPair b2{b.f_t, fu.normalized()};
  expect_rel(sinr_tag(b2, ch.h_t, s2), sinr_tag(b, ch.h_t, s2), 1e-9);
}

TEST(SinrReader, ClosedForms) {
  const ChannelSet ch = test::reference_channels(90.0, 6.0, 4);
  const SystemParams p = test::default_params();
  const Combiner w(ch.h_t);
  EXPECT_EQ(sinr_reader({CVector::Zero(4), ch.h_u}, ch.h_t, w, p.eta, p.sigma2_tag, p.sigma2_reader), 0.0);

  // Brute-force evaluation from scratch constants: N=4, P=1, tag 6 m at
  // boresight, matched filter, no communication beam.
  const double lambda = 299792458.0 / 2.4e9;
  const double fr = std::pow(lambda / (4 * std::numbers::pi * 6.0), 2);
  const double ht2 = 4 * fr;                // ||h_t||^2
  const double sig = ht2;                   // |h_t^H f_t|^2 with ||f_t||^2 = 1
  const double c = p.eta * ht2;             // eta |w^H h_t|^2
  const double expected = c * sig / (c * p.sigma2_tag + p.sigma2_reader);
  const BeamPair mf{ch.h_t.normalized(), CVector::Zero(4)};
  expect_rel(sinr_reader(mf, ch.h_t, w, p.eta, p.sigma2_tag, p.sigma2_reader), expected, 1e-10);

  // Far tag: eta sigma_t^2 ||h_t||^2 negligible against sigma_r^2.
  const ChannelSet far = test::reference_channels(90.0, 200.0, 4);
  const Combiner wf(far.h_t);
  const double h2 = far.h_t.squaredNorm();
  ASSERT_LE(p.eta * p.sigma2_tag * h2, 0.01 * p.sigma2_reader);
  const BeamPair mff{far.h_t.normalized(), CVector::Zero(4)};
  const double approx = p.eta * h2 * gain(far.h_t, mff.f_t) / p.sigma2_reader;
  expect_rel(sinr_reader(mff, far.h_t, wf, p.eta, p.sigma2_tag, p.sigma2_reader), approx, 0.01);
}

TEST(SinrUser, ClosedFormsAndLimit) {
  const ChannelSet ch = test::reference_channels(100.0, 4.0);
  const SystemParams p = test::default_params();
  test::SceneGenerator g(5);
  const BeamPair b = random_beams(g, 4);

  BeamPair no_t{CVector::Zero(4), b.f_u};
  expect_rel(sinr_user(no_t, ch.h_u, ch.h_t, 0.0, p.eta, p.sigma2_tag, p.sigma2_user),
             gain(ch.h_u, b.f_u) / p.sigma2_user, 1e-12);
  expect_rel(sinr_user(b, ch.h_u, ch.h_t, ch.h_tu, 0.0, p.sigma2_tag, p.sigma2_user),
             gain(ch.h_u, b.f_u) / (gain(ch.h_u, b.f_t) + p.sigma2_user), 1e-12);

  const double alpha = 1e8;
  const BeamPair big{std::sqrt(alpha) * b.f_t, std::sqrt(alpha) * b.f_u};
  const double limit = gain(ch.h_u, b.f_u) /
                       (gain(ch.h_u, b.f_t) + p.eta * std::norm(ch.h_tu) * (gain(ch.h_t, b.f_t) + gain(ch.h_t, b.f_u)));
  expect_rel(sinr_user(big, ch.h_u, ch.h_t, ch.h_tu, p.eta, p.sigma2_tag, p.sigma2_user), limit, 1e-3);
}

TEST(Evaluate, ZeroBeamsAndCrossCheck) {
  const ChannelSet ch = test::reference_channels();
  const SystemParams p = test::default_params();
  const SinrReport z = evaluate(ch, {CVector::Zero(4), CVector::Zero(4)}, p);
  EXPECT_EQ(z.sinr_tag, 0.0);
  EXPECT_EQ(z.sinr_reader, 0.0);
  EXPECT_EQ(z.sinr_user, 0.0);
  EXPECT_EQ(z.power_tx, 0.0);

  test::SceneGenerator g(11);
  const BeamPair b = random_beams(g, 4);
  const SinrReport r = evaluate(ch, b, p);
  EXPECT_EQ(r.sinr_tag, sinr_tag(b, ch.h_t, p.sigma2_tag));
  EXPECT_EQ(r.sinr_reader, sinr_reader(b, ch.h_t, Combiner(ch.h_t), p.eta, p.sigma2_tag, p.sigma2_reader));
  EXPECT_EQ(r.sinr_user, sinr_user(b, ch.h_u, ch.h_t, ch.h_tu, p.eta, p.sigma2_tag, p.sigma2_user));
  EXPECT_DOUBLE_EQ(r.power_tx, b.f_t.squaredNorm() + b.f_u.squaredNorm());
  EXPECT_THROW(evaluate(ch, {CVector::Zero(3), CVector::Zero(4)}, p), std::invalid_argument);
}

TEST(Evaluate, PhaseInvariance) {
  test::SceneGenerator g(17);
  for (int k = 0; k < 50; ++k) {
    const auto s = g.next();
    const int n = s.scene.array.n_tx;
    const BeamPair b = random_beams(g, n);
    const SinrReport r0 = evaluate(s.channels, b, s.params);
    const BeamPair rot{std::polar(1.0, g.uniform(-3.0, 3.0)) * b.f_t, std::polar(1.0, g.uniform(-3.0, 3.0)) * b.f_u};
    const SinrReport r1 = evaluate(s.channels, rot, s.params);
    expect_rel(r1.sinr_tag, r0.sinr_tag, 1e-10);
    expect_rel(r1.sinr_reader, r0.sinr_reader, 1e-10);
    expect_rel(r1.sinr_user, r0.sinr_user, 1e-10);
    expect_rel(r1.power_tx, r0.power_tx, 1e-10);
  }
}

TEST(SinrTag, MonotoneInSensingPower) {
  const ChannelSet ch = test::reference_channels(60.0, 5.0);
  test::SceneGenerator g(23);
  const BeamPair b = random_beams(g, 4);
  double prev = -1.0;
  for (double s : {0.0, 0.1, 0.5, 1.0, 2.0, 10.0}) {
    const double v = sinr_tag({s * b.f_t, b.f_u}, ch.h_t, 1e-13);
    if (s > 0.0) EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(Scaling, TermwiseHomogeneity) {
  const ChannelSet ch = test::reference_channels(70.0, 5.0);
  test::SceneGenerator g(29);
  const BeamPair b = random_beams(g, 4);
  const double alpha = 7.5;
  const BeamPair s{std::sqrt(alpha) * b.f_t, std::sqrt(alpha) * b.f_u};
  for (const CVector* h : {&ch.h_t, &ch.h_u}) {
    expect_rel(gain(*h, s.f_t), alpha * gain(*h, b.f_t), 1e-12);
    expect_rel(gain(*h, s.f_u), alpha * gain(*h, b.f_u), 1e-12);
  }
  expect_rel(s.power(), alpha * b.power(), 1e-12);
}
