#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "tetlab/errors.hpp"
#include "tetlab/models.hpp"
#include "tetlab/tet1d.hpp"

using namespace tetlab;

namespace {

GaussianPrep1D fig1a() { return {-15.0, 1.0, 2.0, 0.5, 1.0, 0.0}; }
GaussianPrep1D fig2a() { return {-8.0, 10.0, 1.0, 0.5, 1.0, 10.0}; }
GaussianPrep1D fig3a() { return {-8.0, 9.0, 1.0, 0.5, 1.0, 10.0}; }

// A hand-built family with a constant velocity, independent of the models.
TrajectoryFamily1D uniform_motion(double v, TimeWindow w) {
  TrajectoryFamily1D f;
  f.q_of = [v](double q0, double t) { return q0 + v * t; };
  f.dq_dq0 = [](double, double) { return 1.0; };
  f.dq_dt = [v](double, double) { return v; };
  f.q0_of = [v](double q, double t) { return q - v * t; };
  f.t_bracket = w;
  f.velocity_scale = std::abs(v);
  return f;
}

}  // namespace

TEST(CrossingTimes, FreeFallCentreFig3a) {
  const auto p = fig3a();
  const auto fam = freefall_bm_family(p, default_window_free_fall(p, 0.0));
  const auto c = crossing_times(fam, 0.0, p.mean_q);
  const auto exact = oracle::quadratic_roots(-5.0, 18.0, -8.0);
  ASSERT_EQ(c.branch_count(), 2u);
  EXPECT_NEAR(c.times[0], exact[0], 1e-9);
  EXPECT_NEAR(c.times[1], exact[1], 1e-9);
  EXPECT_NEAR(c.times[0], 0.51937, 1e-5);
  EXPECT_NEAR(c.times[1], 3.08062, 1e-5);
  for (double t : c.times) EXPECT_LT(std::abs(fam.q_of(p.mean_q, t)), 1e-9);
}

TEST(CrossingTimes, FreeFallCentreFig2a) {
  const auto p = fig2a();
  const auto fam = freefall_bm_family(p, default_window_free_fall(p, 0.0));
  const auto c = crossing_times(fam, 0.0, p.mean_q);
  const auto exact = oracle::quadratic_roots(-5.0, 20.0, -8.0);
  ASSERT_EQ(c.branch_count(), 2u);
  EXPECT_NEAR(c.times[0], exact[0], 1e-9);
  EXPECT_NEAR(c.times[1], exact[1], 1e-9);
  EXPECT_NEAR(c.times[0], 0.45080, 1e-5);
  EXPECT_NEAR(c.times[1], 3.54920, 1e-5);
}

TEST(CrossingTimes, FreeParticleCentre) {
  const auto p = fig1a();
  const auto fam = freeparticle_bm_family(p, {0.0, 15.0});
  const auto c = crossing_times(fam, 0.0, p.mean_q);
  ASSERT_EQ(c.branch_count(), 1u);
  EXPECT_NEAR(c.times[0], -p.mass * p.mean_q / p.mean_p, 1e-9);
  EXPECT_NEAR(c.times[0], 7.5, 1e-9);
  EXPECT_TRUE(crossing_times(fam, -20.0, p.mean_q).times.empty());
}

TEST(PositionPdf, IdentityAtTimeZero) {
  const auto p = fig1a();
  const auto fam = freeparticle_bm_family(p, {0.0, 15.0});
  const auto prep = gaussian_preparation(p);
  for (double q : {-20.0, -15.0, -11.3}) EXPECT_DOUBLE_EQ(position_pdf(fam, prep, q, 0.0), prep.rho0(q));
}

TEST(PositionPdf, PeakValueFig1a) {
  const auto p = fig1a();
  const auto fam = freeparticle_bm_family(p, {0.0, 15.0});
  const double v = position_pdf(fam, gaussian_preparation(p), 0.0, 7.5);
  EXPECT_NEAR(v, 1.0 / (4.25 * std::sqrt(2.0 * std::numbers::pi)), 1e-14);
  EXPECT_NEAR(v, 0.093870, 2e-6);
}

TEST(PositionPdf, EqualsPsiSquaredPointwise) {
  const auto p = fig1a();
  const auto fam = freeparticle_bm_family(p, {0.0, 15.0});
  const auto prep = gaussian_preparation(p);
  for (double t : {0.0, 1.0, 7.5, 14.0}) {
    const double c = p.center(t), s = p.sigma_t(t);
    for (double q = c - 8 * s; q <= c + 8 * s; q += s / 7) {
      const double a = position_pdf(fam, prep, q, t);
      const double b = freeparticle_psi_sq(p, q, t);
      EXPECT_NEAR(a / b, 1.0, 1e-9) << "q=" << q << " t=" << t;
    }
  }
}

TEST(PositionPdf, CausticReported) {
  auto fam = uniform_motion(1.0, {0.0, 1.0});
  fam.dq_dq0 = [](double, double) { return 0.0; };
  Preparation1D prep{[](double) { return 1.0; }, -1.0, 1.0};
  EXPECT_THROW(position_pdf(fam, prep, 0.0, 0.5), CausticSingularity);
}

TEST(FlightTime, CurrentAtCentreFig1a) {
  const auto p = fig1a();
  const auto fam = freeparticle_bm_family(p, {0.0, 15.0});
  const auto prep = gaussian_preparation(p);
  EXPECT_NEAR(fam.dq_dt(fam.q0_of(0.0, 7.5), 7.5), 2.0, 1e-12);
  const double j = flighttime_pdf_current(fam, prep, 0.0, 7.5);
  EXPECT_NEAR(j, 2.0 / (4.25 * std::sqrt(2.0 * std::numbers::pi)), 1e-12);
  EXPECT_NEAR(j, 0.187740, 3e-6);
  EXPECT_NEAR(flighttime_pdf(fam, prep, 0.0, 7.5), j, 1e-14);
}

TEST(FlightTime, BranchSumEqualsCurrentForFreeParticle) {
  const auto p = fig1a();
  const auto fam = freeparticle_bm_family(p, {0.0, 15.0});
  const auto prep = gaussian_preparation(p);
  for (double t = 0.5; t < 15.0; t += 0.37) {
    EXPECT_NEAR(flighttime_pdf(fam, prep, 0.0, t), flighttime_pdf_current(fam, prep, 0.0, t), 1e-13);
  }
  const Grid1D g(0.0, 15.0, 600);
  const auto a = tabulate_flighttime(fam, prep, 0.0, g, FlightTimeMethod::branch_sum);
  const auto b = tabulate_flighttime(fam, prep, 0.0, g, FlightTimeMethod::current);
  EXPECT_NEAR(mean(a), mean(b), 1e-6);
  EXPECT_NEAR(integral(a), 1.0, 1e-9);
  EXPECT_EQ(local_maxima(a).size(), 1u);
}

TEST(FlightTime, ZeroWhenUnreachable) {
  // Uniform motion to the right, detector behind every trajectory: the
  // inverted point never reaches q inside the bracket.
  const auto fam = uniform_motion(1.0, {0.0, 2.0});
  Preparation1D prep{[](double q0) { return std::exp(-q0 * q0); }, -5.0, 5.0};
  EXPECT_EQ(flighttime_pdf(fam, prep, -50.0, 3.0), 0.0);
}

TEST(FlightTime, ConsistencyConditionFiltersForeignRoots) {
  // The inverse map returns a q0 whose trajectory does not cross q at t.
  auto fam = uniform_motion(1.0, {0.0, 2.0});
  fam.q0_of = [](double q, double t) { return q - t + 10.0; };
  Preparation1D prep{[](double) { return 1.0; }, -20.0, 20.0};
  EXPECT_EQ(flighttime_pdf(fam, prep, 0.0, 1.0), 0.0);
  EXPECT_EQ(flighttime_pdf_current(fam, prep, 0.0, 1.0), 0.0);
}

TEST(FlightTime, TurningPointFlagged) {
  const auto p = fig2a();
  const auto fam = freefall_bm_family(p, default_window_free_fall(p, 0.0));
  const auto prep = gaussian_preparation(p);
  // Centre apex at t = p0/(m g) = 2.
  EXPECT_NEAR(fam.dq_dt(p.mean_q, 2.0), 0.0, 1e-12);
  const double q_apex = fam.q_of(p.mean_q, 2.0);
  EXPECT_THROW(flighttime_pdf(fam, prep, q_apex, 2.0), TurningPoint);
}

TEST(FlightTime, TabulationMasksTurningPoints) {
  const auto p = fig2a();
  const auto fam = freefall_bm_family(p, default_window_free_fall(p, 0.0));
  const double q_apex = fam.q_of(p.mean_q, 2.0);
  const Grid1D g(0.0, 4.0, 401);  // t = 2 is a node
  const auto d = tabulate_flighttime(fam, gaussian_preparation(p), q_apex, g, FlightTimeMethod::branch_sum);
  EXPECT_NEAR(integral(d), 1.0, 1e-9);
  for (double v : d.density) EXPECT_TRUE(std::isfinite(v));
}

TEST(FlightTime, Fig3aTwoPeaks) {
  const auto p = fig3a();
  const auto w = default_window_free_fall(p, 0.0);
  const auto fam = freefall_bm_family(p, w);
  const Grid1D g(0.0, w.hi, 600);
  const auto d = tabulate_flighttime(fam, gaussian_preparation(p), 0.0, g, FlightTimeMethod::branch_sum);
  const auto m = local_maxima(d);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_NEAR(m[0], 0.51937, 0.05);
  EXPECT_NEAR(m[1], 3.08062, 0.05);
}

TEST(FlightTime, PerTrajectoryBranchCount) {
  // Trajectories starting beyond the detector cross only on the way down.
  const GaussianPrep1D p{-8.0, 36.0, 2.0, 2.0, 1.0, 10.0};
  const auto fam = freefall_bm_family(p, default_window_free_fall(p, 0.0));
  EXPECT_EQ(crossing_times(fam, 0.0, 0.5).branch_count(), 1u);
  EXPECT_EQ(crossing_times(fam, 0.0, -8.0).branch_count(), 2u);
  const auto prep = gaussian_preparation(p);
  const double t = crossing_times(fam, 0.0, 0.5).times[0];
  EXPECT_NEAR(flighttime_pdf(fam, prep, 0.0, t),
              flighttime_pdf_current(fam, prep, 0.0, t, BranchWeighting::none), 1e-12);
}

TEST(Families, RoundTripAndDerivatives) {
  std::vector<std::pair<GaussianPrep1D, TrajectoryFamily1D>> cases;
  cases.emplace_back(fig1a(), freeparticle_bm_family(fig1a(), {0.0, 15.0}));
  cases.emplace_back(fig3a(), freefall_bm_family(fig3a(), {0.0, 4.7}));
  for (const auto& [p, fam] : cases) {
    for (double t = 0.0; t <= fam.t_bracket.hi; t += fam.t_bracket.hi / 13) {
      const double c = p.center(t), s = p.sigma_t(t);
      for (double q = c - 6 * s; q <= c + 6 * s; q += s / 3) {
        const double q0 = fam.q0_of(q, t);
        EXPECT_NEAR(fam.q_of(q0, t), q, 1e-8 * (1 + std::abs(q)));
        const double fd_q0 = central_difference([&](double x) { return fam.q_of(x, t); }, q0);
        EXPECT_NEAR(fam.dq_dq0(q0, t), fd_q0, 1e-5 * std::abs(fd_q0));
        if (t > 0.0) {
          const double fd_t = central_difference([&](double x) { return fam.q_of(q0, x); }, t);
          EXPECT_NEAR(fam.dq_dt(q0, t), fd_t, 1e-5 * std::max(1.0, std::abs(fd_t)));
        }
      }
    }
    EXPECT_EQ(fam.q_of(-3.25, 0.0), -3.25);
  }
}
