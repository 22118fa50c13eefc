#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "tetlab/distribution.hpp"
#include "tetlab/errors.hpp"
#include "tetlab/gaussian.hpp"
#include "tetlab/numeric.hpp"
#include "tetlab/parallel.hpp"

using namespace tetlab;

TEST(Gaussian, StandardPeak) {
  EXPECT_NEAR(eval_gaussian(0.0, 0.0, 1.0), 1.0 / std::sqrt(2.0 * std::numbers::pi), 1e-15);
  EXPECT_NEAR(eval_gaussian(0.0, 0.0, 1.0), 0.3989422804, 1e-10);
}

TEST(Gaussian, PeakAndSymmetry) {
  EXPECT_DOUBLE_EQ(eval_gaussian(3.0, 3.0, 2.5), 1.0 / (2.5 * std::sqrt(2.0 * std::numbers::pi)));
  EXPECT_DOUBLE_EQ(eval_gaussian(3.0 + 1.7, 3.0, 2.5), eval_gaussian(3.0 - 1.7, 3.0, 2.5));
  EXPECT_GT(eval_gaussian(30.0, 0.0, 1.0), 0.0);
}

TEST(Gaussian, RejectsBadWidth) {
  EXPECT_THROW(eval_gaussian(0.0, 0.0, 0.0), InvalidParameter);
  EXPECT_THROW(eval_gaussian(0.0, 0.0, -1.0), InvalidParameter);
}

TEST(Gaussian, IntegratesToOne) {
  const Grid1D g(-10.0 * 1.3 + 0.4, 10.0 * 1.3 + 0.4, 2001);
  EXPECT_NEAR(trapezoid([](double u) { return eval_gaussian(u, 0.4, 1.3); }, g), 1.0, 1e-8);
}

TEST(GaussianPrep, DerivedQuantities) {
  GaussianPrep1D p{-15.0, 1.0, 2.0, 0.5, 1.0, 0.0};
  EXPECT_NO_THROW(p.validate());
  EXPECT_DOUBLE_EQ(p.omega(), 0.25);
  EXPECT_DOUBLE_EQ(p.sigma_p(), 0.25);
  EXPECT_DOUBLE_EQ(p.sigma_t(7.5), 4.25);
  EXPECT_DOUBLE_EQ(p.center(7.5), 0.0);
  p.sigma0 = 0.0;
  EXPECT_THROW(p.validate(), InvalidParameter);
  p.sigma0 = 1.0;
  p.gravity = -1.0;
  EXPECT_THROW(p.validate(), InvalidParameter);
}

TEST(Grid, UniformNodes) {
  const Grid1D g(0.0, 15.0, 600);
  EXPECT_EQ(g.size(), 600u);
  EXPECT_DOUBLE_EQ(g[0], 0.0);
  EXPECT_DOUBLE_EQ(g[599], 15.0);
  for (std::size_t i = 1; i < g.size(); ++i) {
    EXPECT_GT(g[i], g[i - 1]);
    EXPECT_NEAR(g[i] - g[i - 1], g.spacing(), 1e-13);
  }
  EXPECT_THROW(Grid1D(1.0, 1.0, 10), InvalidParameter);
  EXPECT_THROW(Grid1D(0.0, 1.0, 1), InvalidParameter);
}

TEST(Distribution, NormalizeConstant) {
  const Grid1D g(0.0, 1.0, 11);
  const auto d = normalize(SampledDistribution(g, std::vector<double>(11, 2.0), "c"));
  for (double v : d.density) EXPECT_DOUBLE_EQ(v, 1.0);
  EXPECT_EQ(d.label, "c");
}

TEST(Distribution, NormalizeIdempotent) {
  const Grid1D g(-5.0, 5.0, 501);
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::exp(-g[i] * g[i]) * (1.0 + 0.3 * std::sin(g[i]));
  const auto a = normalize(SampledDistribution(g, v, "x"));
  const auto b = normalize(a);
  EXPECT_NEAR(integral(a), 1.0, 1e-12);
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(a.density[i], b.density[i], 1e-12);
}

TEST(Distribution, NormalizeErrors) {
  const Grid1D g(0.0, 1.0, 5);
  EXPECT_THROW(normalize(SampledDistribution(g, std::vector<double>(5, 0.0), "z")), DegenerateDistribution);
  std::vector<double> v(5, 1.0);
  v[2] = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(normalize(SampledDistribution(g, v, "n")), DegenerateDistribution);
  v[2] = std::numeric_limits<double>::infinity();
  EXPECT_THROW(normalize(SampledDistribution(g, v, "i")), DegenerateDistribution);
  EXPECT_THROW(SampledDistribution(g, std::vector<double>(4, 1.0), "short"), InvalidParameter);
}

TEST(Distribution, MomentsOfGaussian) {
  const Grid1D g(-20.0, 20.0, 4001);
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = eval_gaussian(g[i], 1.5, 2.0);
  const auto d = normalize(SampledDistribution(g, v, "g"));
  EXPECT_NEAR(mean(d), 1.5, 1e-9);
  EXPECT_NEAR(variance(d), 4.0, 1e-6);
  EXPECT_NEAR(skewness(d), 0.0, 1e-9);
  EXPECT_NEAR(mass_in(d, 1.5, 100.0), 0.5, 1e-6);
  EXPECT_NEAR(peak(d), eval_gaussian(1.5, 1.5, 2.0), 1e-4);
  const auto m = local_maxima(d);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_NEAR(m[0], 1.5, g.spacing());
}

TEST(Distribution, Metrics) {
  const Grid1D g(0.0, 1.0, 101);
  const SampledDistribution a(g, std::vector<double>(101, 1.0), "a");
  std::vector<double> vb(101);
  for (std::size_t i = 0; i < vb.size(); ++i) vb[i] = 2.0 * g[i];
  const SampledDistribution b(g, vb, "b");
  EXPECT_NEAR(l1_distance(a, b), 0.5, 1e-4);
  EXPECT_NEAR(sup_distance(a, b), 1.0, 1e-12);
  EXPECT_NEAR(b.at(0.255), 0.51, 1e-12);
  EXPECT_EQ(b.at(-0.1), 0.0);
  EXPECT_NEAR(visibility(b, 0.5, 1.0), (2.0 - 1.0) / 3.0, 1e-12);
  const auto r = resample(b, Grid1D(0.0, 1.0, 11));
  for (std::size_t i = 0; i < 11; ++i) EXPECT_NEAR(r.density[i], 0.2 * i, 1e-12);
}

TEST(FindRoots, SpecExamples) {
  auto r1 = find_roots([](double t) { return t - 1.0; }, 0.0, 2.0, 4096);
  ASSERT_EQ(r1.size(), 1u);
  EXPECT_NEAR(r1[0], 1.0, 1e-9);
  auto r2 = find_roots([](double t) { return (t - 1.0) * (t - 3.0); }, 0.0, 4.0, 4096);
  ASSERT_EQ(r2.size(), 2u);
  EXPECT_NEAR(r2[0], 1.0, 1e-9);
  EXPECT_NEAR(r2[1], 3.0, 1e-9);
  EXPECT_TRUE(find_roots([](double t) { return t * t + 1.0; }, 0.0, 4.0, 4096).empty());
}

TEST(FindRoots, PolynomialWithFourRoots) {
  const double roots[] = {-1.7, 0.3, 0.31, 2.9};
  auto f = [&](double x) {
    double v = 1.0;
    for (double r : roots) v *= (x - r);
    return v;
  };
  const auto r = find_roots(f, -3.0, 3.0, 4096);
  ASSERT_EQ(r.size(), 4u);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(r[i], roots[i], 1e-9);
}

TEST(FindRoots, RootOnNodeReportedOnce) {
  const auto r = find_roots([](double t) { return t - 0.5; }, 0.0, 1.0, 4);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0], 0.5);
}

TEST(CentralDifference, MatchesDerivative) {
  EXPECT_NEAR(central_difference([](double x) { return std::sin(x); }, 0.7), std::cos(0.7), 1e-9);
  EXPECT_NEAR(central_difference([](double x) { return x * x * x; }, 100.0), 3e4, 1e-3);
}

TEST(GaussKronrod, RealAndComplex) {
  auto r = integrate_gauss_kronrod([](double x) { return std::exp(-x * x); }, -10.0, 10.0, 4, 1e-12);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, std::sqrt(std::numbers::pi), 1e-12);
  auto c = integrate_gauss_kronrod(
      [](double x) { return std::exp(std::complex<double>(0.0, 40.0 * x)); }, 0.0, 1.0, 8, 1e-12);
  EXPECT_TRUE(c.converged);
  const auto exact = (std::exp(std::complex<double>(0.0, 40.0)) - 1.0) / std::complex<double>(0.0, 40.0);
  EXPECT_NEAR(std::abs(c.value - exact), 0.0, 1e-12);
}

TEST(GaussKronrod, ReportsNonConvergence) {
  auto r = integrate_gauss_kronrod([](double x) { return 1.0 / std::sqrt(std::abs(x - 1.0 / 3.0)); }, 0.0, 1.0, 1,
                                   1e-15, 0.0, 8);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.panels, 8);
}

TEST(Parallel, ThreadCountParsing) {
  EXPECT_EQ(parse_thread_count("4"), 4u);
  EXPECT_FALSE(parse_thread_count("0"));
  EXPECT_FALSE(parse_thread_count("-2"));
  EXPECT_FALSE(parse_thread_count("two"));
  EXPECT_FALSE(parse_thread_count("3x"));
  EXPECT_FALSE(parse_thread_count(""));
}

TEST(Parallel, EveryIndexOnceAndExceptionsPropagate) {
  setenv("TETLAB_THREADS", "3", 1);
  std::vector<int> hits(1001, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_THROW(parallel_for(10, [](std::size_t i) {
                 if (i == 7) throw InvalidParameter("boom");
               }),
               InvalidParameter);
  unsetenv("TETLAB_THREADS");
}

TEST(Errors, AccuracyErrorCarriesEstimate) {
  const AccuracyError e("x", 1.5, 0.25);
  EXPECT_EQ(e.estimate(), 1.5);
  EXPECT_EQ(e.error_estimate(), 0.25);
  EXPECT_NO_THROW((void)dynamic_cast<const Error&>(e));
}
