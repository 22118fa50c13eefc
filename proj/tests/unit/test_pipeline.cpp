#include <gtest/gtest.h>

#include <cmath>

#include "tetlab/errors.hpp"
#include "tetlab/models.hpp"
#include "tetlab/pipeline.hpp"

using namespace tetlab;

namespace {

DoubleSlitConfig fig4a() {
  DoubleSlitConfig c;
  c.prep_y = {0.0, 2.0, 1.0, 0.5, 1.0, 0.0};
  c.slit_offset = 2.0;
  c.detector_x = 1.0;
  return c;
}

SampledDistribution uniform_time(double td, std::size_t n) {
  const Grid1D g(0.0, td, n);
  return SampledDistribution(g, std::vector<double>(n, 1.0 / td), "u");
}

}  // namespace

TEST(MarginalizeTime, TimeIndependentConditionalUnchanged) {
  const Grid1D y(-5.0, 5.0, 201);
  auto cond = [](double yy, double) { return std::exp(-yy * yy / 2) / std::sqrt(2 * M_PI); };
  const auto out = marginalize_time(cond, uniform_time(0.5, 65), y, "m");
  std::vector<double> v(y.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = cond(y[i], 0.0);
  const auto ref = normalize(SampledDistribution(y, v, "r"));
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(out.density[i], ref.density[i], 1e-10);
  EXPECT_NEAR(integral(out), 1.0, 1e-6);
}

TEST(MarginalizeTime, SpikeReproducesSnapshot) {
  const auto c = fig4a();
  const DoubleSlitWave w(c);
  const double td = c.flight_time();
  const Grid1D tg(0.0, td, 101);
  std::vector<double> spike(tg.size(), 0.0);
  spike.back() = 2.0 / tg.spacing();
  const SampledDistribution tp(tg, spike, "spike");
  const Grid1D y(-8.0, 8.0, 401);
  const auto m = marginalize_time([&](double yy, double t) { return w.density(yy, t); }, tp, y);
  const auto ct = doubleslit_screen_pdf_ct(c, y);
  EXPECT_LT(sup_distance(m, ct), 1e-12);
}

TEST(MarginalizeTime, UniformReproducesScreenAverage) {
  const auto c = fig4a();
  const DoubleSlitWave w(c);
  const Grid1D y(-8.0, 8.0, 401);
  const auto m = marginalize_time([&](double yy, double t) { return w.density(yy, t); },
                                  uniform_time(c.flight_time(), 257), y);
  const auto bm = doubleslit_screen_pdf_bm(c, y, 257);
  EXPECT_LT(sup_distance(m, bm), 1e-12);
}

TEST(MarginalizeTime, RejectsUnnormalizedTimeDensity) {
  const auto bad = SampledDistribution(Grid1D(0.0, 1.0, 11), std::vector<double>(11, 2.0), "bad");
  EXPECT_THROW(marginalize_time([](double, double) { return 1.0; }, bad, Grid1D(0.0, 1.0, 5)), InvalidParameter);
}

TEST(Presets, CaptionValues) {
  const auto p = figure_preset("fig1a");
  EXPECT_EQ(p.at("sigma0"), 2.0);
  EXPECT_EQ(p.at("q0bar"), -15.0);
  EXPECT_EQ(p.at("p0bar"), 1.0);
  EXPECT_EQ(p.at("mass"), 0.5);
  EXPECT_EQ(p.at("hbar"), 1.0);
  const auto b = figure_preset("fig1b");
  EXPECT_EQ(b.at("p0bar"), 20.0);
  EXPECT_EQ(b.at("mass"), 10.0);
  const auto f3b = figure_preset("fig3b");
  EXPECT_EQ(f3b.at("sigma0"), 2.0);
  EXPECT_EQ(f3b.at("p0bar"), 36.0);
  EXPECT_EQ(f3b.at("mass"), 2.0);
  EXPECT_EQ(f3b.at("g"), 10.0);
  const auto f2a = figure_preset("fig2a");
  EXPECT_EQ(f2a.at("p0bar"), 10.0);
  const auto f4b = figure_preset("fig4b");
  EXPECT_EQ(f4b.at("xd"), 3.0);
  EXPECT_EQ(f4b.at("ys"), 2.0);
  EXPECT_EQ(f4b.at("p0y"), 2.0);
  EXPECT_THROW(figure_preset("bogus"), InvalidParameter);
  EXPECT_THROW(run_figure("fig5a"), InvalidParameter);
}

TEST(RunFigure, Fig1aCurves) {
  const auto r = run_figure("fig1a");
  ASSERT_EQ(r.curves.size(), 3u);
  EXPECT_EQ(r.curves[0].label, "classical");
  EXPECT_EQ(r.curves[1].label, "bm");
  EXPECT_EQ(r.curves[2].label, "kijowski");
  EXPECT_EQ(r.abscissa, "t");
  for (const auto& c : r.curves) {
    EXPECT_TRUE(c.grid == r.curves[0].grid);
    EXPECT_NEAR(integral(c), 1.0, 1e-9);
  }
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) EXPECT_LT(l1_distance(r.curves[i], r.curves[j]), 0.02);
  EXPECT_FALSE(r.histogram);
}

TEST(RunFigure, Fig2Bundle) {
  const auto r = run_figure("fig2a");
  ASSERT_TRUE(r.trajectories);
  EXPECT_EQ(r.trajectories->paths.size(), 100u);
  EXPECT_TRUE(r.curves.empty());
  for (std::size_t k = 0; k < 100; ++k) EXPECT_EQ(r.trajectories->paths[k][0], r.trajectories->initial[k]);
}

TEST(RunFigure, Fig3aContents) {
  const auto r = run_figure("fig3a", {{"samples", 2000}});
  ASSERT_EQ(r.curves.size(), 2u);
  EXPECT_EQ(r.curves[0].label, "bm");
  EXPECT_EQ(r.curves[1].label, "ml");
  ASSERT_TRUE(r.histogram);
  EXPECT_EQ(r.histogram->total(), 4000u);
  EXPECT_EQ(r.params.at("samples"), 2000.0);
  EXPECT_GT(r.params.at("t_max"), 4.0);
}

TEST(RunFigure, Fig4bContents) {
  const auto r = run_figure("fig4b", {{"samples", 500}, {"grid_n", 201}});
  ASSERT_EQ(r.curves.size(), 2u);
  EXPECT_EQ(r.curves[0].label, "bm");
  EXPECT_EQ(r.curves[1].label, "ct");
  EXPECT_EQ(r.abscissa, "y");
  ASSERT_TRUE(r.histogram);
  EXPECT_EQ(r.curve("ct").grid.size(), 201u);
  EXPECT_THROW((void)r.curve("ml"), InvalidParameter);
}

TEST(RunFigure, Deterministic) {
  const auto a = run_figure("fig3a", {{"samples", 1000}, {"seed", 77}});
  const auto b = run_figure("fig3a", {{"samples", 1000}, {"seed", 77}});
  EXPECT_EQ(a.curves[0].density, b.curves[0].density);
  EXPECT_EQ(a.histogram->counts, b.histogram->counts);
  EXPECT_EQ(a.seed, 77u);
}

TEST(RunExperiment, RejectsBadParameters) {
  auto p = default_parameters(ExperimentKind::free_particle);
  p["g"] = 10.0;
  EXPECT_THROW(run_experiment(ExperimentKind::free_particle, p, "x"), InvalidParameter);
  p = default_parameters(ExperimentKind::free_fall);
  p["samples"] = 10.5;
  EXPECT_THROW(run_experiment(ExperimentKind::free_fall, p, "x"), InvalidParameter);
  p = default_parameters(ExperimentKind::double_slit);
  p["ys"] = -1.0;
  EXPECT_THROW(run_experiment(ExperimentKind::double_slit, p, "x"), InvalidParameter);
  EXPECT_THROW(run_figure("fig1a", {{"sigma0", 0.0}}), InvalidParameter);
  EXPECT_THROW(parse_experiment_kind("double_slit"), InvalidParameter);
}
