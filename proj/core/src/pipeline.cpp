#include "tetlab/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "tetlab/errors.hpp"
#include "tetlab/kijowski.hpp"
#include "tetlab/models.hpp"
#include "tetlab/numeric.hpp"
#include "tetlab/parallel.hpp"
#include "tetlab/phasespace.hpp"
#include "tetlab/tet1d.hpp"

namespace tetlab {

namespace {

constexpr std::size_t kScreenTimeNodes = 513;

double get(const ParameterSet& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw InvalidParameter("missing parameter: " + key);
  return it->second;
}

std::size_t get_count(const ParameterSet& p, const std::string& key, double min) {
  const double v = get(p, key);
  if (!std::isfinite(v) || v != std::floor(v) || v < min || v > 1e9) {
    throw InvalidParameter("parameter " + key + " must be an integer >= " + std::to_string(static_cast<long>(min)));
  }
  return static_cast<std::size_t>(v);
}

double get_positive(const ParameterSet& p, const std::string& key) {
  const double v = get(p, key);
  if (!(v > 0.0) || !std::isfinite(v)) throw InvalidParameter("parameter " + key + " must be positive");
  return v;
}

std::uint64_t get_seed(const ParameterSet& p) {
  const double v = get(p, "seed");
  if (!std::isfinite(v) || v != std::floor(v) || v < 0.0 || v > 9007199254740992.0) {
    throw InvalidParameter("parameter seed must be an integer in [0, 2^53]");
  }
  return static_cast<std::uint64_t>(v);
}

GaussianPrep1D prep_from(const ParameterSet& p, bool with_gravity) {
  GaussianPrep1D g;
  g.sigma0 = get_positive(p, "sigma0");
  g.mean_q = get(p, "q0bar");
  g.mean_p = get(p, "p0bar");
  g.mass = get_positive(p, "mass");
  g.hbar = get_positive(p, "hbar");
  g.gravity = with_gravity ? get_positive(p, "g") : 0.0;
  if (!std::isfinite(g.mean_q) || !std::isfinite(g.mean_p)) {
    throw InvalidParameter("q0bar and p0bar must be finite");
  }
  g.validate();
  return g;
}

DoubleSlitConfig slit_from(const ParameterSet& p) {
  DoubleSlitConfig c;
  c.prep_y.sigma0 = get_positive(p, "sigma0");
  c.prep_y.mass = get_positive(p, "mass");
  c.prep_y.hbar = get_positive(p, "hbar");
  c.prep_y.mean_q = 0.0;
  c.prep_y.mean_p = get(p, "p0y");
  if (!std::isfinite(c.prep_y.mean_p)) throw InvalidParameter("p0y must be finite");
  c.slit_offset = get_positive(p, "ys");
  c.p0x = get_positive(p, "p0x");
  c.detector_x = get_positive(p, "xd");
  c.validate();
  return c;
}

void check_keys(ExperimentKind kind, const ParameterSet& p) {
  const auto& ok = allowed_keys(kind);
  for (const auto& [k, v] : p) {
    if (std::find(ok.begin(), ok.end(), k) == ok.end()) {
      throw InvalidParameter("unknown parameter '" + k + "' for " + to_string(kind));
    }
  }
}

ExperimentResult run_free_particle(ParameterSet p, const std::string& id) {
  const auto prep = prep_from(p, false);
  const auto n = get_count(p, "grid_n", 2);
  if (!p.contains("t_max")) p["t_max"] = default_window_free_particle(prep, 0.0).hi;
  const double t_max = get_positive(p, "t_max");
  const Grid1D grid(0.0, t_max, n);
  const TimeWindow window{0.0, t_max};

  ExperimentResult r;
  r.id = id;
  r.kind = ExperimentKind::free_particle;
  r.abscissa = "t";

  const auto fam = classical_free_family(prep, window);
  const auto pp = gaussian_phase_preparation(prep);
  r.curves.push_back(tabulate_phase_flighttime(fam, pp, 0.0, grid, default_momentum_grid(pp), "classical"));

  const auto bm = freeparticle_bm_family(prep, window);
  r.curves.push_back(
      tabulate_flighttime(bm, gaussian_preparation(prep), 0.0, grid, FlightTimeMethod::branch_sum, "bm"));

  KijowskiQuery kq;
  kq.prep = prep;
  r.curves.push_back(tabulate_kijowski(kq, 0.0, grid));
  r.params = std::move(p);
  return r;
}

ExperimentResult run_free_fall(ParameterSet p, const std::string& id, const ExperimentOptions& opt) {
  const auto prep = prep_from(p, true);
  const auto n = get_count(p, "grid_n", 2);
  const auto samples = get_count(p, "samples", 100);
  const auto bins = get_count(p, "bins", 10);
  const auto seed = get_seed(p);
  const double natural = default_window_free_fall(prep, 0.0).hi;
  if (!p.contains("t_max")) p["t_max"] = natural;
  const double t_max = get_positive(p, "t_max");
  const Grid1D grid(0.0, t_max, n);
  // Crossing counts are taken over the full natural window even when the
  // tabulation range is shorter.
  const TimeWindow window{0.0, std::max(t_max, natural)};
  const auto fam = freefall_bm_family(prep, window);

  ExperimentResult r;
  r.id = id;
  r.kind = ExperimentKind::free_fall;
  r.abscissa = "t";
  r.seed = seed;

  if (opt.trajectory_bundle) {
    EnsembleConfig ec;
    ec.n_samples = std::max<std::size_t>(opt.bundle_size, 100);
    ec.seed = seed;
    auto q0 = sample_initial_positions(prep, ec);
    q0.resize(opt.bundle_size);
    TrajectoryBundle b;
    b.times = grid;
    b.initial = q0;
    b.paths.resize(q0.size());
    for (std::size_t k = 0; k < q0.size(); ++k) {
      b.paths[k].resize(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i) b.paths[k][i] = fam.q_of(q0[k], grid[i]);
    }
    r.trajectories = std::move(b);
    r.params = std::move(p);
    return r;
  }

  r.curves.push_back(
      tabulate_flighttime(fam, gaussian_preparation(prep), 0.0, grid, FlightTimeMethod::branch_sum, "bm"));
  r.curves.push_back(freefall_ml_pdf(prep, 0.0, grid));

  EnsembleConfig ec;
  ec.n_samples = samples;
  ec.seed = seed;
  ec.bins = bins;
  ec.range_lo = 0.0;
  ec.range_hi = t_max;
  r.histogram = count_crossing_times(fam, sample_initial_positions(prep, ec), 0.0, ec);
  r.params = std::move(p);
  return r;
}

ExperimentResult run_double_slit(ParameterSet p, const std::string& id) {
  const auto cfg = slit_from(p);
  const auto n = get_count(p, "grid_n", 2);
  const auto samples = get_count(p, "samples", 100);
  const auto bins = get_count(p, "bins", 10);
  const auto seed = get_seed(p);
  if (!p.contains("y_halfwidth")) p["y_halfwidth"] = default_screen_halfwidth(cfg);
  const double half = get_positive(p, "y_halfwidth");
  const Grid1D y_grid(-half, half, n);

  ExperimentResult r;
  r.id = id;
  r.kind = ExperimentKind::double_slit;
  r.abscissa = "y";
  r.seed = seed;

  const DoubleSlitWave wave(cfg);
  const double td = cfg.flight_time();
  const Grid1D t_grid(0.0, td, kScreenTimeNodes);
  std::vector<double> uniform(t_grid.size());
  for (std::size_t i = 0; i < uniform.size(); ++i) uniform[i] = doubleslit_time_pdf(cfg, t_grid[i]);
  const SampledDistribution time_pdf(t_grid, std::move(uniform), "time");
  r.curves.push_back(
      marginalize_time([&](double y, double t) { return wave.density(y, t); }, time_pdf, y_grid, "bm"));
  r.curves.push_back(doubleslit_screen_pdf_ct(cfg, y_grid));

  EnsembleConfig ec;
  ec.n_samples = samples;
  ec.seed = seed;
  ec.bins = bins;
  ec.range_lo = -half;
  ec.range_hi = half;
  r.histogram = count_screen_positions(cfg, doubleslit_bm_y_family(cfg), ec);
  r.params = std::move(p);
  return r;
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::free_particle: return "free-particle";
    case ExperimentKind::free_fall: return "free-fall";
    case ExperimentKind::double_slit: return "double-slit";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(const std::string& name) {
  if (name == "free-particle") return ExperimentKind::free_particle;
  if (name == "free-fall") return ExperimentKind::free_fall;
  if (name == "double-slit") return ExperimentKind::double_slit;
  throw InvalidParameter("unknown experiment kind: " + name);
}

const SampledDistribution& ExperimentResult::curve(const std::string& label) const {
  for (const auto& c : curves) {
    if (c.label == label) return c;
  }
  throw InvalidParameter("no curve labelled " + label);
}

SampledDistribution marginalize_time(const std::function<double(double, double)>& cond_pdf,
                                     const SampledDistribution& time_pdf, const Grid1D& y_grid,
                                     std::string label) {
  const double mass = integral(time_pdf);
  if (!(std::abs(mass - 1.0) <= 1e-6)) {
    throw InvalidParameter("marginalize_time: time density is not normalized");
  }
  const auto& tg = time_pdf.grid;
  std::vector<double> out(y_grid.size());
  parallel_for(out.size(), [&](std::size_t i) {
    std::vector<double> v(tg.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
      const double w = time_pdf.density[k];
      v[k] = w == 0.0 ? 0.0 : cond_pdf(y_grid[i], tg[k]) * w;
    }
    out[i] = trapezoid(std::span<const double>(v), tg.spacing());
  });
  return normalize(SampledDistribution(y_grid, std::move(out), std::move(label)));
}

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = {"fig1a", "fig1b", "fig2a", "fig2b",
                                               "fig3a", "fig3b", "fig4a", "fig4b"};
  return ids;
}

ExperimentKind figure_kind(const std::string& id) {
  if (id == "fig1a" || id == "fig1b") return ExperimentKind::free_particle;
  if (id == "fig2a" || id == "fig2b" || id == "fig3a" || id == "fig3b") return ExperimentKind::free_fall;
  if (id == "fig4a" || id == "fig4b") return ExperimentKind::double_slit;
  throw InvalidParameter("unknown figure id: " + id);
}

const std::vector<std::string>& allowed_keys(ExperimentKind kind) {
  static const std::vector<std::string> fp = {"sigma0", "q0bar", "p0bar", "mass", "hbar", "grid_n", "t_max"};
  static const std::vector<std::string> ff = {"sigma0", "q0bar", "p0bar",  "mass", "hbar", "g",
                                              "samples", "seed", "bins", "grid_n", "t_max"};
  static const std::vector<std::string> ds = {"sigma0",  "mass", "hbar", "xd",     "ys",         "p0x",
                                              "p0y", "samples", "seed", "bins", "grid_n", "y_halfwidth"};
  switch (kind) {
    case ExperimentKind::free_particle: return fp;
    case ExperimentKind::free_fall: return ff;
    case ExperimentKind::double_slit: return ds;
  }
  return fp;
}

ParameterSet default_parameters(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::free_particle:
      return {{"sigma0", 2.0}, {"q0bar", -15.0}, {"p0bar", 1.0}, {"mass", 0.5}, {"hbar", 1.0}, {"grid_n", 600.0}};
    case ExperimentKind::free_fall:
      return {{"sigma0", 1.0}, {"q0bar", -8.0}, {"p0bar", 9.0}, {"mass", 0.5}, {"hbar", 1.0}, {"g", 10.0},
              {"samples", 10000.0}, {"seed", 1.0}, {"bins", 100.0}, {"grid_n", 600.0}};
    case ExperimentKind::double_slit:
      return {{"sigma0", 1.0}, {"mass", 0.5}, {"hbar", 1.0}, {"xd", 1.0}, {"ys", 2.0}, {"p0x", 1.0},
              {"p0y", 2.0}, {"samples", 10000.0}, {"seed", 1.0}, {"bins", 100.0}, {"grid_n", 801.0}};
  }
  return {};
}

ParameterSet figure_preset(const std::string& id) {
  auto p = default_parameters(figure_kind(id));
  if (id == "fig1a") {
    p["t_max"] = 15.0;
  } else if (id == "fig1b") {
    p["p0bar"] = 20.0;
    p["mass"] = 10.0;
    p["t_max"] = 15.0;
  } else if (id == "fig2a") {
    p["p0bar"] = 10.0;
  } else if (id == "fig2b") {
    p["sigma0"] = 2.0;
    p["p0bar"] = 40.0;
    p["mass"] = 2.0;
  } else if (id == "fig3b") {
    p["sigma0"] = 2.0;
    p["p0bar"] = 36.0;
    p["mass"] = 2.0;
  } else if (id == "fig4b") {
    p["xd"] = 3.0;
  }
  return p;
}

ExperimentResult run_experiment(ExperimentKind kind, const ParameterSet& params, const std::string& id,
                                const ExperimentOptions& opt) {
  check_keys(kind, params);
  if (opt.trajectory_bundle && kind != ExperimentKind::free_fall) {
    throw InvalidParameter("trajectory bundles are only produced for free fall");
  }
  switch (kind) {
    case ExperimentKind::free_particle: return run_free_particle(params, id);
    case ExperimentKind::free_fall: return run_free_fall(params, id, opt);
    case ExperimentKind::double_slit: return run_double_slit(params, id);
  }
  throw InvalidParameter("unknown experiment kind");
}

ExperimentResult run_figure(const std::string& id, const ParameterSet& overrides) {
  const auto kind = figure_kind(id);
  auto p = figure_preset(id);
  for (const auto& [k, v] : overrides) p[k] = v;
  ExperimentOptions opt;
  opt.trajectory_bundle = id == "fig2a" || id == "fig2b";
  return run_experiment(kind, p, id, opt);
}

}  // namespace tetlab
