#include "tetlab/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tetlab/errors.hpp"
#include "tetlab/parallel.hpp"

namespace tetlab {

void EnsembleConfig::validate() const {
  if (n_samples < 100) throw InvalidParameter("EnsembleConfig: n_samples must be >= 100");
  if (bins < 10) throw InvalidParameter("EnsembleConfig: bins must be >= 10");
  if (!(range_hi > range_lo) || !std::isfinite(range_lo) || !std::isfinite(range_hi)) {
    throw InvalidParameter("EnsembleConfig: range must satisfy lo < hi");
  }
}

std::uint64_t Histogram::total() const noexcept {
  std::uint64_t s = 0;
  for (auto c : counts) s += c;
  return s;
}

SampleStream::SampleStream(std::uint64_t seed, std::uint64_t index) noexcept
    : state_(seed ^ (index * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL)) {
  (*this)();
}

SampleStream::result_type SampleStream::operator()() noexcept {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SampleStream::uniform() noexcept {
  // 53 random bits, offset by half an ulp so 0 never occurs.
  return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

double SampleStream::normal() noexcept {
  const double u1 = uniform(), u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> sample_initial_positions(const GaussianPrep1D& prep, const EnsembleConfig& cfg) {
  prep.validate();
  cfg.validate();
  std::vector<double> out(cfg.n_samples);
  for (std::size_t i = 0; i < out.size(); ++i) {
    SampleStream s(cfg.seed, i);
    out[i] = prep.mean_q + prep.sigma0 * s.normal();
  }
  return out;
}

Histogram make_histogram(const std::vector<double>& events, const EnsembleConfig& cfg) {
  if (cfg.bins < 1 || !(cfg.range_hi > cfg.range_lo)) {
    throw InvalidParameter("make_histogram: bad binning");
  }
  Histogram h;
  const double w = (cfg.range_hi - cfg.range_lo) / static_cast<double>(cfg.bins);
  h.bin_edges.resize(cfg.bins + 1);
  for (std::size_t i = 0; i <= cfg.bins; ++i) h.bin_edges[i] = cfg.range_lo + static_cast<double>(i) * w;
  h.bin_edges.back() = cfg.range_hi;
  h.counts.assign(cfg.bins, 0);
  for (double e : events) {
    if (!(e >= cfg.range_lo) || !(e <= cfg.range_hi)) continue;
    auto k = static_cast<std::size_t>((e - cfg.range_lo) / w);
    if (k >= cfg.bins) k = cfg.bins - 1;
    ++h.counts[k];
  }
  const auto n = h.total();
  h.normalized_density.assign(cfg.bins, 0.0);
  if (n > 0) {
    for (std::size_t i = 0; i < cfg.bins; ++i) {
      h.normalized_density[i] = static_cast<double>(h.counts[i]) / (static_cast<double>(n) * w);
    }
  }
  return h;
}

std::vector<double> crossing_events(const TrajectoryFamily1D& traj, const std::vector<double>& samples,
                                    double q_detect) {
  std::vector<std::vector<double>> per(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) {
    per[i] = crossing_times(traj, q_detect, samples[i]).times;
  });
  std::vector<double> events;
  for (auto& v : per) events.insert(events.end(), v.begin(), v.end());
  return events;
}

Histogram count_crossing_times(const TrajectoryFamily1D& traj, const std::vector<double>& samples,
                               double q_detect, const EnsembleConfig& cfg) {
  cfg.validate();
  return make_histogram(crossing_events(traj, samples, q_detect), cfg);
}

std::vector<double> screen_events(const DoubleSlitConfig& ds, const TrajectoryFamily1D& bm_y,
                                  const EnsembleConfig& cfg) {
  cfg.validate();
  const DoubleSlitWave wave(ds);
  // Fine tabulated CDF of |ψ_y(y, 0)|^2.
  const double half = wave.initial_halfwidth();
  const std::size_t n = 20001;
  const Grid1D g(-half, half, n);
  std::vector<double> cdf(n, 0.0);
  double prev = wave.density(g[0], 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    const double cur = wave.density(g[i], 0.0);
    cdf[i] = cdf[i - 1] + 0.5 * (prev + cur) * g.spacing();
    prev = cur;
  }
  const double total = cdf.back();
  for (auto& c : cdf) c /= total;

  const double td = ds.flight_time();
  std::vector<double> out(cfg.n_samples);
  parallel_for(out.size(), [&](std::size_t i) {
    SampleStream s(cfg.seed, i);
    const double x0 = s.uniform() * ds.detector_x;
    const double u = s.uniform();
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    const std::size_t k = std::clamp<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), 1, n - 1);
    const double c0 = cdf[k - 1], c1 = cdf[k];
    const double frac = c1 > c0 ? (u - c0) / (c1 - c0) : 0.5;
    const double y0 = g[k - 1] + frac * g.spacing();
    const double tstar = td * (1.0 - x0 / ds.detector_x);
    out[i] = bm_y.q_of(y0, tstar);
  });
  return out;
}

Histogram count_screen_positions(const DoubleSlitConfig& ds, const TrajectoryFamily1D& bm_y,
                                 const EnsembleConfig& cfg) {
  return make_histogram(screen_events(ds, bm_y, cfg), cfg);
}

}  // namespace tetlab
