#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "tetlab/gaussian.hpp"
#include "tetlab/models.hpp"
#include "tetlab/tet1d.hpp"

namespace tetlab {

struct EnsembleConfig {
  std::size_t n_samples = 10000;
  std::uint64_t seed = 1;
  std::size_t bins = 100;
  double range_lo = 0.0;
  double range_hi = 1.0;

  void validate() const;
};

/// Event counts on uniform bins. density = count / (events * bin width).
struct Histogram {
  std::vector<double> bin_edges;
  std::vector<std::uint64_t> counts;
  std::vector<double> normalized_density;

  std::uint64_t total() const noexcept;
  double bin_width() const noexcept { return bin_edges[1] - bin_edges[0]; }
  double bin_center(std::size_t i) const noexcept { return 0.5 * (bin_edges[i] + bin_edges[i + 1]); }
};

/// SplitMix64. Every sample index gets its own stream, derived from the
/// master seed, so draws do not depend on evaluation order.
class SampleStream {
 public:
  using result_type = std::uint64_t;
  SampleStream(std::uint64_t seed, std::uint64_t index) noexcept;
  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }
  result_type operator()() noexcept;
  /// Uniform on (0, 1), never exactly 0 or 1.
  double uniform() noexcept;
  /// Standard normal by Box-Muller.
  double normal() noexcept;

 private:
  std::uint64_t state_;
};

/// n_samples draws from G(q̄0, σ0).
std::vector<double> sample_initial_positions(const GaussianPrep1D& prep, const EnsembleConfig& cfg);

/// Bins into `cfg`'s range; values outside are dropped. Density is per
/// recorded in-range event.
Histogram make_histogram(const std::vector<double>& events, const EnsembleConfig& cfg);

/// Records every crossing of `q_detect` by every sampled trajectory.
Histogram count_crossing_times(const TrajectoryFamily1D& traj, const std::vector<double>& samples,
                               double q_detect, const EnsembleConfig& cfg);

/// Raw crossing events, in sample order.
std::vector<double> crossing_events(const TrajectoryFamily1D& traj, const std::vector<double>& samples,
                                    double q_detect);

/// Screen positions y(t*) with x0 uniform on [0, x_d], t* = (x_d - x0) m/|p̄0x|
/// and y0 drawn from |ψ_y(y0, 0)|^2 by inverse CDF.
std::vector<double> screen_events(const DoubleSlitConfig& ds, const TrajectoryFamily1D& bm_y,
                                  const EnsembleConfig& cfg);

Histogram count_screen_positions(const DoubleSlitConfig& ds, const TrajectoryFamily1D& bm_y,
                                 const EnsembleConfig& cfg);

}  // namespace tetlab
