#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tetlab {

/// Uniform grid of `n_points` nodes on [lo, hi], endpoints included.
class Grid1D {
 public:
  Grid1D(double lo, double hi, std::size_t n_points);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  std::size_t size() const noexcept { return n_; }
  double spacing() const noexcept { return h_; }

  /// Node i. The last node is exactly `hi`.
  double operator[](std::size_t i) const noexcept {
    return i + 1 == n_ ? hi_ : lo_ + static_cast<double>(i) * h_;
  }

  std::vector<double> points() const;

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  double lo_;
  double hi_;
  std::size_t n_;
  double h_;
};

/// A density tabulated on a Grid1D.
struct SampledDistribution {
  Grid1D grid;
  std::vector<double> density;
  std::string label;

  SampledDistribution(Grid1D g, std::vector<double> d, std::string name);

  /// Linear interpolation; zero outside the grid.
  double at(double x) const noexcept;
};

double trapezoid(std::span<const double> values, double spacing);
double integral(const SampledDistribution& d);

/// Rescales to unit trapezoid mass. Throws DegenerateDistribution when the
/// mass is zero, negative or not finite, or when any sample is NaN.
SampledDistribution normalize(const SampledDistribution& d);

// Moments and comparison metrics. All assume a normalized input.
double mean(const SampledDistribution& d);
double variance(const SampledDistribution& d);
double skewness(const SampledDistribution& d);

/// Trapezoid mass on [a, b] (clipped to the grid), using interpolated end
/// values so the window need not align with grid nodes.
double mass_in(const SampledDistribution& d, double a, double b);

/// Resamples onto `target` by linear interpolation (zero outside the source).
SampledDistribution resample(const SampledDistribution& d, const Grid1D& target);

/// Integral of |a - b| on the grid of `a` (b resampled when the grids differ).
double l1_distance(const SampledDistribution& a, const SampledDistribution& b);
double sup_distance(const SampledDistribution& a, const SampledDistribution& b);
double peak(const SampledDistribution& d);

/// Abscissae of strict interior local maxima whose height exceeds
/// `rel_floor * peak`. Plateaus count once, at their midpoint.
std::vector<double> local_maxima(const SampledDistribution& d, double rel_floor = 1e-6);

/// (max - min) / (max + min) over the nodes inside [a, b].
double visibility(const SampledDistribution& d, double a, double b);

}  // namespace tetlab
