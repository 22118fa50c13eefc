#include "tetlab/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tetlab/errors.hpp"

namespace tetlab {

Grid1D::Grid1D(double lo, double hi, std::size_t n_points) : lo_(lo), hi_(hi), n_(n_points) {
  if (!(std::isfinite(lo) && std::isfinite(hi)) || !(hi > lo)) {
    throw InvalidParameter("Grid1D: need finite bounds with hi > lo");
  }
  if (n_points < 2) throw InvalidParameter("Grid1D: need at least two points");
  h_ = (hi - lo) / static_cast<double>(n_points - 1);
}

std::vector<double> Grid1D::points() const {
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = (*this)[i];
  return out;
}

SampledDistribution::SampledDistribution(Grid1D g, std::vector<double> d, std::string name)
    : grid(g), density(std::move(d)), label(std::move(name)) {
  if (density.size() != grid.size()) {
    throw InvalidParameter("SampledDistribution: density length differs from grid");
  }
}

double SampledDistribution::at(double x) const noexcept {
  if (!(x >= grid.lo() && x <= grid.hi())) return 0.0;
  const double s = (x - grid.lo()) / grid.spacing();
  auto i = static_cast<std::size_t>(s);
  if (i + 1 >= grid.size()) return density.back();
  const double f = s - static_cast<double>(i);
  return density[i] + f * (density[i + 1] - density[i]);
}

double trapezoid(std::span<const double> values, double spacing) {
  if (values.size() < 2) return 0.0;
  double sum = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) sum += values[i];
  return sum * spacing;
}

double integral(const SampledDistribution& d) { return trapezoid(d.density, d.grid.spacing()); }

SampledDistribution normalize(const SampledDistribution& d) {
  for (double v : d.density) {
    if (std::isnan(v)) throw DegenerateDistribution("normalize: '" + d.label + "' contains NaN");
  }
  const double mass = integral(d);
  if (!std::isfinite(mass) || !(mass > 0.0)) {
    throw DegenerateDistribution("normalize: '" + d.label + "' has no finite positive mass");
  }
  SampledDistribution out = d;
  for (double& v : out.density) v /= mass;
  return out;
}

namespace {

template <class F>
double weighted(const SampledDistribution& d, F f) {
  std::vector<double> w(d.density.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = f(d.grid[i]) * d.density[i];
  return trapezoid(w, d.grid.spacing());
}

}  // namespace

double mean(const SampledDistribution& d) {
  return weighted(d, [](double x) { return x; });
}

double variance(const SampledDistribution& d) {
  const double mu = mean(d);
  return weighted(d, [mu](double x) { return (x - mu) * (x - mu); });
}

double skewness(const SampledDistribution& d) {
  const double mu = mean(d);
  const double var = weighted(d, [mu](double x) { return (x - mu) * (x - mu); });
  const double m3 = weighted(d, [mu](double x) { return (x - mu) * (x - mu) * (x - mu); });
  return m3 / std::pow(var, 1.5);
}

double mass_in(const SampledDistribution& d, double a, double b) {
  a = std::max(a, d.grid.lo());
  b = std::min(b, d.grid.hi());
  if (!(b > a)) return 0.0;
  // Nodes strictly inside (a, b), bracketed by interpolated endpoints.
  std::vector<double> xs{a};
  for (std::size_t i = 0; i < d.grid.size(); ++i) {
    const double x = d.grid[i];
    if (x > a && x < b) xs.push_back(x);
  }
  xs.push_back(b);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    sum += 0.5 * (d.at(xs[i]) + d.at(xs[i + 1])) * (xs[i + 1] - xs[i]);
  }
  return sum;
}

SampledDistribution resample(const SampledDistribution& d, const Grid1D& target) {
  if (target == d.grid) return d;
  std::vector<double> v(target.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = d.at(target[i]);
  return SampledDistribution(target, std::move(v), d.label);
}

double l1_distance(const SampledDistribution& a, const SampledDistribution& b) {
  const SampledDistribution bb = resample(b, a.grid);
  std::vector<double> diff(a.density.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = std::abs(a.density[i] - bb.density[i]);
  return trapezoid(diff, a.grid.spacing());
}

double sup_distance(const SampledDistribution& a, const SampledDistribution& b) {
  const SampledDistribution bb = resample(b, a.grid);
  double m = 0.0;
  for (std::size_t i = 0; i < a.density.size(); ++i) {
    m = std::max(m, std::abs(a.density[i] - bb.density[i]));
  }
  return m;
}

double peak(const SampledDistribution& d) {
  return *std::max_element(d.density.begin(), d.density.end());
}

std::vector<double> local_maxima(const SampledDistribution& d, double rel_floor) {
  const double floor = rel_floor * peak(d);
  const auto& v = d.density;
  std::vector<double> out;
  std::size_t i = 1;
  while (i + 1 < v.size()) {
    if (v[i] > v[i - 1] && v[i] > floor) {
      std::size_t j = i;
      while (j + 1 < v.size() && v[j + 1] == v[i]) ++j;
      if (j + 1 < v.size() && v[j + 1] < v[i]) out.push_back(0.5 * (d.grid[i] + d.grid[j]));
      i = j + 1;
    } else {
      ++i;
    }
  }
  return out;
}

double visibility(const SampledDistribution& d, double a, double b) {
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < d.grid.size(); ++i) {
    const double x = d.grid[i];
    if (x < a || x > b) continue;
    hi = std::max(hi, d.density[i]);
    lo = std::min(lo, d.density[i]);
  }
  if (!(hi >= lo)) throw InvalidParameter("visibility: window contains no grid nodes");
  return hi + lo > 0.0 ? (hi - lo) / (hi + lo) : 0.0;
}

}  // namespace tetlab
