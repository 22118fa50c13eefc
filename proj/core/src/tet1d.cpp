#include "tetlab/tet1d.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "tetlab/errors.hpp"
#include "tetlab/parallel.hpp"

namespace tetlab {

namespace {

constexpr double kJacobianFloor = 1e-14;
constexpr double kTurningFraction = 1e-9;

// Tolerance for matching t against a re-derived crossing time.
double consistency_tol(double t) { return 1e-8 * (1.0 + std::abs(t)); }

struct BranchPoint {
  double q0;
  double jacobian;
  double velocity;
};

BranchPoint invert(const TrajectoryFamily1D& traj, double q, double t) {
  const double q0 = traj.q0_of(q, t);
  return {q0, traj.dq_dq0(q0, t), traj.dq_dt(q0, t)};
}

// Number of crossings of the trajectory from q0, or 0 when t itself is not
// among them.
std::size_t consistent_branch_count(const TrajectoryFamily1D& traj, double q, double q0, double t) {
  const CrossingSet c = crossing_times(traj, q, q0);
  const bool found = std::any_of(c.times.begin(), c.times.end(),
                                 [&](double tj) { return std::abs(tj - t) <= consistency_tol(t); });
  return found ? c.branch_count() : 0;
}

}  // namespace

CrossingSet crossing_times(const TrajectoryFamily1D& traj, double q, double q0) {
  const double lo = std::max(0.0, traj.t_bracket.lo);
  const double hi = traj.t_bracket.hi;
  CrossingSet out;
  if (!(hi > lo)) return out;
  auto f = [&](double t) { return traj.q_of(q0, t) - q; };
  out.times = find_roots(f, lo, hi, traj.scan_steps);
  // A crossing sitting on a bracket end rarely evaluates to an exact zero;
  // keep it when the implied time offset is within the bisection tolerance.
  const double tol = 1e-12 * (hi - lo);
  for (double edge : {lo, hi}) {
    const bool known = std::any_of(out.times.begin(), out.times.end(),
                                   [&](double tj) { return std::abs(tj - edge) <= 2.0 * tol; });
    if (!known && std::abs(f(edge)) <= tol * std::abs(traj.dq_dt(q0, edge))) out.times.push_back(edge);
  }
  std::sort(out.times.begin(), out.times.end());
  return out;
}

double position_pdf(const TrajectoryFamily1D& traj, const Preparation1D& prep, double q, double t) {
  const BranchPoint b = invert(traj, q, t);
  if (!(std::abs(b.jacobian) > kJacobianFloor)) {
    throw CausticSingularity("position_pdf: dQ/dq0 vanishes");
  }
  return prep.rho0(b.q0) / std::abs(b.jacobian);
}

double flighttime_pdf(const TrajectoryFamily1D& traj, const Preparation1D& prep, double q, double t) {
  const BranchPoint b = invert(traj, q, t);
  if (std::abs(b.velocity) < kTurningFraction * traj.velocity_scale) {
    throw TurningPoint("flighttime_pdf: dQ/dt vanishes at the crossing");
  }
  if (!(std::abs(b.jacobian) > kJacobianFloor)) {
    throw CausticSingularity("flighttime_pdf: dQ/dq0 vanishes");
  }
  const std::size_t n = consistent_branch_count(traj, q, b.q0, t);
  if (n == 0) return 0.0;
  // |dT/dq0| = |dQ/dq0| / |dQ/dt| by the implicit-function rule.
  const double dt_dq0 = std::abs(b.jacobian / b.velocity);
  return prep.rho0(b.q0) / dt_dq0 / static_cast<double>(n);
}

double flighttime_pdf_current(const TrajectoryFamily1D& traj, const Preparation1D& prep, double q,
                              double t, BranchWeighting weighting) {
  const double density = position_pdf(traj, prep, q, t);
  const BranchPoint b = invert(traj, q, t);
  const double current = std::abs(b.velocity) * density;
  if (weighting == BranchWeighting::none) return current;
  const std::size_t n = consistent_branch_count(traj, q, b.q0, t);
  return n == 0 ? 0.0 : current / static_cast<double>(n);
}

SampledDistribution tabulate_flighttime(const TrajectoryFamily1D& traj, const Preparation1D& prep,
                                        double q, const Grid1D& time_grid, FlightTimeMethod method,
                                        std::string label) {
  std::vector<double> values(time_grid.size(), 0.0);
  std::vector<char> valid(time_grid.size(), 1);
  parallel_for(time_grid.size(), [&](std::size_t i) {
    const double t = time_grid[i];
    try {
      switch (method) {
        case FlightTimeMethod::branch_sum:
          values[i] = flighttime_pdf(traj, prep, q, t);
          break;
        case FlightTimeMethod::current:
          values[i] = flighttime_pdf_current(traj, prep, q, t, BranchWeighting::per_trajectory);
          break;
        case FlightTimeMethod::current_unweighted:
          values[i] = flighttime_pdf_current(traj, prep, q, t, BranchWeighting::none);
          break;
      }
    } catch (const TurningPoint&) {
      valid[i] = 0;
    }
  });
  if (std::count(valid.begin(), valid.end(), 1) < 2) {
    throw DegenerateDistribution("tabulate_flighttime: fewer than two valid points");
  }
  // Masked turning points take the mean of their valid neighbours.
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (valid[i]) continue;
    double sum = 0.0;
    int k = 0;
    if (i > 0 && valid[i - 1]) sum += values[i - 1], ++k;
    if (i + 1 < values.size() && valid[i + 1]) sum += values[i + 1], ++k;
    values[i] = k > 0 ? sum / k : 0.0;
  }
  return normalize(SampledDistribution(time_grid, std::move(values), std::move(label)));
}

SampledDistribution tabulate_position(const TrajectoryFamily1D& traj, const Preparation1D& prep,
                                      const Grid1D& q_grid, double t, std::string label) {
  std::vector<double> values(q_grid.size());
  parallel_for(q_grid.size(),
               [&](std::size_t i) { values[i] = position_pdf(traj, prep, q_grid[i], t); });
  return SampledDistribution(q_grid, std::move(values), std::move(label));
}

}  // namespace tetlab
