#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "tetlab/distribution.hpp"
#include "tetlab/numeric.hpp"

namespace tetlab {

/// Closed time interval searched for crossings.
struct TimeWindow {
  double lo = 0.0;
  double hi = 1.0;
};

/// A deterministic trajectory family q = Q(q0, t) with its partial
/// derivatives and the inverse q0 = Q0(q, t).
struct TrajectoryFamily1D {
  std::function<double(double q0, double t)> q_of;
  std::function<double(double q0, double t)> dq_dq0;
  std::function<double(double q0, double t)> dq_dt;
  std::function<double(double q, double t)> q0_of;
  TimeWindow t_bracket;
  /// Typical speed; points with |dQ/dt| < 1e-9 velocity_scale are turning points.
  double velocity_scale = 1.0;
  int scan_steps = kDefaultScanSteps;
};

/// Crossing instants t_1 < ... < t_n of one trajectory through a position.
struct CrossingSet {
  std::vector<double> times;
  std::size_t branch_count() const noexcept { return times.size(); }
};

/// Initial-position density rho0 with the interval that carries its mass.
struct Preparation1D {
  std::function<double(double q0)> rho0;
  double support_lo = -1.0;
  double support_hi = 1.0;
};

/// Every t in the family's bracket with Q(q0, t) = q, ascending. Roots with
/// t < 0 never appear because brackets start at or after zero.
CrossingSet crossing_times(const TrajectoryFamily1D& traj, double q, double q0);

/// rho0(Q0) / |dQ/dq0| at q0 = Q0(q, t). Throws CausticSingularity when the
/// Jacobian vanishes.
double position_pdf(const TrajectoryFamily1D& traj, const Preparation1D& prep, double q, double t);

/// Branch-sum flight-time density at (q, t): the branch through t carries
/// rho0(q0) / |dT/dq0| with dT/dq0 = -(dQ/dq0)/(dQ/dt), divided by the number
/// of crossings n(q, q0) of that trajectory. Zero when t fails the
/// consistency check t = T_j(q, Q0(q, t)). Throws TurningPoint when
/// |dQ/dt| is below the turning threshold.
double flighttime_pdf(const TrajectoryFamily1D& traj, const Preparation1D& prep, double q, double t);

enum class BranchWeighting {
  per_trajectory,  ///< divide by the crossing count of the trajectory
  none,            ///< plain |J|, every crossing counted
};

/// |v| wp_{q|t} / n, the current-density route to the same density.
double flighttime_pdf_current(const TrajectoryFamily1D& traj, const Preparation1D& prep, double q,
                              double t, BranchWeighting weighting = BranchWeighting::per_trajectory);

enum class FlightTimeMethod { branch_sum, current, current_unweighted };

/// Tabulates the chosen flight-time density on `time_grid`, drops turning
/// points and renormalizes. Throws DegenerateDistribution when fewer than two
/// points survive.
SampledDistribution tabulate_flighttime(const TrajectoryFamily1D& traj, const Preparation1D& prep,
                                        double q, const Grid1D& time_grid, FlightTimeMethod method,
                                        std::string label = "bm");

/// Tabulates position_pdf at fixed t (not renormalized).
SampledDistribution tabulate_position(const TrajectoryFamily1D& traj, const Preparation1D& prep,
                                      const Grid1D& q_grid, double t, std::string label = "bm");

}  // namespace tetlab
