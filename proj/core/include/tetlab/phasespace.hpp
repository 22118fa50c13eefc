#pragma once

#include <functional>
#include <optional>

#include "tetlab/distribution.hpp"
#include "tetlab/gaussian.hpp"
#include "tetlab/tet1d.hpp"

namespace tetlab {

/// Paired phase-space trajectories q = Q(q0, p0, t), p = P(q0, p0, t) with
/// their partials and inversions. Families declare an inversion absent by
/// leaving the corresponding function empty: t_from_p is absent when P does
/// not change in time, t_from_q when Q recurs.
struct PhaseSpaceFamily {
  using Map = std::function<double(double, double, double)>;
  using TimeMap = std::function<std::optional<double>(double, double, double)>;

  Map q_of;    // (q0, p0, t)
  Map p_of;    // (q0, p0, t)
  Map dq_dq0;  // partials of Q and P at (q0, p0, t)
  Map dq_dp0;
  Map dq_dt;
  Map dp_dq0;
  Map dp_dp0;
  Map dp_dt;

  Map q0_from_q;  // (q, p0, t)
  Map p0_from_q;  // (q, q0, t)
  Map q0_from_p;  // (p, p0, t)
  Map p0_from_p;  // (p, q0, t)
  TimeMap t_from_q;  // (q, q0, p0)
  TimeMap t_from_p;  // (p, q0, p0)

  TimeWindow t_bracket;
};

/// Initial phase-space density with the Gaussian extents used to bracket
/// momentum roots and to size default momentum grids.
struct PhasePreparation {
  std::function<double(double q0, double p0)> rho0;
  double mean_q = 0.0;
  double sigma_q = 1.0;
  double mean_p = 0.0;
  double sigma_p = 1.0;
};

/// Product G(q0; q̄0, σ0) G(p0; p̄0, ħ/(2σ0)).
PhasePreparation gaussian_phase_preparation(const GaussianPrep1D& prep);

struct PhaseSpaceOptions {
  double bracket_sigmas = 10.0;  ///< p0 roots searched in p̄0 ± bracket_sigmas σp
  int root_scan_steps = 64;
};

/// The four Jacobian factors evaluated at one inverted point. Entries whose
/// inversion is absent from the family are NaN.
struct JacobianFactors {
  double dq_q0 = 0.0;  ///< |∂Q/∂q0|
  double dp_p0 = 0.0;  ///< |d/dp0 P(Q0q(q, p0, t), p0, t)|
  double dt_q0 = 0.0;  ///< |∂T_q/∂q0|
  double dt_p0 = 0.0;  ///< |d/dp0 T_p(p, Q0q(q, p0, t), p0)|
};

/// Jacobian factors at q0 = Q0q(q, p0, t). Time derivatives of the inverse
/// time maps come from the implicit-function rule.
JacobianFactors jacobian_factors(const PhaseSpaceFamily& fam, double q, double p0, double t);

/// Momentum roots p0 of P(Q0q(q, p0, t), p0, t) = p inside the bracket.
std::vector<double> momentum_roots_position(const PhaseSpaceFamily& fam, const PhasePreparation& prep,
                                            double q, double p, double t,
                                            const PhaseSpaceOptions& opt = {});

/// Momentum roots p0 of T_p(p, Q0q(q, p0, t), p0) = t inside the bracket.
std::vector<double> momentum_roots_time(const PhaseSpaceFamily& fam, const PhasePreparation& prep,
                                        double q, double p, double t,
                                        const PhaseSpaceOptions& opt = {});

/// Joint position-momentum density at time t. Zero when no momentum root
/// exists; CausticSingularity when a Jacobian factor vanishes.
double joint_qp_pdf(const PhaseSpaceFamily& fam, const PhasePreparation& prep, double q, double p,
                    double t, const PhaseSpaceOptions& opt = {});

/// Joint momentum / flight-time density at detector position q. Throws
/// UnsupportedInversion when the family has no time-from-position map or a
/// contributing trajectory turns around inside the bracket.
double joint_pt_pdf(const PhaseSpaceFamily& fam, const PhasePreparation& prep, double q, double p,
                    double t, const PhaseSpaceOptions& opt = {});

/// Joint position / time density conditioned on momentum p. Throws
/// UnsupportedInversion when the family has no time-from-momentum map or a
/// contributing trajectory turns around inside the bracket.
double joint_qt_pdf(const PhaseSpaceFamily& fam, const PhasePreparation& prep, double q, double p,
                    double t, const PhaseSpaceOptions& opt = {});

/// Trapezoid integral of f over the momentum grid.
double marginalize_p(const std::function<double(double)>& f, const Grid1D& p_grid);

/// p̄0 ± 10 σp with 2001 nodes.
Grid1D default_momentum_grid(const PhasePreparation& prep);

/// Flight-time density at q on `time_grid` by momentum marginalization of
/// joint_pt_pdf, normalized.
SampledDistribution tabulate_phase_flighttime(const PhaseSpaceFamily& fam,
                                              const PhasePreparation& prep, double q,
                                              const Grid1D& time_grid, const Grid1D& p_grid,
                                              std::string label = "classical");

/// Position density at time t by momentum marginalization of joint_qp_pdf.
SampledDistribution tabulate_phase_position(const PhaseSpaceFamily& fam,
                                            const PhasePreparation& prep, const Grid1D& q_grid,
                                            double t, const Grid1D& p_grid,
                                            std::string label = "classical");

}  // namespace tetlab
