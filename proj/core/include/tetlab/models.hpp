#pragma once

#include <complex>
#include <vector>

#include "tetlab/distribution.hpp"
#include "tetlab/gaussian.hpp"
#include "tetlab/phasespace.hpp"
#include "tetlab/tet1d.hpp"

namespace tetlab {

// ---------------------------------------------------------------------------
// Free particle and uniform gravity

/// rho0 = G(q0; q̄0, σ0) with support q̄0 ± 10 σ0.
Preparation1D gaussian_preparation(const GaussianPrep1D& prep);

/// Bohmian trajectories of the free Gaussian packet,
/// Q = q̄0 + p̄0 t/m + sqrt(1 + (ωt)^2) (q0 - q̄0). Requires gravity == 0.
TrajectoryFamily1D freeparticle_bm_family(const GaussianPrep1D& prep, TimeWindow window);

/// Bohmian trajectories in uniform gravity: the free family shifted by
/// -g t^2 / 2. Requires gravity > 0.
TrajectoryFamily1D freefall_bm_family(const GaussianPrep1D& prep, TimeWindow window);

/// |psi(q, t)|^2 = G(q; q̄0 + p̄0 t/m, σt). Gravity is ignored.
double freeparticle_psi_sq(const GaussianPrep1D& prep, double q, double t);

/// |psi(q, t)|^2 = G(q; q̄0 + p̄0 t/m - g t^2/2, σt).
double freefall_psi_sq(const GaussianPrep1D& prep, double q, double t);

/// Bohmian velocity field of the (possibly falling) Gaussian packet. Returns
/// p̄0/m at t = 0.
double freefall_velocity_field(const GaussianPrep1D& prep, double q, double t);

/// Normalized |v(q, t)| |psi(q, t)|^2 on the grid (the current-weighted density).
SampledDistribution freefall_ml_pdf(const GaussianPrep1D& prep, double q, const Grid1D& time_grid);

/// Times at which the packet centre passes q, ascending, t >= 0.
std::vector<double> center_crossing_times(const GaussianPrep1D& prep, double q);

/// Search window [0, t̄ + 8 σ(t̄) m/|p̄0|] with t̄ the centre's arrival at q.
TimeWindow default_window_free_particle(const GaussianPrep1D& prep, double q);

/// Search window [0, 1.5 x the last centre crossing of q].
TimeWindow default_window_free_fall(const GaussianPrep1D& prep, double q);

/// Liouville trajectories q0 + p0 t/m, p0. No time-from-momentum map.
PhaseSpaceFamily classical_free_family(const GaussianPrep1D& prep, TimeWindow window);

/// Liouville trajectories in uniform gravity. Q recurs, so the
/// time-from-position map is absent; T_p = (p0 - p)/(m g).
PhaseSpaceFamily classical_gravity_family(const GaussianPrep1D& prep, TimeWindow window);

// ---------------------------------------------------------------------------
// Double slit

/// Double-slit geometry. prep_y carries σ0, m, ħ and the transverse momentum
/// p̄0y in mean_p; each slit branch carries |p̄0y| directed towards the axis
/// when p̄0y > 0. mean_q is ignored (the slits sit at ±slit_offset).
struct DoubleSlitConfig {
  GaussianPrep1D prep_y;
  double slit_offset = 1.0;
  double p0x = 1.0;
  double detector_x = 1.0;
  double energy = 0.0;  ///< phase only, never enters a density

  void validate() const;
  /// m x_d / |p̄0x|.
  double flight_time() const noexcept { return prep_y.mass * detector_x / std::abs(p0x); }
};

/// Transverse wave function of the two slit branches, each evolving as a free
/// Gaussian packet. The normalization is the quadrature norm of the t = 0
/// numerator, computed once on construction.
class DoubleSlitWave {
 public:
  explicit DoubleSlitWave(const DoubleSlitConfig& cfg);

  const DoubleSlitConfig& config() const noexcept { return cfg_; }
  std::complex<double> psi(double y, double t) const;
  std::complex<double> dpsi_dy(double y, double t) const;
  double density(double y, double t) const { return std::norm(psi(y, t)); }
  /// Bohmian transverse velocity (ħ/m) Im(ψ'/ψ).
  double velocity(double y, double t) const;
  /// Squared norm of the unnormalized numerator, by quadrature.
  double numerator_norm_sq() const noexcept { return norm_sq_; }
  /// Symmetric interval carrying all but ~1e-15 of the t = 0 density.
  double initial_halfwidth() const noexcept;

 private:
  std::complex<double> branch(double y, double t, double center, double momentum,
                              std::complex<double>* derivative) const;

  DoubleSlitConfig cfg_;
  double norm_sq_;
};

/// Squared norm of the t = 0 numerator in closed form,
/// 2 [1 + exp(-ys^2/(2σ0^2) - 2 p̄0y^2 σ0^2 / ħ^2)].
double doubleslit_norm_sq_closed_form(const DoubleSlitConfig& cfg);

/// The same quantity with a plus sign in front of the momentum term, as it is
/// sometimes quoted. Throws InvalidParameter when the exponent overflows.
double doubleslit_norm_sq_plus_sign(const DoubleSlitConfig& cfg);

std::complex<double> doubleslit_psi_y0(const DoubleSlitConfig& cfg, double y);
double doubleslit_psi_y_sq(const DoubleSlitConfig& cfg, double y, double t);

/// 1/x_d on [0, x_d], else 0.
double doubleslit_x_pdf(const DoubleSlitConfig& cfg, double x, double t);
/// 1/t_d on [0, t_d], else 0.
double doubleslit_time_pdf(const DoubleSlitConfig& cfg, double t);

/// Screen density (1/t_d) ∫0^t_d |ψ_y(y, t)|^2 dt by the trapezoid rule on
/// `n_time` nodes, normalized on the grid.
SampledDistribution doubleslit_screen_pdf_bm(const DoubleSlitConfig& cfg, const Grid1D& y_grid,
                                             int n_time);

/// Screen density |ψ_y(y, t_d)|^2, normalized on the grid.
SampledDistribution doubleslit_screen_pdf_ct(const DoubleSlitConfig& cfg, const Grid1D& y_grid);

/// Transverse Bohmian trajectories integrated with fixed-step RK4 (step
/// t_d / steps_per_flight) through the analytic velocity field. q0_of
/// integrates backwards; dq_dq0 is a central difference.
TrajectoryFamily1D doubleslit_bm_y_family(const DoubleSlitConfig& cfg, int steps_per_flight = 2048);

/// Symmetric screen half-width ys + |p̄0y| t_d/m + 8 σ(t_d).
double default_screen_halfwidth(const DoubleSlitConfig& cfg);

}  // namespace tetlab
