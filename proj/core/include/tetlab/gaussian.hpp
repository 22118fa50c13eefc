#pragma once

namespace tetlab {

/// Gaussian wave-packet preparation together with the physical constants of
/// the run. `gravity` is zero for the free particle.
struct GaussianPrep1D {
  double mean_q = 0.0;
  double mean_p = 0.0;
  double sigma0 = 1.0;
  double mass = 1.0;
  double hbar = 1.0;
  double gravity = 0.0;

  /// Throws InvalidParameter unless sigma0, mass, hbar > 0, gravity >= 0 and
  /// the spreading rate is finite.
  void validate() const;

  /// Spreading rate hbar / (2 m sigma0^2).
  double omega() const noexcept { return hbar / (2.0 * mass * sigma0 * sigma0); }

  /// Momentum width of the minimum-uncertainty packet, hbar / (2 sigma0).
  double sigma_p() const noexcept { return hbar / (2.0 * sigma0); }

  /// sqrt(1 + (omega t)^2), the factor by which the packet has widened.
  double spread_factor(double t) const noexcept;

  double sigma_t(double t) const noexcept { return sigma0 * spread_factor(t); }

  /// Position of the packet centre, q0 + p0 t / m - g t^2 / 2.
  double center(double t) const noexcept {
    return mean_q + mean_p * t / mass - 0.5 * gravity * t * t;
  }
};

/// Normal density with the given mean and width. Throws InvalidParameter for
/// width <= 0.
double eval_gaussian(double u, double mean, double width);

}  // namespace tetlab
