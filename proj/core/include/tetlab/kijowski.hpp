#pragma once

#include "tetlab/distribution.hpp"
#include "tetlab/gaussian.hpp"

namespace tetlab {

/// Which width enters the prefactor and the Gaussian damping of the momentum
/// integral. `initial` uses σ0 and is the free Gaussian packet's actual
/// momentum amplitude. `literal` substitutes σ_t = σ0 sqrt(1 + (ωt)^2).
enum class KijowskiWidth { initial, literal };

/// Arrival-time density at q = 0 for a free Gaussian packet.
struct KijowskiQuery {
  GaussianPrep1D prep;
  double t = 0.0;
  /// Momentum half-width of the integration range around p̄0. Zero selects
  /// 10 ħ / width, where the Gaussian damping is e^-100.
  double p_halfwidth = 0.0;
  double rel_tol = 1e-8;
  KijowskiWidth width = KijowskiWidth::initial;
  /// Scales the initial panel width (1 keeps the phase advance per panel
  /// below π/4 at the edge of the range).
  double panel_scale = 1.0;

  void validate() const;
  double width_at_t() const noexcept;
};

/// The positive- and negative-momentum contributions, prefactor included.
struct KijowskiTerms {
  double positive = 0.0;
  double negative = 0.0;
  double total() const noexcept { return positive + negative; }
};

KijowskiTerms kijowski_terms(const KijowskiQuery& query);

/// Sum of both terms. Throws AccuracyError when a half-line integral misses
/// rel_tol.
double kijowski_pdf(const KijowskiQuery& query);

/// Tabulates the density for arrival at `q_detect` (the preparation is
/// translated so the detector sits at the origin) and normalizes over the
/// grid. `base.t` is ignored.
SampledDistribution tabulate_kijowski(const KijowskiQuery& base, double q_detect,
                                      const Grid1D& time_grid);

}  // namespace tetlab
