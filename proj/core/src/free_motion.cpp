#include <algorithm>
#include <cmath>

#include "tetlab/errors.hpp"
#include "tetlab/models.hpp"
#include "tetlab/parallel.hpp"

namespace tetlab {

namespace {

// Q = centre(t) + S(t) (q0 - q̄0) with S = sqrt(1 + (ωt)^2), shared by the
// free and falling packets.
TrajectoryFamily1D gaussian_bm_family(const GaussianPrep1D& prep, TimeWindow window) {
  const GaussianPrep1D p = prep;
  const double w = p.omega();
  TrajectoryFamily1D fam;
  fam.q_of = [p](double q0, double t) { return p.center(t) + p.spread_factor(t) * (q0 - p.mean_q); };
  fam.dq_dq0 = [p](double, double t) { return p.spread_factor(t); };
  fam.dq_dt = [p, w](double q0, double t) {
    return p.mean_p / p.mass - p.gravity * t + w * w * t * (q0 - p.mean_q) / p.spread_factor(t);
  };
  fam.q0_of = [p](double q, double t) { return p.mean_q + (q - p.center(t)) / p.spread_factor(t); };
  fam.t_bracket = window;
  fam.velocity_scale = std::abs(p.mean_p) / p.mass + p.gravity * std::abs(window.hi) + w * p.sigma0;
  return fam;
}

}  // namespace

Preparation1D gaussian_preparation(const GaussianPrep1D& prep) {
  prep.validate();
  const double m = prep.mean_q, s = prep.sigma0;
  return Preparation1D{[m, s](double q0) { return eval_gaussian(q0, m, s); }, m - 10.0 * s,
                       m + 10.0 * s};
}

TrajectoryFamily1D freeparticle_bm_family(const GaussianPrep1D& prep, TimeWindow window) {
  prep.validate();
  if (prep.gravity != 0.0) throw InvalidParameter("freeparticle_bm_family: gravity must be zero");
  return gaussian_bm_family(prep, window);
}

TrajectoryFamily1D freefall_bm_family(const GaussianPrep1D& prep, TimeWindow window) {
  prep.validate();
  if (!(prep.gravity > 0.0)) throw InvalidParameter("freefall_bm_family: gravity must be positive");
  return gaussian_bm_family(prep, window);
}

double freeparticle_psi_sq(const GaussianPrep1D& prep, double q, double t) {
  return eval_gaussian(q, prep.mean_q + prep.mean_p * t / prep.mass, prep.sigma_t(t));
}

double freefall_psi_sq(const GaussianPrep1D& prep, double q, double t) {
  return eval_gaussian(q, prep.center(t), prep.sigma_t(t));
}

double freefall_velocity_field(const GaussianPrep1D& prep, double q, double t) {
  const double classical = prep.mean_p / prep.mass - prep.gravity * t;
  if (t == 0.0) return classical;
  const double wt2 = std::pow(prep.omega() * t, 2);
  return classical + wt2 / (1.0 + wt2) *
                         ((q - prep.mean_q) / t - prep.mean_p / prep.mass + 0.5 * prep.gravity * t);
}

SampledDistribution freefall_ml_pdf(const GaussianPrep1D& prep, double q, const Grid1D& time_grid) {
  prep.validate();
  std::vector<double> v(time_grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double t = time_grid[i];
    v[i] = std::abs(freefall_velocity_field(prep, q, t)) * freefall_psi_sq(prep, q, t);
  }
  return normalize(SampledDistribution(time_grid, std::move(v), "ml"));
}

std::vector<double> center_crossing_times(const GaussianPrep1D& prep, double q) {
  // -g/2 t^2 + (p̄0/m) t + (q̄0 - q) = 0
  const double a = -0.5 * prep.gravity;
  const double b = prep.mean_p / prep.mass;
  const double c = prep.mean_q - q;
  std::vector<double> roots;
  if (a == 0.0) {
    if (b != 0.0) roots.push_back(-c / b);
  } else {
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
      const double s = std::sqrt(disc);
      // Cancellation-free pair of roots.
      const double qq = -0.5 * (b + std::copysign(s, b));
      if (qq != 0.0) {
        roots.push_back(qq / a);
        roots.push_back(c / qq);
      } else {
        roots.push_back(0.0);
      }
    }
  }
  std::erase_if(roots, [](double t) { return !(t >= 0.0); });
  std::sort(roots.begin(), roots.end());
  return roots;
}

TimeWindow default_window_free_particle(const GaussianPrep1D& prep, double q) {
  const auto roots = center_crossing_times(prep, q);
  if (roots.empty()) throw InvalidParameter("free particle: packet centre never reaches the detector");
  const double tbar = roots.front();
  return {0.0, tbar + 8.0 * prep.sigma_t(tbar) * prep.mass / std::abs(prep.mean_p)};
}

TimeWindow default_window_free_fall(const GaussianPrep1D& prep, double q) {
  const auto roots = center_crossing_times(prep, q);
  if (roots.empty()) throw InvalidParameter("free fall: packet centre never reaches the detector");
  return {0.0, 1.5 * roots.back()};
}

PhaseSpaceFamily classical_free_family(const GaussianPrep1D& prep, TimeWindow window) {
  prep.validate();
  const double m = prep.mass;
  PhaseSpaceFamily f;
  f.q_of = [m](double q0, double p0, double t) { return q0 + p0 * t / m; };
  f.p_of = [](double, double p0, double) { return p0; };
  f.dq_dq0 = [](double, double, double) { return 1.0; };
  f.dq_dp0 = [m](double, double, double t) { return t / m; };
  f.dq_dt = [m](double, double p0, double) { return p0 / m; };
  f.dp_dq0 = [](double, double, double) { return 0.0; };
  f.dp_dp0 = [](double, double, double) { return 1.0; };
  f.dp_dt = [](double, double, double) { return 0.0; };
  f.q0_from_q = [m](double q, double p0, double t) { return q - p0 * t / m; };
  f.p0_from_q = [m](double q, double q0, double t) { return m * (q - q0) / t; };
  f.p0_from_p = [](double p, double, double) { return p; };
  f.t_from_q = [m](double q, double q0, double p0) -> std::optional<double> {
    if (p0 == 0.0) return std::nullopt;
    return m * (q - q0) / p0;
  };
  f.t_bracket = window;
  return f;
}

PhaseSpaceFamily classical_gravity_family(const GaussianPrep1D& prep, TimeWindow window) {
  prep.validate();
  if (!(prep.gravity > 0.0)) throw InvalidParameter("classical_gravity_family: gravity must be positive");
  const double m = prep.mass, g = prep.gravity;
  PhaseSpaceFamily f;
  f.q_of = [m, g](double q0, double p0, double t) { return q0 + p0 * t / m - 0.5 * g * t * t; };
  f.p_of = [m, g](double, double p0, double t) { return p0 - m * g * t; };
  f.dq_dq0 = [](double, double, double) { return 1.0; };
  f.dq_dp0 = [m](double, double, double t) { return t / m; };
  f.dq_dt = [m, g](double, double p0, double t) { return p0 / m - g * t; };
  f.dp_dq0 = [](double, double, double) { return 0.0; };
  f.dp_dp0 = [](double, double, double) { return 1.0; };
  f.dp_dt = [m, g](double, double, double) { return -m * g; };
  f.q0_from_q = [m, g](double q, double p0, double t) { return q - p0 * t / m + 0.5 * g * t * t; };
  f.p0_from_q = [m, g](double q, double q0, double t) { return m * (q - q0 + 0.5 * g * t * t) / t; };
  f.p0_from_p = [m, g](double p, double, double t) { return p + m * g * t; };
  f.t_from_p = [m, g](double p, double, double p0) -> std::optional<double> {
    return (p0 - p) / (m * g);
  };
  f.t_bracket = window;
  return f;
}

}  // namespace tetlab
