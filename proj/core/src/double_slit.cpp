#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "tetlab/errors.hpp"
#include "tetlab/models.hpp"
#include "tetlab/numeric.hpp"
#include "tetlab/parallel.hpp"

namespace tetlab {

using cplx = std::complex<double>;

void DoubleSlitConfig::validate() const {
  prep_y.validate();
  if (!(slit_offset > 0.0) || !std::isfinite(slit_offset)) {
    throw InvalidParameter("DoubleSlitConfig: slit offset must be positive");
  }
  if (p0x == 0.0 || !std::isfinite(p0x)) throw InvalidParameter("DoubleSlitConfig: p0x must be non-zero");
  if (!(detector_x > 0.0) || !std::isfinite(detector_x)) {
    throw InvalidParameter("DoubleSlitConfig: detector distance must be positive");
  }
  const double td = flight_time();
  if (!(td > 0.0) || !std::isfinite(td)) throw InvalidParameter("DoubleSlitConfig: bad flight time");
  const double n = doubleslit_norm_sq_closed_form(*this);
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidParameter("DoubleSlitConfig: degenerate norm");
}

double doubleslit_norm_sq_closed_form(const DoubleSlitConfig& cfg) {
  const auto& p = cfg.prep_y;
  const double s2 = p.sigma0 * p.sigma0;
  const double e = -cfg.slit_offset * cfg.slit_offset / (2.0 * s2) -
                   2.0 * p.mean_p * p.mean_p * s2 / (p.hbar * p.hbar);
  return 2.0 * (1.0 + std::exp(e));
}

double doubleslit_norm_sq_plus_sign(const DoubleSlitConfig& cfg) {
  const auto& p = cfg.prep_y;
  const double s2 = p.sigma0 * p.sigma0;
  const double e = -cfg.slit_offset * cfg.slit_offset / (2.0 * s2) +
                   2.0 * p.mean_p * p.mean_p * s2 / (p.hbar * p.hbar);
  if (e > 700.0) throw InvalidParameter("doubleslit_norm_sq_plus_sign: exponent overflows");
  return 2.0 * (1.0 + std::exp(e));
}

DoubleSlitWave::DoubleSlitWave(const DoubleSlitConfig& cfg) : cfg_(cfg), norm_sq_(1.0) {
  cfg_.validate();
  const double w = initial_halfwidth() + 30.0 * cfg_.prep_y.sigma0;
  auto numerator_sq = [this](double y) {
    return std::norm(branch(y, 0.0, -cfg_.slit_offset, cfg_.prep_y.mean_p, nullptr) +
                     branch(y, 0.0, cfg_.slit_offset, -cfg_.prep_y.mean_p, nullptr));
  };
  const auto r = integrate_gauss_kronrod(numerator_sq, -w, w, 256, 1e-13, 1e-300);
  if (!r.converged || !(r.value > 0.0)) {
    throw AccuracyError("DoubleSlitWave: normalization quadrature failed", r.value, r.error);
  }
  norm_sq_ = r.value;
}

double DoubleSlitWave::initial_halfwidth() const noexcept {
  return cfg_.slit_offset + 9.0 * cfg_.prep_y.sigma0;
}

cplx DoubleSlitWave::branch(double y, double t, double center, double momentum,
                            cplx* derivative) const {
  const auto& p = cfg_.prep_y;
  const double s2 = p.sigma0 * p.sigma0;
  const double k = momentum / p.hbar;
  const cplx alpha(1.0, p.omega() * t);
  const double x = y - center - momentum * t / p.mass;
  const cplx prefactor = std::pow(2.0 * std::numbers::pi * s2, -0.25) / std::sqrt(alpha);
  const cplx phase = std::exp(cplx(0.0, k * (y - center) - p.hbar * k * k * t / (2.0 * p.mass)));
  const cplx value = prefactor * phase * std::exp(-x * x / (4.0 * s2 * alpha));
  if (derivative) *derivative = value * (cplx(0.0, k) - x / (2.0 * s2 * alpha));
  return value;
}

cplx DoubleSlitWave::psi(double y, double t) const {
  const double ys = cfg_.slit_offset, p = cfg_.prep_y.mean_p;
  return (branch(y, t, -ys, p, nullptr) + branch(y, t, ys, -p, nullptr)) / std::sqrt(norm_sq_);
}

cplx DoubleSlitWave::dpsi_dy(double y, double t) const {
  const double ys = cfg_.slit_offset, p = cfg_.prep_y.mean_p;
  cplx dl, du;
  branch(y, t, -ys, p, &dl);
  branch(y, t, ys, -p, &du);
  return (dl + du) / std::sqrt(norm_sq_);
}

double DoubleSlitWave::velocity(double y, double t) const {
  const double ys = cfg_.slit_offset, p = cfg_.prep_y.mean_p;
  cplx dl, du;
  const cplx v = branch(y, t, -ys, p, &dl) + branch(y, t, ys, -p, &du);
  if (v == cplx(0.0, 0.0)) return 0.0;
  return cfg_.prep_y.hbar / cfg_.prep_y.mass * std::imag((dl + du) / v);
}

cplx doubleslit_psi_y0(const DoubleSlitConfig& cfg, double y) { return DoubleSlitWave(cfg).psi(y, 0.0); }

double doubleslit_psi_y_sq(const DoubleSlitConfig& cfg, double y, double t) {
  return DoubleSlitWave(cfg).density(y, t);
}

double doubleslit_x_pdf(const DoubleSlitConfig& cfg, double x, double) {
  return x >= 0.0 && x <= cfg.detector_x ? 1.0 / cfg.detector_x : 0.0;
}

double doubleslit_time_pdf(const DoubleSlitConfig& cfg, double t) {
  const double td = cfg.flight_time();
  return t >= 0.0 && t <= td ? 1.0 / td : 0.0;
}

SampledDistribution doubleslit_screen_pdf_bm(const DoubleSlitConfig& cfg, const Grid1D& y_grid,
                                             int n_time) {
  if (n_time < 16) throw InvalidParameter("doubleslit_screen_pdf_bm: need at least 16 time nodes");
  const DoubleSlitWave wave(cfg);
  const Grid1D times(0.0, cfg.flight_time(), static_cast<std::size_t>(n_time));
  std::vector<double> v(y_grid.size());
  parallel_for(y_grid.size(), [&](std::size_t i) {
    const double y = y_grid[i];
    v[i] = trapezoid([&](double t) { return wave.density(y, t); }, times) / cfg.flight_time();
  });
  return normalize(SampledDistribution(y_grid, std::move(v), "bm"));
}

SampledDistribution doubleslit_screen_pdf_ct(const DoubleSlitConfig& cfg, const Grid1D& y_grid) {
  const DoubleSlitWave wave(cfg);
  const double td = cfg.flight_time();
  std::vector<double> v(y_grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = wave.density(y_grid[i], td);
  return normalize(SampledDistribution(y_grid, std::move(v), "ct"));
}

namespace {

double rk4_flow(const DoubleSlitWave& wave, double y, double t0, double t1, double max_step) {
  const double span = t1 - t0;
  if (span == 0.0) return y;
  const int n = std::max(1, static_cast<int>(std::ceil(std::abs(span) / max_step - 1e-9)));
  const double h = span / n;
  double t = t0;
  for (int i = 0; i < n; ++i) {
    const double k1 = wave.velocity(y, t);
    const double k2 = wave.velocity(y + 0.5 * h * k1, t + 0.5 * h);
    const double k3 = wave.velocity(y + 0.5 * h * k2, t + 0.5 * h);
    const double k4 = wave.velocity(y + h * k3, t + h);
    y += h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
    t = t0 + (i + 1) * h;
  }
  return y;
}

}  // namespace

TrajectoryFamily1D doubleslit_bm_y_family(const DoubleSlitConfig& cfg, int steps_per_flight) {
  if (steps_per_flight < 1) throw InvalidParameter("doubleslit_bm_y_family: steps must be positive");
  auto wave = std::make_shared<const DoubleSlitWave>(cfg);
  const double td = cfg.flight_time();
  const double h = td / steps_per_flight;
  TrajectoryFamily1D fam;
  fam.q_of = [wave, h](double y0, double t) { return rk4_flow(*wave, y0, 0.0, t, h); };
  fam.q0_of = [wave, h](double y, double t) { return rk4_flow(*wave, y, t, 0.0, h); };
  fam.dq_dt = [wave, h](double y0, double t) { return wave->velocity(rk4_flow(*wave, y0, 0.0, t, h), t); };
  fam.dq_dq0 = [wave, h](double y0, double t) {
    return central_difference([&](double y) { return rk4_flow(*wave, y, 0.0, t, h); }, y0);
  };
  fam.t_bracket = {0.0, td};
  fam.velocity_scale = std::abs(cfg.prep_y.mean_p) / cfg.prep_y.mass +
                       cfg.prep_y.omega() * cfg.prep_y.sigma0;
  return fam;
}

double default_screen_halfwidth(const DoubleSlitConfig& cfg) {
  const double td = cfg.flight_time();
  return cfg.slit_offset + std::abs(cfg.prep_y.mean_p) * td / cfg.prep_y.mass + 8.0 * cfg.prep_y.sigma_t(td);
}

}  // namespace tetlab
