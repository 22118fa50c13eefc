#include "tetlab/kijowski.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "tetlab/errors.hpp"
#include "tetlab/numeric.hpp"
#include "tetlab/parallel.hpp"

namespace tetlab {

namespace {

using cplx = std::complex<double>;

// One half line. The substitution p = s u^2 (s = ±1) turns
// ∫ sqrt|p| E(p) dp into ∫ 2 u^2 E(s u^2) du, which is smooth at the origin.
cplx half_line(const KijowskiQuery& qr, double width, double s, double p_lo, double p_hi,
               double scale, double& err) {
  err = 0.0;
  // |p| range covered on this side of the origin.
  double a_lo = 0.0, a_hi = 0.0;
  if (s > 0.0) {
    a_lo = std::max(0.0, p_lo);
    a_hi = std::max(0.0, p_hi);
  } else {
    a_lo = std::max(0.0, -p_hi);
    a_hi = std::max(0.0, -p_lo);
  }
  if (!(a_hi > a_lo)) return {};
  const double u_lo = std::sqrt(a_lo), u_hi = std::sqrt(a_hi);

  const auto& pr = qr.prep;
  const double t = qr.t;
  const double damp = width * width / (pr.hbar * pr.hbar);
  auto integrand = [&](double u) {
    const double p = s * u * u;
    const double dp = p - pr.mean_p;
    const double phase = dp * pr.mean_q / pr.hbar + p * p * t / (2.0 * pr.mass * pr.hbar);
    return 2.0 * u * u * std::exp(-damp * dp * dp) * cplx(std::cos(phase), std::sin(phase));
  };

  // d(phase)/du = 2u (q̄0/ħ + p t/(m ħ)); evaluated at both ends.
  auto slope = [&](double u) {
    const double p = s * u * u;
    return std::abs(2.0 * u * (pr.mean_q / pr.hbar + p * t / (pr.mass * pr.hbar)));
  };
  const double max_slope = std::max({slope(u_lo), slope(u_hi), 1e-300});
  const double du = qr.panel_scale * (std::numbers::pi / 4.0) / max_slope;
  const double want = std::ceil((u_hi - u_lo) / du);
  const int panels = static_cast<int>(std::clamp(want, 8.0, 50000.0));

  const auto r = integrate_gauss_kronrod(integrand, u_lo, u_hi, panels, qr.rel_tol,
                                         qr.rel_tol * 1e-3 * scale, 400000);
  if (!r.converged) {
    throw AccuracyError("kijowski: momentum integral did not converge", std::abs(r.value), r.error);
  }
  err = r.error;
  return r.value;
}

}  // namespace

void KijowskiQuery::validate() const {
  prep.validate();
  if (prep.gravity != 0.0) throw InvalidParameter("kijowski: only the free particle is supported");
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidParameter("kijowski: t must be >= 0");
  if (p_halfwidth < 0.0 || !std::isfinite(p_halfwidth)) {
    throw InvalidParameter("kijowski: p_halfwidth must be >= 0");
  }
  if (!(rel_tol > 0.0) || rel_tol >= 1.0) throw InvalidParameter("kijowski: rel_tol out of range");
  if (!(panel_scale > 0.0) || !std::isfinite(panel_scale)) {
    throw InvalidParameter("kijowski: panel_scale must be positive");
  }
}

double KijowskiQuery::width_at_t() const noexcept {
  return width == KijowskiWidth::literal ? prep.sigma_t(t) : prep.sigma0;
}

KijowskiTerms kijowski_terms(const KijowskiQuery& query) {
  query.validate();
  const auto& pr = query.prep;
  const double w = query.width_at_t();
  const double half = query.p_halfwidth > 0.0 ? query.p_halfwidth : 10.0 * pr.hbar / w;
  const double p_lo = pr.mean_p - half, p_hi = pr.mean_p + half;
  // Size of the integrand without oscillation, for the absolute tolerance.
  const double scale =
      std::sqrt(std::max(std::abs(pr.mean_p), pr.hbar / w)) * std::sqrt(std::numbers::pi) * pr.hbar / w;

  double e1 = 0.0, e2 = 0.0;
  const cplx plus = half_line(query, w, 1.0, p_lo, p_hi, scale, e1);
  const cplx minus = half_line(query, w, -1.0, p_lo, p_hi, scale, e2);
  const double pref =
      w / (pr.mass * std::numbers::pi * pr.hbar * pr.hbar * std::sqrt(2.0 * std::numbers::pi));
  return {pref * std::norm(plus), pref * std::norm(minus)};
}

double kijowski_pdf(const KijowskiQuery& query) { return kijowski_terms(query).total(); }

SampledDistribution tabulate_kijowski(const KijowskiQuery& base, double q_detect,
                                      const Grid1D& time_grid) {
  KijowskiQuery q = base;
  q.prep.mean_q -= q_detect;
  q.t = 0.0;
  q.validate();
  std::vector<double> v(time_grid.size());
  parallel_for(v.size(), [&](std::size_t i) {
    KijowskiQuery qi = q;
    qi.t = time_grid[i];
    v[i] = kijowski_pdf(qi);
  });
  return normalize(SampledDistribution(time_grid, std::move(v), "kijowski"));
}

}  // namespace tetlab
